"""Shared plumbing: thread-pool sizing, order-stable mapping, atomic file writes."""

from __future__ import annotations

import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

THREADS_ENV_VAR = "SCRIPTOMETER_THREADS"


def thread_count() -> int:
    """Worker cap from SCRIPTOMETER_THREADS; unset means sequential."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(
            f"{THREADS_ENV_VAR} must be an integer, got {raw!r}"
        ) from None
    return max(1, value)


def map_ordered(fn, items):
    """Apply fn to every item, returning results in input order.

    Uses a thread pool when SCRIPTOMETER_THREADS allows more than one worker.
    Results do not depend on scheduling; fn must be pure.
    """
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write text via a same-directory temp file and rename, so readers never
    observe a partially written file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def full_precision(x: float) -> str:
    """Format a float with 17 significant digits (round-trips float64)."""
    return format(float(x), ".17g")
