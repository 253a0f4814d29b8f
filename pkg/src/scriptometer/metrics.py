"""Pairwise dissimilarity matrices between witness frequency vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._util import atomic_write_text, full_precision, map_ordered
from .matrix import RelFreqMatrix

METRICS = ("manhattan", "euclidean", "squared_euclidean")


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise dissimilarities; diagonal is exactly zero."""

    ids: tuple[str, ...]
    d: np.ndarray
    metric_tag: str

    def __post_init__(self) -> None:
        d = self.d
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] != len(self.ids):
            raise ValueError("distance matrix shape does not match ids")
        if (np.diag(d) != 0.0).any():
            raise ValueError("distance matrix diagonal must be zero")
        if not np.array_equal(d, d.T):
            raise ValueError("distance matrix must be symmetric")
        if (d < 0).any():
            raise ValueError("distances must be non-negative")


def _pair_distance(x: np.ndarray, y: np.ndarray, metric: str) -> float:
    # fsum in fixed column order keeps results identical across thread counts
    deltas = np.abs(x - y)
    if metric == "manhattan":
        return math.fsum(deltas)
    total = math.fsum(deltas * deltas)
    return math.sqrt(total) if metric == "euclidean" else total


def distance_matrix(m: RelFreqMatrix, metric: str = "manhattan") -> DistanceMatrix:
    """Compute all pairwise distances between witness rows.

    Each unordered pair is computed once and mirrored, so symmetry and the
    zero diagonal are exact. Rows are parallelizable; output is deterministic.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    values = np.asarray(m.values, dtype=float)
    if values.ndim != 2:
        raise ValueError("frequency matrix must be two-dimensional")
    n = values.shape[0]
    if n < 2:
        raise ValueError("need at least 2 witnesses to compute distances")

    def row(i: int) -> list[float]:
        return [_pair_distance(values[i], values[j], metric) for j in range(i + 1, n)]

    d = np.zeros((n, n), dtype=float)
    for i, tail in enumerate(map_ordered(row, range(n - 1))):
        for offset, dist in enumerate(tail):
            j = i + 1 + offset
            d[i, j] = dist
            d[j, i] = dist
    return DistanceMatrix(ids=tuple(m.witness_ids), d=d, metric_tag=metric)


def square_distances(dm: DistanceMatrix) -> DistanceMatrix:
    """Square every entry (the ward.D2-style convention before linkage)."""
    tag = "squared_euclidean" if dm.metric_tag == "euclidean" else f"squared_{dm.metric_tag}"
    return DistanceMatrix(ids=dm.ids, d=dm.d ** 2, metric_tag=tag)


def write_distances_csv(dm: DistanceMatrix, path: str | Path) -> None:
    lines = ["id," + ",".join(dm.ids)]
    for i, wid in enumerate(dm.ids):
        lines.append(wid + "," + ",".join(full_precision(v) for v in dm.d[i]))
    atomic_write_text(path, "\n".join(lines) + "\n")
