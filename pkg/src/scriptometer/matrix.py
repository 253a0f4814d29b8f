"""Document-term counts, relative frequencies, MFW selection, corpus statistics."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from ._util import atomic_write_text, full_precision
from .corpus_ingest import Witness


@dataclass(frozen=True)
class DocTermMatrix:
    """Witnesses x forms count matrix.

    Forms are ordered by descending corpus frequency, ascending lexicographic
    on ties, so MFW selection is a prefix. witness_totals are full token
    counts and stay fixed under selection (they remain the relative-frequency
    denominators).
    """

    witness_ids: tuple[str, ...]
    forms: tuple[str, ...]
    counts: np.ndarray
    witness_totals: np.ndarray

    def __post_init__(self) -> None:
        n, f = self.counts.shape
        if n != len(self.witness_ids) or f != len(self.forms):
            raise ValueError("counts shape does not match ids/forms")
        if self.witness_totals.shape != (n,):
            raise ValueError("witness_totals length does not match ids")
        if (self.counts < 0).any():
            raise ValueError("counts must be non-negative")
        if (self.counts.sum(axis=1) > self.witness_totals).any():
            raise ValueError("row sums exceed witness totals")

    @property
    def form_frequencies(self) -> np.ndarray:
        """Corpus-wide frequency of each form (sum over witnesses)."""
        return self.counts.sum(axis=0)


@dataclass(frozen=True)
class RelFreqMatrix:
    """Relative frequencies: counts divided by full witness token totals."""

    witness_ids: tuple[str, ...]
    forms: tuple[str, ...]
    values: np.ndarray


@dataclass(frozen=True)
class CorpusStats:
    n_witnesses: int
    total_tokens: int
    n_forms: int
    n_hapaxes: int
    form_freq_geometric_mean: float
    form_freq_median: float
    form_freq_q3: float
    witness_tokens_geometric_mean: float
    witness_tokens_median: float
    witness_tokens_min: int
    witness_tokens_max: int


def build_dtm(witnesses: list[Witness]) -> DocTermMatrix:
    """Count every form in every witness; forms are the union of vocabularies."""
    if not witnesses:
        raise ValueError("empty witness list")
    ids = [w.id for w in witnesses]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate witness ids")
    counters = [Counter(w.tokens) for w in witnesses]
    corpus: Counter[str] = Counter()
    for counter in counters:
        corpus.update(counter)
    if not corpus:
        raise ValueError("no tokens in any witness")
    forms = sorted(corpus, key=lambda f: (-corpus[f], f))
    col = {form: i for i, form in enumerate(forms)}
    counts = np.zeros((len(witnesses), len(forms)), dtype=np.int64)
    for row, counter in enumerate(counters):
        for form, k in counter.items():
            counts[row, col[form]] = k
    totals = np.array([w.n_tokens for w in witnesses], dtype=np.int64)
    return DocTermMatrix(
        witness_ids=tuple(w.id for w in witnesses),
        forms=tuple(forms),
        counts=counts,
        witness_totals=totals,
    )


def _geometric_mean(values: np.ndarray) -> float:
    values = np.asarray(values, dtype=float)
    if values.size == 0 or values.min() <= 0.0:
        return 0.0
    return float(math.exp(np.mean(np.log(values))))


def corpus_stats(dtm: DocTermMatrix) -> CorpusStats:
    """Summary statistics over form frequencies and witness sizes.

    Hapaxes are forms with corpus-wide frequency exactly 1 (included in the
    geometric mean). Medians and quartiles use linear interpolation.
    """
    freqs = dtm.form_frequencies
    totals = dtm.witness_totals
    return CorpusStats(
        n_witnesses=len(dtm.witness_ids),
        total_tokens=int(totals.sum()),
        n_forms=len(dtm.forms),
        n_hapaxes=int((freqs == 1).sum()),
        form_freq_geometric_mean=_geometric_mean(freqs),
        form_freq_median=float(np.quantile(freqs, 0.5)),
        form_freq_q3=float(np.quantile(freqs, 0.75)),
        witness_tokens_geometric_mean=_geometric_mean(totals),
        witness_tokens_median=float(np.quantile(totals, 0.5)),
        witness_tokens_min=int(totals.min()),
        witness_tokens_max=int(totals.max()),
    )


def select_mfw(dtm: DocTermMatrix, n: int) -> DocTermMatrix:
    """Keep the n most frequent forms (ties lexicographic); totals unchanged."""
    if n < 1:
        raise ValueError("n must be >= 1")
    keep = min(n, len(dtm.forms))
    return DocTermMatrix(
        witness_ids=dtm.witness_ids,
        forms=dtm.forms[:keep],
        counts=dtm.counts[:, :keep].copy(),
        witness_totals=dtm.witness_totals,
    )


def relative_freq(dtm: DocTermMatrix) -> RelFreqMatrix:
    """Divide counts by full witness totals; errors on a zero-token witness."""
    zero = [dtm.witness_ids[i] for i in np.nonzero(dtm.witness_totals == 0)[0]]
    if zero:
        raise ValueError(f"zero token total for witness(es): {', '.join(zero)}")
    values = dtm.counts / dtm.witness_totals[:, None]
    return RelFreqMatrix(witness_ids=dtm.witness_ids, forms=dtm.forms, values=values)


def write_dtm_csv(dtm: DocTermMatrix, path: str | Path) -> None:
    lines = ["id," + ",".join(dtm.forms)]
    for i, wid in enumerate(dtm.witness_ids):
        lines.append(wid + "," + ",".join(str(int(c)) for c in dtm.counts[i]))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_relfreq_csv(m: RelFreqMatrix, path: str | Path) -> None:
    lines = ["id," + ",".join(m.forms)]
    for i, wid in enumerate(m.witness_ids):
        lines.append(wid + "," + ",".join(full_precision(v) for v in m.values[i]))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_stats_json(stats: CorpusStats, path: str | Path) -> None:
    atomic_write_text(path, json.dumps(asdict(stats), indent=2) + "\n")
