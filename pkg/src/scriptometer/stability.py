"""Clustering robustness across MFW levels.

Reruns the selection -> frequencies -> distances -> Ward pipeline at several
most-frequent-word cutoffs and quantifies agreement between the resulting
k-cuts with the adjusted Rand index.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path

import numpy as np

from ._util import atomic_write_text, full_precision, map_ordered
from .corpus_ingest import Witness
from .hierclust import ClusterAssignment, agglomerative_coefficient, cut_tree, ward_cluster
from .matrix import build_dtm, relative_freq, select_mfw
from .metrics import distance_matrix

DEFAULT_SWEEP_LEVELS = (600, 1000, 1500, 2000, 2500, 3000)


@dataclass(frozen=True)
class StabilityReport:
    mfw_levels: tuple[int, ...]
    ac_by_level: tuple[float, ...]
    ari_matrix: np.ndarray
    k: int


def adjusted_rand(a: ClusterAssignment, b: ClusterAssignment) -> float:
    """Chance-corrected partition agreement; 1 means identical up to relabeling.

    Computed exactly from the contingency table (single rounding at the end).
    Degenerate pairs where expected and maximum index coincide are defined as
    1 (this covers two single-cluster partitions and two all-singleton ones).
    """
    if tuple(a.ids) != tuple(b.ids):
        raise ValueError("partitions are over different ids")
    n = len(a.ids)
    contingency = Counter(zip(a.labels, b.labels))
    sum_cells = sum(comb(c, 2) for c in contingency.values())
    sum_a = sum(comb(c, 2) for c in Counter(a.labels).values())
    sum_b = sum(comb(c, 2) for c in Counter(b.labels).values())
    total = comb(n, 2)
    if total == 0:
        return 1.0
    expected = Fraction(sum_a * sum_b, total)
    maximum = Fraction(sum_a + sum_b, 2)
    if maximum == expected:
        return 1.0
    return float((sum_cells - expected) / (maximum - expected))


def mfw_sweep(
    witnesses: list[Witness],
    levels: list[int] | tuple[int, ...],
    k: int,
    metric: str = "manhattan",
) -> StabilityReport:
    """Run the clustering pipeline at each MFW level and compare the k-cuts.

    Levels are independent and may run in parallel; the report is assembled
    in level order either way.
    """
    levels = tuple(levels)
    if not levels:
        raise ValueError("levels must be nonempty")
    if any(level < 1 for level in levels):
        raise ValueError("every level must be >= 1")
    dtm = build_dtm(witnesses)

    def run(level: int) -> tuple[float, ClusterAssignment]:
        rel = relative_freq(select_mfw(dtm, level))
        dend = ward_cluster(distance_matrix(rel, metric))
        return agglomerative_coefficient(dend), cut_tree(dend, k)

    results = map_ordered(run, levels)
    acs = tuple(ac for ac, _ in results)
    cuts = [cut for _, cut in results]
    size = len(levels)
    ari = np.ones((size, size), dtype=float)
    for i in range(size):
        for j in range(i + 1, size):
            value = adjusted_rand(cuts[i], cuts[j])
            ari[i, j] = value
            ari[j, i] = value
    return StabilityReport(mfw_levels=levels, ac_by_level=acs, ari_matrix=ari, k=k)


def write_stability_csv(report: StabilityReport, path: str | Path) -> None:
    lines = ["level,ac"]
    for level, ac in zip(report.mfw_levels, report.ac_by_level):
        lines.append(f"{level},{full_precision(ac)}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_ari_csv(report: StabilityReport, path: str | Path) -> None:
    lines = ["level," + ",".join(str(level) for level in report.mfw_levels)]
    for i, level in enumerate(report.mfw_levels):
        lines.append(
            f"{level}," + ",".join(full_precision(v) for v in report.ari_matrix[i])
        )
    atomic_write_text(path, "\n".join(lines) + "\n")
