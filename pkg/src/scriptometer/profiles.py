"""Cluster profiling with the values test.

For each graphic form, the deviation of its in-cluster mean relative
frequency from the corpus-wide mean is standardized into a v value; forms
ranked by v make up a cluster's scriptometric profile. Two variants ship:
the standard hypergeometric-mean values test ("lebart", the default) and
the simpler within-cluster standardization ("paper_footnote").
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._util import atomic_write_text, full_precision, map_ordered
from .hierclust import ClusterAssignment
from .matrix import RelFreqMatrix

MODES = ("lebart", "paper_footnote")

DISPLAY_COLUMNS = (
    "v.test",
    "mean in cat.",
    "overall mean",
    "sd in cat.",
    "overall sd",
    "p.value",
)


@dataclass(frozen=True)
class ProfileRow:
    """Values-test statistics of one form for one cluster.

    Standard deviations follow the population (1/N) convention; p_value is
    the two-sided standard normal tail probability of |v_test|.
    """

    form: str
    v_test: float
    mean_in_cat: float
    overall_mean: float
    sd_in_cat: float
    overall_sd: float
    p_value: float


@dataclass(frozen=True)
class GroupProfile:
    """All forms of a matrix ranked by descending v_test for one cluster.

    rows always cover the full form inventory; truncation to the most
    characteristic forms happens only at display time.
    """

    cluster_index: int
    n_members: int
    rows: tuple[ProfileRow, ...]

    def display_rows(self, top: int) -> list[ProfileRow]:
        """The `top` most positive and `top` most negative rows, in rank order."""
        if top < 1:
            raise ValueError("top must be >= 1")
        head = self.rows[:top]
        tail = self.rows[-top:]
        picked = list(head)
        picked.extend(r for r in tail if r not in head)
        return picked


def _validate_cluster(mask: np.ndarray, n_total: int) -> int:
    n_k = int(mask.sum())
    if n_k == 0:
        raise ValueError("cluster has no members")
    if n_k == n_total:
        raise ValueError("cluster equals the whole corpus (no complement to compare)")
    return n_k


def _row(form: str, x: np.ndarray, mask: np.ndarray, n_k: int, mode: str) -> ProfileRow:
    n = x.size
    mean_in_cat = float(np.mean(x[mask]))
    overall_mean = float(np.mean(x))
    sd_in_cat = float(np.std(x[mask]))
    overall_sd = float(np.std(x))
    diff = mean_in_cat - overall_mean
    if mode == "lebart":
        if diff == 0.0:
            v = 0.0
        else:
            v = diff / math.sqrt(
                ((n - n_k) / (n - 1)) * (overall_sd * overall_sd) / n_k
            )
    else:
        if sd_in_cat == 0.0:
            raise ValueError(
                f"paper_footnote mode undefined for form {form!r}: "
                "zero within-cluster standard deviation"
            )
        v = diff / sd_in_cat
    p = math.erfc(abs(v) / math.sqrt(2.0))
    return ProfileRow(
        form=form,
        v_test=v,
        mean_in_cat=mean_in_cat,
        overall_mean=overall_mean,
        sd_in_cat=sd_in_cat,
        overall_sd=overall_sd,
        p_value=p,
    )


def _member_mask(
    m: RelFreqMatrix,
    assign: ClusterAssignment | None,
    cluster: int,
    members: list[str] | None,
) -> np.ndarray:
    n = len(m.witness_ids)
    if members is not None:
        index = {wid: i for i, wid in enumerate(m.witness_ids)}
        unknown = [wid for wid in members if wid not in index]
        if unknown:
            raise ValueError(f"member override ids not in matrix: {', '.join(unknown)}")
        if len(set(members)) != len(members):
            raise ValueError("member override contains duplicates")
        mask = np.zeros(n, dtype=bool)
        mask[[index[wid] for wid in members]] = True
        return mask
    if assign is None:
        raise ValueError("either an assignment or an explicit member list is required")
    if tuple(assign.ids) != tuple(m.witness_ids):
        raise ValueError("assignment ids do not match matrix ids")
    if not 0 <= cluster < assign.k:
        raise ValueError(f"cluster must be in 0..{assign.k - 1}, got {cluster}")
    return np.array([label == cluster for label in assign.labels], dtype=bool)


def values_test(
    m: RelFreqMatrix,
    assign: ClusterAssignment,
    cluster: int,
    form: int,
    mode: str = "lebart",
) -> ProfileRow:
    """Values test of one form (by column index) for one cluster.

    lebart mode standardizes the in-cluster mean by its sampling variance
    under draws without replacement; paper_footnote mode divides the
    deviation by the within-cluster standard deviation (error when zero).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if not 0 <= form < len(m.forms):
        raise ValueError(f"form index out of range: {form}")
    mask = _member_mask(m, assign, cluster, None)
    n_k = _validate_cluster(mask, len(m.witness_ids))
    return _row(m.forms[form], m.values[:, form], mask, n_k, mode)


def group_profile(
    m: RelFreqMatrix,
    assign: ClusterAssignment | None,
    cluster: int,
    top: int = 25,
    mode: str = "lebart",
    members: list[str] | None = None,
) -> GroupProfile:
    """Rank every form of the matrix by its values test for one cluster.

    Ties in v_test break lexicographically by form. `members` overrides the
    assignment with an explicit witness-id list (useful for profiling a
    manually adjusted group).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if top < 1:
        raise ValueError("top must be >= 1")
    mask = _member_mask(m, assign, cluster, members)
    n_k = _validate_cluster(mask, len(m.witness_ids))
    rows = map_ordered(
        lambda f: _row(m.forms[f], m.values[:, f], mask, n_k, mode),
        range(len(m.forms)),
    )
    rows.sort(key=lambda r: (-r.v_test, r.form))
    return GroupProfile(cluster_index=cluster, n_members=n_k, rows=tuple(rows))


def write_profile_csv(profile: GroupProfile, path: str | Path) -> None:
    """Full-precision profile over every form, sorted by descending v_test."""
    lines = ["form,v_test,mean_in_cat,overall_mean,sd_in_cat,overall_sd,p_value"]
    for r in profile.rows:
        lines.append(
            ",".join(
                (
                    r.form,
                    full_precision(r.v_test),
                    full_precision(r.mean_in_cat),
                    full_precision(r.overall_mean),
                    full_precision(r.sd_in_cat),
                    full_precision(r.overall_sd),
                    full_precision(r.p_value),
                )
            )
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_profile_display_csv(profile: GroupProfile, path: str | Path, top: int = 25) -> None:
    """Display table: most characteristic rows only, rounded to 4 decimals."""
    lines = ["form," + ",".join(DISPLAY_COLUMNS)]
    for r in profile.display_rows(top):
        stats = (r.v_test, r.mean_in_cat, r.overall_mean, r.sd_in_cat, r.overall_sd, r.p_value)
        lines.append(r.form + "," + ",".join(f"{v:.4f}" for v in stats))
    atomic_write_text(path, "\n".join(lines) + "\n")
