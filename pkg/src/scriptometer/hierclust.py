"""Agglomerative clustering with the Ward criterion via the Lance-Williams update.

The update is applied to the supplied dissimilarities as-is (Manhattan
included), with no internal squaring. Dendrograms from other sources may
carry height inversions; these are detected and surfaced (a flag here, an
error in the Newick export), never silently reordered. The Ward update
itself never goes below the current minimum, so trees built here are
monotone.

Node references follow the usual convention: 0..n-1 are leaves in input
order, n+k is the cluster created by merge k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._util import atomic_write_text, full_precision
from .metrics import DistanceMatrix

_NEWICK_RESERVED = ",;:()"


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    size: int


@dataclass(frozen=True)
class Dendrogram:
    """Full merge history of an agglomerative clustering."""

    leaf_ids: tuple[str, ...]
    merges: tuple[Merge, ...]

    def __post_init__(self) -> None:
        n = len(self.leaf_ids)
        if len(self.merges) != n - 1:
            raise ValueError(f"expected {n - 1} merges for {n} leaves")
        for k, merge in enumerate(self.merges):
            expected = self._subtree_size(merge.left) + self._subtree_size(merge.right)
            if merge.size != expected:
                raise ValueError(f"merge {k} records size {merge.size}, expected {expected}")

    @property
    def n_leaves(self) -> int:
        return len(self.leaf_ids)

    def _subtree_size(self, ref: int) -> int:
        return 1 if ref < self.n_leaves else self.merges[ref - self.n_leaves].size

    def node_height(self, ref: int) -> float:
        return 0.0 if ref < self.n_leaves else self.merges[ref - self.n_leaves].height

    @property
    def inversions(self) -> tuple[int, ...]:
        """Indices of merges recorded below the preceding merge's height."""
        heights = [m.height for m in self.merges]
        return tuple(
            k for k in range(1, len(heights)) if heights[k] < heights[k - 1]
        )

    def leaves_under(self, ref: int) -> list[int]:
        """Leaf indices in left-to-right display order under a node."""
        order: list[int] = []
        stack = [ref]
        while stack:
            node = stack.pop()
            if node < self.n_leaves:
                order.append(node)
            else:
                merge = self.merges[node - self.n_leaves]
                stack.append(merge.right)
                stack.append(merge.left)
        return order


@dataclass(frozen=True)
class ClusterAssignment:
    """Flat cluster labels, 0..k-1, aligned with ids."""

    ids: tuple[str, ...]
    labels: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if len(self.ids) != len(self.labels):
            raise ValueError("ids and labels length mismatch")
        present = set(self.labels)
        if present != set(range(self.k)):
            raise ValueError(f"labels must cover 0..{self.k - 1} with no empty cluster")


def ward_cluster(d: DistanceMatrix) -> Dendrogram:
    """Agglomerate with Ward's criterion from a precomputed dissimilarity matrix.

    At every step the pair of active clusters at minimal current
    dissimilarity merges at that value; dissimilarities to each remaining
    cluster follow the Lance-Williams Ward update
    ((n_i+n_k) d_ik + (n_j+n_k) d_jk - n_k d_ij) / (n_i+n_j+n_k).
    Ties take the smallest (i, j) position pair in the active ordering, where
    a new cluster occupies the position of its left constituent.
    """
    n = len(d.ids)
    if n < 2:
        raise ValueError("need at least 2 leaves to cluster")
    curr = np.array(d.d, dtype=float, copy=True)
    if not np.isfinite(curr).all():
        raise ValueError("non-finite distances")

    refs = list(range(n))
    sizes = np.ones(n, dtype=np.int64)
    merges: list[Merge] = []
    for step in range(n - 1):
        m = curr.shape[0]
        # row-major argmin over the strict upper triangle picks the smallest
        # (i, j) pair on ties
        masked = np.where(np.triu(np.ones((m, m), dtype=bool), k=1), curr, np.inf)
        i, j = divmod(int(np.argmin(masked)), m)
        si = int(sizes[i])
        sj = int(sizes[j])
        height = float(curr[i, j])
        merges.append(Merge(left=refs[i], right=refs[j], height=height, size=si + sj))

        updated = ((si + sizes) * curr[i] + (sj + sizes) * curr[j] - sizes * height) / (
            si + sj + sizes
        )
        curr[i, :] = updated
        curr[:, i] = updated
        curr[i, i] = 0.0
        curr = np.delete(np.delete(curr, j, axis=0), j, axis=1)
        sizes[i] = si + sj
        sizes = np.delete(sizes, j)
        refs[i] = n + step
        del refs[j]
    return Dendrogram(leaf_ids=tuple(d.ids), merges=tuple(merges))


def agglomerative_coefficient(dend: Dendrogram) -> float:
    """Mean over leaves of 1 - (first merge height / final merge height)."""
    if not dend.merges:
        raise ValueError("need at least 2 leaves")
    final = dend.merges[-1].height
    if final == 0:
        raise ValueError("final merge height is zero (all points identical)")
    n = dend.n_leaves
    first: dict[int, float] = {}
    for merge in dend.merges:
        for ref in (merge.left, merge.right):
            if ref < n:
                first[ref] = merge.height
    return math.fsum(1.0 - first[leaf] / final for leaf in range(n)) / n


def cut_tree(dend: Dendrogram, k: int) -> ClusterAssignment:
    """Cut into k clusters by removing the last k-1 merges.

    Clusters are numbered by order of first leaf appearance in leaf_ids.
    """
    n = dend.n_leaves
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    for t, merge in enumerate(dend.merges[: n - k]):
        node = n + t
        parent[find(merge.left)] = node
        parent[find(merge.right)] = node

    numbering: dict[int, int] = {}
    labels = []
    for leaf in range(n):
        root = find(leaf)
        if root not in numbering:
            numbering[root] = len(numbering)
        labels.append(numbering[root])
    return ClusterAssignment(ids=dend.leaf_ids, labels=tuple(labels), k=k)


class InversionError(ValueError):
    """A merge sits below its parent, so a branch length would be negative."""

    def __init__(self, merge_index: int, branch_length: float):
        self.merge_index = merge_index
        self.branch_length = branch_length
        super().__init__(
            f"negative branch length {branch_length} at merge {merge_index} "
            "(height inversion)"
        )


def _format_length(x: float, decimals: int | None) -> str:
    if decimals is None:
        return full_precision(x)
    text = f"{x:.{decimals}f}".rstrip("0").rstrip(".")
    return text or "0"


def to_newick(dend: Dendrogram, decimals: int | None = None) -> str:
    """Ultrametric Newick string: leaves at depth 0, branch length = parent
    height minus child height.

    decimals=None emits full float precision (the round-trippable default);
    an explicit decimals rounds for display. Raises InversionError on a
    negative branch length.
    """
    n = dend.n_leaves
    if n < 2:
        raise ValueError("need at least 2 leaves for a Newick tree")
    for leaf_id in dend.leaf_ids:
        if any(c.isspace() or c in _NEWICK_RESERVED for c in leaf_id):
            raise ValueError(f"leaf id {leaf_id!r} is not Newick-safe")
    rendered: list[str] = list(dend.leaf_ids)
    for t, merge in enumerate(dend.merges):
        parts = []
        for ref in (merge.left, merge.right):
            length = merge.height - dend.node_height(ref)
            if length < 0:
                raise InversionError(t, length)
            parts.append(f"{rendered[ref]}:{_format_length(length, decimals)}")
        rendered.append(f"({parts[0]},{parts[1]})")
    return rendered[-1] + ";"


def write_newick(dend: Dendrogram, path: str | Path, decimals: int | None = None) -> None:
    atomic_write_text(path, to_newick(dend, decimals) + "\n")


def write_groups_csv(assign: ClusterAssignment, path: str | Path) -> None:
    lines = ["id,cluster"]
    lines.extend(f"{wid},{label}" for wid, label in zip(assign.ids, assign.labels))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_merges_csv(dend: Dendrogram, path: str | Path) -> None:
    lines = ["step,left,right,height,size"]
    for t, merge in enumerate(dend.merges):
        lines.append(
            f"{t},{merge.left},{merge.right},{full_precision(merge.height)},{merge.size}"
        )
    atomic_write_text(path, "\n".join(lines) + "\n")
