"""Deterministic standalone SVG rendering of dendrograms.

Rectangular layout: leaves along the x axis with vertically rotated id
labels, merge heights on the y axis, leaf stems and pure subtrees colored by
cluster. The output is a pure function of its inputs so repeated runs are
byte-identical.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .hierclust import ClusterAssignment, Dendrogram

PALETTE = (
    "#4e79a7",
    "#e15759",
    "#59a14f",
    "#f28e2b",
    "#b07aa1",
    "#76b7b2",
    "#edc948",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
)
NEUTRAL = "#555555"

_LEAF_SPACING = 26.0
_PLOT_HEIGHT = 400.0
_MARGIN_LEFT = 64.0
_MARGIN_RIGHT = 18.0
_MARGIN_TOP = 26.0
_BANNER_HEIGHT = 22.0
_LABEL_AREA = 120.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_svg(dend: Dendrogram, assign: ClusterAssignment) -> str:
    """Render the tree with cluster-colored leaves as an SVG 1.1 document.

    The assignment must cover exactly the dendrogram's leaf ids. Height
    inversions do not fail the rendering; they produce a warning banner.
    """
    if tuple(assign.ids) != tuple(dend.leaf_ids):
        raise ValueError("assignment ids do not match dendrogram leaves")
    n = dend.n_leaves
    inversions = dend.inversions
    banner = _BANNER_HEIGHT if inversions else 0.0

    label = dict(zip(range(n), assign.labels))
    color = {leaf: PALETTE[label[leaf] % len(PALETTE)] for leaf in range(n)}

    leaf_order = dend.leaves_under(n + len(dend.merges) - 1)
    slot = {leaf: idx for idx, leaf in enumerate(leaf_order)}

    max_height = max(m.height for m in dend.merges)
    scale = _PLOT_HEIGHT / max_height if max_height > 0 else 0.0
    baseline = _MARGIN_TOP + banner + _PLOT_HEIGHT

    def x_of_leaf(leaf: int) -> float:
        return _MARGIN_LEFT + (slot[leaf] + 0.5) * _LEAF_SPACING

    def y_of(height: float) -> float:
        return baseline - height * scale

    # node x centers and subtree cluster (None when mixed), bottom-up
    x_center: dict[int, float] = {leaf: x_of_leaf(leaf) for leaf in range(n)}
    node_cluster: dict[int, int | None] = dict(label)
    for t, merge in enumerate(dend.merges):
        x_center[n + t] = (x_center[merge.left] + x_center[merge.right]) / 2.0
        left_c = node_cluster[merge.left]
        right_c = node_cluster[merge.right]
        node_cluster[n + t] = left_c if left_c == right_c else None

    def stroke_of(ref: int) -> str:
        cluster = node_cluster[ref]
        return NEUTRAL if cluster is None else PALETTE[cluster % len(PALETTE)]

    width = _MARGIN_LEFT + n * _LEAF_SPACING + _MARGIN_RIGHT
    height = baseline + _LABEL_AREA
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>',
    ]
    if inversions:
        shown = ", ".join(str(i) for i in inversions[:8])
        suffix = ", ..." if len(inversions) > 8 else ""
        parts.append(
            f'<text class="warning" x="{_fmt(_MARGIN_LEFT)}" y="{_fmt(_MARGIN_TOP - 8.0)}" '
            f'font-family="sans-serif" font-size="12" fill="#b00020">'
            f"warning: height inversions at merge(s) {shown}{suffix}</text>"
        )

    # y axis with 5 evenly spaced height ticks
    axis_x = _MARGIN_LEFT - 10.0
    parts.append(
        f'<line class="axis" x1="{_fmt(axis_x)}" y1="{_fmt(y_of(max_height))}" '
        f'x2="{_fmt(axis_x)}" y2="{_fmt(baseline)}" stroke="#888888" stroke-width="1"/>'
    )
    for tick in range(5):
        h = max_height * tick / 4.0
        y = y_of(h)
        parts.append(
            f'<line class="tick" x1="{_fmt(axis_x - 4.0)}" y1="{_fmt(y)}" '
            f'x2="{_fmt(axis_x)}" y2="{_fmt(y)}" stroke="#888888" stroke-width="1"/>'
        )
        parts.append(
            f'<text class="tick-label" x="{_fmt(axis_x - 7.0)}" y="{_fmt(y + 3.5)}" '
            f'font-family="sans-serif" font-size="10" fill="#444444" '
            f'text-anchor="end">{h:.4g}</text>'
        )

    # stems: every node rises from its own height to its parent merge height
    for t, merge in enumerate(dend.merges):
        for ref in (merge.left, merge.right):
            x = x_center[ref]
            parts.append(
                f'<line class="stem" x1="{_fmt(x)}" y1="{_fmt(y_of(dend.node_height(ref)))}" '
                f'x2="{_fmt(x)}" y2="{_fmt(y_of(merge.height))}" '
                f'stroke="{stroke_of(ref)}" stroke-width="1.5"/>'
            )
        parts.append(
            f'<line class="join" x1="{_fmt(x_center[merge.left])}" y1="{_fmt(y_of(merge.height))}" '
            f'x2="{_fmt(x_center[merge.right])}" y2="{_fmt(y_of(merge.height))}" '
            f'stroke="{stroke_of(n + t)}" stroke-width="1.5"/>'
        )

    for leaf in leaf_order:
        x = x_of_leaf(leaf)
        y = baseline + 6.0
        parts.append(
            f'<text class="leaf-label" x="{_fmt(x)}" y="{_fmt(y)}" '
            f'font-family="sans-serif" font-size="10" fill="{color[leaf]}" '
            f'text-anchor="end" transform="rotate(-90 {_fmt(x)} {_fmt(y)})">'
            f"{escape(dend.leaf_ids[leaf])}</text>"
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
