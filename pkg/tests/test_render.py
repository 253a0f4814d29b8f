from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from scriptometer.hierclust import (
    ClusterAssignment,
    Dendrogram,
    Merge,
    cut_tree,
    ward_cluster,
)
from scriptometer.metrics import DistanceMatrix
from scriptometer.render import render_svg


def dm_from(array, ids=None) -> DistanceMatrix:
    array = np.asarray(array, dtype=float)
    ids = ids or tuple(f"w{i}" for i in range(array.shape[0]))
    return DistanceMatrix(ids=tuple(ids), d=array, metric_tag="manhattan")


def two_leaf():
    dend = ward_cluster(dm_from([[0, 4], [4, 0]], ids=("A", "B")))
    return dend, cut_tree(dend, 2)


class TestRenderSvg:
    def test_two_leaves_one_join(self):
        dend, assign = two_leaf()
        svg = render_svg(dend, assign)
        assert svg.count('class="leaf-label"') == 2
        assert svg.count('class="join"') == 1
        assert ">A</text>" in svg and ">B</text>" in svg

    def test_well_formed_svg_11(self):
        dend, assign = two_leaf()
        root = ET.fromstring(render_svg(dend, assign))
        assert root.tag == "{http://www.w3.org/2000/svg}svg"
        assert root.get("version") == "1.1"

    def test_join_bars_proportional_to_heights(self):
        dend = ward_cluster(
            dm_from([[0, 1, 10], [1, 0, 9], [10, 9, 0]], ids=("a", "b", "c"))
        )
        svg = render_svg(dend, cut_tree(dend, 2))
        root = ET.fromstring(svg)
        ns = {"svg": "http://www.w3.org/2000/svg"}
        joins = [
            el
            for el in root.findall("svg:line", ns)
            if el.get("class") == "join"
        ]
        assert len(joins) == 2
        ys = sorted(float(el.get("y1")) for el in joins)
        baseline_to_first = max(ys)  # join at height 1 sits near the baseline
        # y distance from baseline scales with merge height: 1 vs 37/3
        stems = [
            el for el in root.findall("svg:line", ns) if el.get("class") == "stem"
        ]
        baseline = max(float(el.get("y1")) for el in stems)
        d_small = baseline - max(ys)
        d_large = baseline - min(ys)
        assert d_large / d_small == pytest.approx((37 / 3) / 1.0, rel=1e-3)

    def test_deterministic_output(self):
        dend, assign = two_leaf()
        assert render_svg(dend, assign) == render_svg(dend, assign)

    def test_id_mismatch_rejected(self):
        dend, _ = two_leaf()
        wrong = ClusterAssignment(ids=("X", "Y"), labels=(0, 1), k=2)
        with pytest.raises(ValueError, match="do not match"):
            render_svg(dend, wrong)

    def test_inversion_warning_banner(self):
        dend = Dendrogram(
            leaf_ids=("a", "b", "c"),
            merges=(
                Merge(left=0, right=1, height=5.0, size=2),
                Merge(left=3, right=2, height=2.0, size=3),
            ),
        )
        assign = ClusterAssignment(ids=("a", "b", "c"), labels=(0, 0, 1), k=2)
        svg = render_svg(dend, assign)
        assert "warning: height inversions" in svg
        ET.fromstring(svg)

    def test_cluster_colors_distinct(self):
        dend = ward_cluster(
            dm_from([[0, 1, 10], [1, 0, 9], [10, 9, 0]], ids=("a", "b", "c"))
        )
        svg = render_svg(dend, cut_tree(dend, 2))
        assert "#4e79a7" in svg and "#e15759" in svg
