"""End-to-end pipeline and command-line entry point.

Defaults mirror the reference configuration: Manhattan distance on relative
frequencies of the 2000 most frequent forms, Ward linkage, witnesses under
2000 tokens removed, two clusters. A bare invocation therefore reproduces
the canonical method choices; every artifact the pipeline writes is
byte-deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from ._util import atomic_write_text
from .corpus_ingest import (
    DEFAULT_CONFIG,
    Stoplist,
    filter_short,
    load_corpus,
    load_normalization_config,
)
from .hierclust import (
    Dendrogram,
    ClusterAssignment,
    agglomerative_coefficient,
    cut_tree,
    ward_cluster,
    write_groups_csv,
    write_merges_csv,
    write_newick,
)
from .matrix import (
    CorpusStats,
    build_dtm,
    corpus_stats,
    relative_freq,
    select_mfw,
    write_dtm_csv,
    write_relfreq_csv,
    write_stats_json,
)
from .metrics import distance_matrix, square_distances, write_distances_csv
from .profiles import GroupProfile, group_profile, write_profile_csv, write_profile_display_csv
from .render import render_svg
from .stability import StabilityReport, mfw_sweep, write_ari_csv, write_stability_csv

_METRIC_FLAGS = {
    "manhattan": "manhattan",
    "euclidean": "euclidean",
    "squared-euclidean": "squared_euclidean",
}
_MODE_FLAGS = {"lebart": "lebart", "footnote": "paper_footnote"}


@dataclass(frozen=True)
class RunConfig:
    """Everything one pipeline run depends on, defaults included."""

    input_dir: str
    metadata_path: str
    out_dir: str
    stoplist_path: str | None = None
    normalization_path: str | None = None
    mfw: int = 2000
    min_tokens: int = 2000
    metric: str = "manhattan"
    square_distances: bool = False
    k: int = 2
    profile_mode: str = "lebart"
    top: int = 25
    sweep_levels: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.mfw < 1 or self.k < 1 or self.top < 1:
            raise ValueError("mfw, k, and top must all be >= 1")
        if self.min_tokens < 0:
            raise ValueError("min_tokens must be >= 0")
        if self.metric not in _METRIC_FLAGS.values():
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.profile_mode not in _MODE_FLAGS.values():
            raise ValueError(f"unknown profile mode {self.profile_mode!r}")
        if self.sweep_levels is not None:
            object.__setattr__(self, "sweep_levels", tuple(self.sweep_levels))


@dataclass(frozen=True)
class PipelineResult:
    config: RunConfig
    dropped: tuple[str, ...]
    stats: CorpusStats
    dendrogram: Dendrogram
    assignment: ClusterAssignment
    agglomerative_coefficient: float
    profiles: tuple[GroupProfile, ...]
    profiles_skipped: str | None
    stability: StabilityReport | None
    outputs: tuple[str, ...]


class PipelineError(Exception):
    """A pipeline stage failed; the message names the stage and the cause."""


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(f"{name}: {exc}") from exc


def _warn(message: str) -> None:
    print(f"scriptometer: warning: {message}", file=sys.stderr)


def run_pipeline(config: RunConfig) -> PipelineResult:
    """Run corpus loading through profiles (and the optional MFW sweep),
    writing every output artifact under config.out_dir."""
    norm = (
        _stage("corpus_ingest", load_normalization_config, config.normalization_path)
        if config.normalization_path
        else DEFAULT_CONFIG
    )
    stoplist = (
        _stage("corpus_ingest", Stoplist.from_file, config.stoplist_path, norm)
        if config.stoplist_path
        else None
    )
    witnesses = _stage(
        "corpus_ingest", load_corpus, config.input_dir, config.metadata_path, norm, stoplist
    )
    kept, dropped = _stage("corpus_ingest", filter_short, witnesses, config.min_tokens)

    dtm_full = _stage("matrix", build_dtm, kept)
    stats = _stage("matrix", corpus_stats, dtm_full)
    dtm = _stage("matrix", select_mfw, dtm_full, config.mfw)
    rel = _stage("matrix", relative_freq, dtm)

    dm = _stage("metrics", distance_matrix, rel, config.metric)
    if config.square_distances:
        dm = _stage("metrics", square_distances, dm)

    dend = _stage("hierclust", ward_cluster, dm)
    ac = _stage("hierclust", agglomerative_coefficient, dend)
    assign = _stage("hierclust", cut_tree, dend, config.k)
    if dend.inversions:
        _warn(f"dendrogram has height inversions at merge(s) {list(dend.inversions)}")

    profs: list[GroupProfile] = []
    skipped: str | None = None
    if config.k < 2:
        skipped = "k=1 leaves no complement to compare against (cluster equals corpus)"
        _warn(f"profiles skipped: {skipped}")
    else:
        for cluster in range(config.k):
            profs.append(
                _stage(
                    "profiles",
                    group_profile,
                    rel,
                    assign,
                    cluster,
                    config.top,
                    config.profile_mode,
                )
            )

    report: StabilityReport | None = None
    if config.sweep_levels:
        report = _stage(
            "stability", mfw_sweep, kept, config.sweep_levels, config.k, config.metric
        )

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs: list[str] = []

    def emit(name, writer, *args):
        _stage("output", writer, *args, out_dir / name)
        outputs.append(name)

    emit("dtm.csv", write_dtm_csv, dtm)
    emit("relfreq.csv", write_relfreq_csv, rel)
    emit("stats.json", write_stats_json, stats)
    emit("distances.csv", write_distances_csv, dm)
    emit("dendrogram.nwk", write_newick, dend)
    emit("merges.csv", write_merges_csv, dend)
    emit("groups.csv", write_groups_csv, assign)
    for prof in profs:
        emit(f"profile_{prof.cluster_index}.csv", write_profile_csv, prof)
        emit(
            f"profile_{prof.cluster_index}_display.csv",
            lambda p, path: write_profile_display_csv(p, path, config.top),
            prof,
        )
    if report is not None:
        emit("stability.csv", write_stability_csv, report)
        emit("stability_ari.csv", write_ari_csv, report)

    svg = _stage("render", render_svg, dend, assign)
    _stage("output", atomic_write_text, out_dir / "dendrogram.svg", svg)
    outputs.append("dendrogram.svg")

    config_echo = asdict(config)
    if config_echo["sweep_levels"] is not None:
        config_echo["sweep_levels"] = list(config_echo["sweep_levels"])
    summary = {
        "config": config_echo,
        "n_witnesses": len(kept),
        "dropped_witnesses": list(dropped),
        "corpus_stats": asdict(stats),
        "agglomerative_coefficient": ac,
        "inversions": list(dend.inversions),
        "profiles": {"skipped": skipped}
        if skipped
        else {"written": [p.cluster_index for p in profs]},
        "outputs": outputs + ["summary.json"],
    }
    _stage(
        "output",
        atomic_write_text,
        out_dir / "summary.json",
        json.dumps(summary, indent=2) + "\n",
    )
    outputs.append("summary.json")

    return PipelineResult(
        config=config,
        dropped=tuple(dropped),
        stats=stats,
        dendrogram=dend,
        assignment=assign,
        agglomerative_coefficient=ac,
        profiles=tuple(profs),
        profiles_skipped=skipped,
        stability=report,
        outputs=tuple(outputs),
    )


def _parse_sweep(text: str) -> tuple[int, ...]:
    try:
        levels = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--sweep expects comma-separated integers, got {text!r}"
        ) from None
    if not levels:
        raise argparse.ArgumentTypeError("--sweep needs at least one level")
    return levels


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scriptometer",
        description=(
            "Cluster text witnesses by graphic-form frequencies and profile "
            "the resulting groups."
        ),
    )
    parser.add_argument("--input", required=True, help="directory of <id>.txt witness files")
    parser.add_argument("--metadata", required=True, help="witness metadata CSV")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--stoplist", help="stoplist file (one form per line)")
    parser.add_argument("--norm", help="normalization config file")
    parser.add_argument("--mfw", type=int, default=2000, help="most frequent words to keep")
    parser.add_argument(
        "--min-tokens", type=int, default=2000, help="drop witnesses shorter than this"
    )
    parser.add_argument(
        "--metric",
        choices=sorted(_METRIC_FLAGS),
        default="manhattan",
        help="distance between frequency vectors",
    )
    parser.add_argument(
        "--square-distances",
        action="store_true",
        help="square the distance matrix before Ward linkage",
    )
    parser.add_argument("--k", type=int, default=2, help="number of clusters to extract")
    parser.add_argument(
        "--profile-mode",
        choices=sorted(_MODE_FLAGS),
        default="lebart",
        help="values-test variant for group profiles",
    )
    parser.add_argument(
        "--top", type=int, default=25, help="most characteristic forms per profile side"
    )
    parser.add_argument(
        "--sweep",
        type=_parse_sweep,
        metavar="600,1000,...",
        help="also run an MFW stability sweep at these levels",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            input_dir=args.input,
            metadata_path=args.metadata,
            out_dir=args.out,
            stoplist_path=args.stoplist,
            normalization_path=args.norm,
            mfw=args.mfw,
            min_tokens=args.min_tokens,
            metric=_METRIC_FLAGS[args.metric],
            square_distances=args.square_distances,
            k=args.k,
            profile_mode=_MODE_FLAGS[args.profile_mode],
            top=args.top,
            sweep_levels=args.sweep,
        )
        run_pipeline(config)
    except (PipelineError, ValueError, OSError) as exc:
        print(f"scriptometer: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
