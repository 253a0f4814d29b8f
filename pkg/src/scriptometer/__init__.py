"""Corpus-based scriptometric clustering of medieval text witnesses.

The toolkit clusters text witnesses by the relative frequencies of their
normalized graphic forms: allograph normalization, document-term counting,
most-frequent-word selection, Manhattan distances, Ward agglomeration, and
values-test profiles characterizing each resulting group. A stability sweep
across MFW levels and deterministic Newick/SVG exports round out the
pipeline.

Quick start::

    from scriptometer import synthetic, build_dtm, select_mfw, relative_freq
    from scriptometer import distance_matrix, ward_cluster, cut_tree

    witnesses, planted = synthetic.synthetic_witnesses()
    rel = relative_freq(select_mfw(build_dtm(witnesses), 100))
    dend = ward_cluster(distance_matrix(rel, "manhattan"))
    groups = cut_tree(dend, 2)
"""

__version__ = "0.1.0"

from . import synthetic
from ._util import THREADS_ENV_VAR
from .corpus_ingest import (
    DEFAULT_CHAR_MAP,
    DEFAULT_CONFIG,
    NormalizationConfig,
    Stoplist,
    Witness,
    WitnessMeta,
    filter_short,
    load_corpus,
    load_normalization_config,
    normalize_form,
    tokenize,
)
from .matrix import (
    CorpusStats,
    DocTermMatrix,
    RelFreqMatrix,
    build_dtm,
    corpus_stats,
    relative_freq,
    select_mfw,
)
from .metrics import DistanceMatrix, distance_matrix, square_distances
from .hierclust import (
    ClusterAssignment,
    Dendrogram,
    InversionError,
    Merge,
    agglomerative_coefficient,
    cut_tree,
    to_newick,
    ward_cluster,
)
from .profiles import GroupProfile, ProfileRow, group_profile, values_test
from .stability import (
    DEFAULT_SWEEP_LEVELS,
    StabilityReport,
    adjusted_rand,
    mfw_sweep,
)
from .render import render_svg
from .cli import PipelineResult, RunConfig, run_pipeline

__all__ = [
    "THREADS_ENV_VAR",
    "DEFAULT_CHAR_MAP",
    "DEFAULT_CONFIG",
    "DEFAULT_SWEEP_LEVELS",
    "ClusterAssignment",
    "CorpusStats",
    "Dendrogram",
    "DistanceMatrix",
    "DocTermMatrix",
    "GroupProfile",
    "InversionError",
    "Merge",
    "NormalizationConfig",
    "PipelineResult",
    "ProfileRow",
    "RelFreqMatrix",
    "RunConfig",
    "StabilityReport",
    "Stoplist",
    "Witness",
    "WitnessMeta",
    "adjusted_rand",
    "agglomerative_coefficient",
    "build_dtm",
    "corpus_stats",
    "cut_tree",
    "distance_matrix",
    "filter_short",
    "group_profile",
    "load_corpus",
    "load_normalization_config",
    "mfw_sweep",
    "normalize_form",
    "relative_freq",
    "render_svg",
    "run_pipeline",
    "select_mfw",
    "square_distances",
    "synthetic",
    "to_newick",
    "tokenize",
    "values_test",
    "ward_cluster",
]
