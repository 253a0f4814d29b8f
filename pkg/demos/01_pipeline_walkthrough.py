"""Walk the full pipeline step by step on the bundled synthetic corpus.

Generates the two-dialect corpus on disk, then runs every stage by hand:
loading and normalization, document-term counting, corpus statistics, MFW
selection, relative frequencies, Manhattan distances, Ward clustering, the
agglomerative coefficient, a two-cluster cut, and the Newick/SVG exports.

Run from the repository root:

    python demos/01_pipeline_walkthrough.py
"""

from __future__ import annotations

from pathlib import Path

from scriptometer import (
    adjusted_rand,
    agglomerative_coefficient,
    build_dtm,
    corpus_stats,
    cut_tree,
    distance_matrix,
    load_corpus,
    relative_freq,
    render_svg,
    select_mfw,
    synthetic,
    to_newick,
    ward_cluster,
)

OUT = Path(__file__).parent / "demo_output"


def main() -> None:
    OUT.mkdir(exist_ok=True)

    print("=== 1. synthetic corpus on disk ===")
    texts_dir, metadata_path, planted = synthetic.write_corpus(OUT / "corpus")
    print(f"texts:    {texts_dir}")
    print(f"metadata: {metadata_path}")
    print(f"planted dialects: {dict(zip(planted.ids, planted.labels))}")

    print("\n=== 2. load, tokenize, normalize ===")
    witnesses = load_corpus(texts_dir, metadata_path)
    for w in witnesses[:3]:
        print(f"{w.id:>7}: {w.n_tokens} tokens, first five: {' '.join(w.tokens[:5])}")
    print(f"... and {len(witnesses) - 3} more witnesses")

    print("\n=== 3. document-term matrix and corpus statistics ===")
    dtm = build_dtm(witnesses)
    stats = corpus_stats(dtm)
    print(f"{stats.n_witnesses} witnesses, {stats.total_tokens} tokens, "
          f"{stats.n_forms} forms, {stats.n_hapaxes} hapaxes")
    print(f"witness sizes: min {stats.witness_tokens_min}, "
          f"median {stats.witness_tokens_median:.0f}, max {stats.witness_tokens_max} "
          f"(geometric mean {stats.witness_tokens_geometric_mean:.1f})")

    print("\n=== 4. MFW selection and relative frequencies ===")
    selected = select_mfw(dtm, 100)
    print(f"kept the {len(selected.forms)} most frequent forms; "
          f"top ten: {', '.join(selected.forms[:10])}")
    rel = relative_freq(selected)

    print("\n=== 5. Manhattan distances and Ward clustering ===")
    dm = distance_matrix(rel, "manhattan")
    print(f"distance matrix {dm.d.shape}, max pair distance {dm.d.max():.4f}")
    dend = ward_cluster(dm)
    print(f"agglomerative coefficient: {agglomerative_coefficient(dend):.4f}")
    for t, merge in enumerate(dend.merges[-3:], start=len(dend.merges) - 3):
        print(f"merge {t}: nodes {merge.left}+{merge.right} "
              f"at height {merge.height:.4f} (size {merge.size})")

    print("\n=== 6. two-cluster cut vs the planted dialects ===")
    assign = cut_tree(dend, 2)
    for wid, label in zip(assign.ids, assign.labels):
        print(f"  {wid}: cluster {label}")
    print(f"adjusted Rand vs planted partition: {adjusted_rand(assign, planted):.1f}")

    print("\n=== 7. exports ===")
    newick = to_newick(dend, decimals=4)
    (OUT / "dendrogram.nwk").write_text(newick + "\n", encoding="utf-8")
    print(f"newick: {newick[:70]}...")
    (OUT / "dendrogram.svg").write_text(render_svg(dend, assign), encoding="utf-8")
    print(f"wrote {OUT / 'dendrogram.nwk'} and {OUT / 'dendrogram.svg'}")


if __name__ == "__main__":
    main()
