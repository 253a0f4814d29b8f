"""Deterministic synthetic two-dialect corpus for demos and end-to-end checks.

Two invented function-word inventories are planted in two witness groups;
a shared inventory supplies roughly a fifth of every witness's tokens as
vocabulary noise. The true partition is known by construction and the whole
corpus is built without any randomness, so repeated generation is
byte-identical.
"""

from __future__ import annotations

from pathlib import Path

from .corpus_ingest import METADATA_COLUMNS, Witness, WitnessMeta
from .hierclust import ClusterAssignment

_CONSONANTS = "bcdfglmnprst"
_VOWELS = "aeiou"
_SYLLABLES = tuple(c + v for c in _CONSONANTS for v in _VOWELS)


def _word(prefix: str, index: int) -> str:
    syllables = []
    index += 1
    while index:
        index, rest = divmod(index, len(_SYLLABLES))
        syllables.append(_SYLLABLES[rest])
    return prefix + "".join(syllables)


def synthetic_witnesses(
    n_per_dialect: int = 6,
    dialect_forms: int = 120,
    shared_forms: int = 60,
) -> tuple[list[Witness], ClusterAssignment]:
    """Build the witnesses and the planted dialect partition.

    Witness w of a dialect draws its dialect words with roughly harmonic
    counts scaled by a per-witness size factor, plus the shared words with
    witness-independent counts (about 20% of a witness's tokens).
    """
    if n_per_dialect < 1:
        raise ValueError("need at least one witness per dialect")
    shared = [_word("co", j) for j in range(shared_forms)]
    shared_counts = [max(1, 103 // (j + 1)) for j in range(shared_forms)]
    witnesses: list[Witness] = []
    labels: list[int] = []
    for dialect, prefix in enumerate(("nord", "sud")):
        inventory = [_word(prefix, i) for i in range(dialect_forms)]
        for w in range(n_per_dialect):
            scale = 400 + 40 * w
            tokens: list[str] = []
            for i, form in enumerate(inventory):
                count = scale // (i + 1) + (i + 3 * w) % 3
                tokens.extend([form] * count)
            for form, count in zip(shared, shared_counts):
                tokens.extend([form] * count)
            meta = WitnessMeta(
                id=f"{prefix}{w + 1:02d}",
                source="synthetic",
                place_wit=f"{prefix}land",
                date_wit=f"{1200 + 10 * w}",
            )
            witnesses.append(Witness(meta=meta, tokens=tuple(tokens)))
            labels.append(dialect)
    assignment = ClusterAssignment(
        ids=tuple(w.id for w in witnesses), labels=tuple(labels), k=2
    )
    return witnesses, assignment


def write_corpus(
    out_dir: str | Path,
    n_per_dialect: int = 6,
    dialect_forms: int = 120,
    shared_forms: int = 60,
) -> tuple[Path, Path, ClusterAssignment]:
    """Materialize the synthetic corpus on disk.

    Writes one `<id>.txt` per witness under `<out_dir>/texts/` plus a
    `metadata.csv`; returns (texts_dir, metadata_path, planted partition).
    """
    out_dir = Path(out_dir)
    texts_dir = out_dir / "texts"
    texts_dir.mkdir(parents=True, exist_ok=True)
    witnesses, assignment = synthetic_witnesses(
        n_per_dialect=n_per_dialect,
        dialect_forms=dialect_forms,
        shared_forms=shared_forms,
    )
    lines = [",".join(METADATA_COLUMNS)]
    for witness in witnesses:
        meta = witness.meta
        lines.append(
            ",".join(
                (
                    meta.id,
                    meta.source,
                    meta.deaf_sigla or "",
                    meta.ms_base or "",
                    meta.editor or "",
                    meta.place_wit or "",
                    meta.date_wit or "",
                    meta.place_text or "",
                    meta.date_text or "",
                )
            )
        )
        # 12 tokens per line keeps the files readable
        tokens = witness.tokens
        text_lines = [
            " ".join(tokens[i : i + 12]) for i in range(0, len(tokens), 12)
        ]
        (texts_dir / f"{meta.id}.txt").write_text(
            "\n".join(text_lines) + "\n", encoding="utf-8"
        )
    metadata_path = out_dir / "metadata.csv"
    metadata_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return texts_dir, metadata_path, assignment
