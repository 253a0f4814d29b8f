"""Witness loading, tokenization, and graphematic normalization.

Turns a directory of plain-text witness files plus a metadata table into
normalized token streams ready for frequency analysis. Normalization
collapses allograph variation (by default i/j and u/v, applied after case
folding so capitals are caught too) and optionally strips diacritics, so
counting happens on the graphematic level rather than on editorial surface
forms.
"""

from __future__ import annotations

import csv
import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from ._util import map_ordered

DEFAULT_CHAR_MAP: tuple[tuple[str, str], ...] = (("j", "i"), ("v", "u"))

METADATA_COLUMNS = (
    "id",
    "source",
    "deaf",
    "ms_base",
    "ed",
    "place_wit",
    "date_wit",
    "place_text",
    "date_text",
)

# straight and typographic apostrophes, both common in editions
_APOSTROPHES = "'’"
_NEWICK_RESERVED = ",;:()"


def _check_id(witness_id: str) -> None:
    if not witness_id:
        raise ValueError("witness id must be nonempty")
    bad = sorted({c for c in witness_id if c.isspace() or c in _NEWICK_RESERVED})
    if bad:
        raise ValueError(
            f"witness id {witness_id!r} contains reserved characters {bad} "
            "(ids must be whitespace-free and Newick-safe)"
        )


@dataclass(frozen=True)
class WitnessMeta:
    """Philological metadata for one witness; id doubles as the text file stem."""

    id: str
    source: str = ""
    deaf_sigla: str | None = None
    ms_base: str | None = None
    editor: str | None = None
    place_wit: str | None = None
    date_wit: str | None = None
    place_text: str | None = None
    date_text: str | None = None

    def __post_init__(self) -> None:
        _check_id(self.id)


@dataclass(frozen=True)
class NormalizationConfig:
    """How raw text becomes normalized graphic forms.

    char_map entries are single-character (from, to) pairs applied after case
    folding. token_pattern, when given, is a regex matching one token;
    otherwise tokens are runs of Unicode letters (plus apostrophes when
    apostrophe_splits is false).
    """

    char_map: tuple[tuple[str, str], ...] = DEFAULT_CHAR_MAP
    case_fold: bool = True
    strip_diacritics: bool = False
    apostrophe_splits: bool = True
    token_pattern: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "char_map", tuple((s, t) for s, t in self.char_map))
        targets = {}
        for src, dst in self.char_map:
            if len(src) != 1 or len(dst) != 1:
                raise ValueError(
                    f"char_map entries must map single characters, got {src!r}>{dst!r}"
                )
            if src in targets and targets[src] != dst:
                raise ValueError(f"char_map maps {src!r} to two different targets")
            targets[src] = dst
        for src, dst in self.char_map:
            # idempotence guard: a target remapped elsewhere would make the
            # map change strings on a second application
            if dst in targets and targets[dst] != dst:
                raise ValueError(
                    f"char_map is not idempotent: target {dst!r} of {src!r}>{dst!r} "
                    f"is itself mapped to {targets[dst]!r}"
                )
            if self.case_fold and dst != dst.casefold():
                raise ValueError(
                    f"char_map target {dst!r} is not case-folded; with case_fold "
                    "enabled a second normalization pass would change it"
                )


DEFAULT_CONFIG = NormalizationConfig()


@lru_cache(maxsize=None)
def _translation(char_map: tuple[tuple[str, str], ...]) -> dict[int, str]:
    return {ord(src): dst for src, dst in char_map}


@lru_cache(maxsize=None)
def _token_regex(token_pattern: str | None, apostrophe_splits: bool) -> re.Pattern[str]:
    if token_pattern is not None:
        return re.compile(token_pattern)
    if apostrophe_splits:
        return re.compile(r"[^\W\d_]+")
    return re.compile(r"(?:[^\W\d_]|[" + _APOSTROPHES + "])+")


def _strip_diacritics(text: str) -> str:
    decomposed = unicodedata.normalize("NFD", text)
    bare = "".join(c for c in decomposed if not unicodedata.combining(c))
    return unicodedata.normalize("NFC", bare)


def normalize_form(form: str, config: NormalizationConfig = DEFAULT_CONFIG) -> str:
    """Normalize one graphic form: case folding, character mapping, optional
    diacritic stripping. Deterministic and idempotent."""
    out = form.casefold() if config.case_fold else form
    out = out.translate(_translation(config.char_map))
    if config.strip_diacritics:
        out = _strip_diacritics(out)
        # stripping can bare a mapped letter (e.g. with-circumflex forms);
        # a second mapping pass keeps normalization idempotent
        out = out.translate(_translation(config.char_map))
    return out


def tokenize(raw: str, config: NormalizationConfig = DEFAULT_CONFIG) -> list[str]:
    """Split raw text into normalized forms.

    Any character outside the token pattern is a separator; with
    apostrophe_splits an apostrophe ends the token and is discarded, so
    elisions count as two forms. Empty fragments are dropped.
    """
    regex = _token_regex(config.token_pattern, config.apostrophe_splits)
    tokens = []
    for match in regex.finditer(raw):
        form = normalize_form(match.group(), config)
        if form:
            tokens.append(form)
    return tokens


@dataclass(frozen=True)
class Stoplist:
    """Forms to drop from every witness (e.g. proper names), stored normalized."""

    forms: frozenset[str]

    @classmethod
    def from_file(
        cls, path: str | Path, config: NormalizationConfig = DEFAULT_CONFIG
    ) -> "Stoplist":
        """One form per line; blank lines and '#' comments ignored. Entries are
        normalized with the same config as the corpus."""
        forms = set()
        for line in Path(path).read_text(encoding="utf-8-sig").splitlines():
            entry = line.split("#", 1)[0].strip()
            if entry:
                forms.add(normalize_form(entry, config))
        return cls(forms=frozenset(forms))


@dataclass(frozen=True)
class Witness:
    """One text witness: metadata plus its normalized token stream."""

    meta: WitnessMeta
    tokens: tuple[str, ...]

    @property
    def id(self) -> str:
        return self.meta.id

    @property
    def n_tokens(self) -> int:
        return len(self.tokens)


def _read_metadata(path: Path) -> list[WitnessMeta]:
    try:
        with path.open(encoding="utf-8-sig", newline="") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except FileNotFoundError:
        raise FileNotFoundError(f"metadata file not found: {path}") from None
    if not rows:
        raise ValueError(f"malformed metadata {path}: file is empty")
    header = tuple(cell.strip() for cell in rows[0])
    if header != METADATA_COLUMNS:
        raise ValueError(
            f"malformed metadata {path}: expected header "
            f"{','.join(METADATA_COLUMNS)!r}, got {','.join(header)!r}"
        )
    metas = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) != len(METADATA_COLUMNS):
            raise ValueError(
                f"malformed metadata {path}: line {lineno} has {len(row)} fields, "
                f"expected {len(METADATA_COLUMNS)}"
            )
        values = [cell.strip() for cell in row]
        metas.append(
            WitnessMeta(
                id=values[0],
                source=values[1],
                deaf_sigla=values[2] or None,
                ms_base=values[3] or None,
                editor=values[4] or None,
                place_wit=values[5] or None,
                date_wit=values[6] or None,
                place_text=values[7] or None,
                date_text=values[8] or None,
            )
        )
    return metas


def load_corpus(
    text_dir: str | Path,
    metadata: str | Path,
    config: NormalizationConfig = DEFAULT_CONFIG,
    stoplist: Stoplist | None = None,
) -> list[Witness]:
    """Load one witness per metadata row, in metadata order.

    text_dir must hold a UTF-8 file `<id>.txt` per row. Tokens are normalized
    and stoplist-filtered. Raises FileNotFoundError listing every id whose
    text file is missing, and ValueError on duplicate ids, malformed metadata,
    or an empty corpus.
    """
    text_dir = Path(text_dir)
    if not text_dir.is_dir():
        raise FileNotFoundError(f"input directory not found: {text_dir}")
    metas = _read_metadata(Path(metadata))
    if not metas:
        raise ValueError("empty corpus: metadata contains no witness rows")

    seen = set()
    for meta in metas:
        if meta.id in seen:
            raise ValueError(f"duplicate witness id {meta.id!r} in metadata")
        seen.add(meta.id)

    missing = [m.id for m in metas if not (text_dir / f"{m.id}.txt").is_file()]
    if missing:
        raise FileNotFoundError(
            f"missing text files in {text_dir} for ids: {', '.join(missing)}"
        )

    stop = stoplist.forms if stoplist is not None else frozenset()

    def build(meta: WitnessMeta) -> Witness:
        raw = (text_dir / f"{meta.id}.txt").read_text(encoding="utf-8")
        tokens = tokenize(raw, config)
        if stop:
            tokens = [t for t in tokens if t not in stop]
        return Witness(meta=meta, tokens=tuple(tokens))

    return map_ordered(build, metas)


def filter_short(
    witnesses: list[Witness], min_tokens: int
) -> tuple[list[Witness], list[str]]:
    """Drop witnesses with fewer than min_tokens tokens; returns (kept, dropped ids)."""
    if min_tokens < 0:
        raise ValueError("min_tokens must be >= 0")
    kept = [w for w in witnesses if w.n_tokens >= min_tokens]
    dropped = [w.id for w in witnesses if w.n_tokens < min_tokens]
    if witnesses and not kept:
        raise ValueError(
            f"no witnesses remain: all {len(witnesses)} fall below {min_tokens} tokens"
        )
    return kept, dropped


_BOOL_KEYS = ("case_fold", "strip_diacritics", "apostrophe_splits")
_TRUE = {"true", "1", "yes", "on"}
_FALSE = {"false", "0", "no", "off"}


def load_normalization_config(path: str | Path) -> NormalizationConfig:
    """Parse a normalization config file.

    Schema: blank lines and '#' comments are ignored. `key: value` (or
    `key = value`) lines set case_fold / strip_diacritics / apostrophe_splits
    (booleans) or token_pattern (a regex). Any other nonblank line must be a
    char_map pair written `from>to`, one pair per line, applied in file order.
    """
    kwargs: dict[str, object] = {}
    char_map: list[tuple[str, str]] = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8-sig").splitlines(), start=1
    ):
        entry = line.split("#", 1)[0].strip()
        if not entry:
            continue
        key, sep, value = entry.partition(":")
        if not sep:
            key, sep, value = entry.partition("=")
        key = key.strip()
        if sep and key in _BOOL_KEYS:
            flag = value.strip().lower()
            if flag not in _TRUE | _FALSE:
                raise ValueError(f"{path}:{lineno}: {key} must be true or false")
            kwargs[key] = flag in _TRUE
            continue
        if sep and key == "token_pattern":
            kwargs["token_pattern"] = value.strip()
            continue
        if ">" in entry:
            src, _, dst = entry.partition(">")
            char_map.append((src.strip(), dst.strip()))
            continue
        raise ValueError(f"{path}:{lineno}: unrecognized line {entry!r}")
    if char_map:
        kwargs["char_map"] = tuple(char_map)
    return NormalizationConfig(**kwargs)  # type: ignore[arg-type]
