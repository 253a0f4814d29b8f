from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scriptometer.corpus_ingest import (
    DEFAULT_CONFIG,
    METADATA_COLUMNS,
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


def write_corpus(tmp_path, texts: dict[str, str]):
    text_dir = tmp_path / "texts"
    text_dir.mkdir()
    rows = [",".join(METADATA_COLUMNS)]
    for wid, raw in texts.items():
        (text_dir / f"{wid}.txt").write_text(raw, encoding="utf-8")
        rows.append(f"{wid},src,,,,,,,")
    meta = tmp_path / "metadata.csv"
    meta.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return text_dir, meta


class TestNormalizeForm:
    def test_fold_and_map(self):
        assert normalize_form("Ja") == "ia"
        assert normalize_form("vait") == "uait"
        assert normalize_form("roi") == "roi"

    def test_capitals_mapped_via_fold(self):
        assert normalize_form("JUVENAL") == "iuuenal"

    def test_no_fold(self):
        config = NormalizationConfig(case_fold=False)
        assert normalize_form("Ja", config) == "Ja"
        assert normalize_form("ja", config) == "ia"

    def test_strip_diacritics(self):
        config = NormalizationConfig(strip_diacritics=True)
        assert normalize_form("porté", config) == "porte"
        # stripping bares the letter, which must then still be mapped
        assert normalize_form("ĵa", config) == "ia"

    def test_diacritics_kept_by_default(self):
        assert normalize_form("porté") == "porté"

    def test_rejects_non_idempotent_map(self):
        with pytest.raises(ValueError, match="idempotent"):
            NormalizationConfig(char_map=(("j", "i"), ("i", "j")))

    def test_rejects_multichar_entries(self):
        with pytest.raises(ValueError, match="single character"):
            NormalizationConfig(char_map=(("qu", "k"),))

    def test_rejects_uppercase_target_with_folding(self):
        with pytest.raises(ValueError, match="case-folded"):
            NormalizationConfig(char_map=(("j", "I"),))
        # without folding an uppercase target is allowed
        NormalizationConfig(char_map=(("j", "I"),), case_fold=False)

    @settings(max_examples=300)
    @given(st.text(min_size=1, max_size=30))
    def test_idempotent_default(self, s):
        once = normalize_form(s)
        assert normalize_form(once) == once

    @settings(max_examples=300)
    @given(st.text(min_size=1, max_size=30))
    def test_idempotent_with_stripping(self, s):
        config = NormalizationConfig(strip_diacritics=True)
        once = normalize_form(s, config)
        assert normalize_form(once, config) == once


class TestTokenize:
    def test_elision_split(self):
        assert tokenize("l'espee brandie") == ["l", "espee", "brandie"]

    def test_punctuation_stripped(self):
        assert tokenize("Seignurs, oez!") == ["seignurs", "oez"]

    def test_empty(self):
        assert tokenize("") == []

    def test_apostrophe_kept_when_not_splitting(self):
        config = NormalizationConfig(apostrophe_splits=False)
        assert tokenize("l'espee", config) == ["l'espee"]

    def test_typographic_apostrophe(self):
        assert tokenize("l’espee") == ["l", "espee"]

    def test_digits_split(self):
        assert tokenize("anno1200domini") == ["anno", "domini"]

    def test_custom_pattern(self):
        config = NormalizationConfig(token_pattern=r"[a-z]+")
        assert tokenize("ab2cd", config) == ["ab", "cd"]

    @settings(max_examples=200)
    @given(st.lists(st.text(alphabet="abcdefgij uvz.,;'", min_size=0, max_size=8), max_size=8))
    def test_whitespace_shape_irrelevant(self, parts):
        base = " ".join(parts)
        padded = "   " + "  \t ".join(parts) + " \n "
        assert tokenize(base) == tokenize(padded)

    @settings(max_examples=200)
    @given(st.text(max_size=60))
    def test_default_alphabet_excludes_mapped_and_upper(self, s):
        for token in tokenize(s):
            assert token
            assert not any(c.isspace() for c in token)
            assert "j" not in token and "v" not in token
            assert token == token.casefold()


class TestWitnessMeta:
    def test_rejects_reserved_characters(self):
        for bad in ("a b", "a,b", "a;b", "a:b", "a(b", "a)b", ""):
            with pytest.raises(ValueError):
                WitnessMeta(id=bad)

    def test_plain_id_ok(self):
        assert WitnessMeta(id="RolS").id == "RolS"


class TestLoadCorpus:
    def test_basic_load_and_normalization(self, tmp_path):
        text_dir, meta = write_corpus(tmp_path, {"a": "Ja vait", "b": "le roi"})
        witnesses = load_corpus(text_dir, meta)
        assert [w.id for w in witnesses] == ["a", "b"]
        assert witnesses[0].tokens == ("ia", "uait")
        assert witnesses[1].tokens == ("le", "roi")

    def test_order_follows_metadata(self, tmp_path):
        text_dir, meta = write_corpus(tmp_path, {"z": "un", "a": "deus", "m": "trois"})
        assert [w.id for w in load_corpus(text_dir, meta)] == ["z", "a", "m"]

    def test_empty_corpus(self, tmp_path):
        text_dir, meta = write_corpus(tmp_path, {})
        with pytest.raises(ValueError, match="empty corpus"):
            load_corpus(text_dir, meta)

    def test_missing_file_lists_all_ids(self, tmp_path):
        text_dir, meta = write_corpus(tmp_path, {"a": "text"})
        meta.write_text(
            ",".join(METADATA_COLUMNS) + "\na,s,,,,,,,\nX,s,,,,,,,\nY,s,,,,,,,\n",
            encoding="utf-8",
        )
        with pytest.raises(FileNotFoundError) as err:
            load_corpus(text_dir, meta)
        assert "X" in str(err.value) and "Y" in str(err.value)

    def test_duplicate_id(self, tmp_path):
        text_dir, meta = write_corpus(tmp_path, {"a": "text"})
        meta.write_text(
            ",".join(METADATA_COLUMNS) + "\na,s,,,,,,,\na,s,,,,,,,\n", encoding="utf-8"
        )
        with pytest.raises(ValueError, match="duplicate"):
            load_corpus(text_dir, meta)

    def test_malformed_header(self, tmp_path):
        text_dir, meta = write_corpus(tmp_path, {"a": "text"})
        meta.write_text("id,nom\na,x\n", encoding="utf-8")
        with pytest.raises(ValueError, match="malformed"):
            load_corpus(text_dir, meta)

    def test_metadata_with_byte_order_mark(self, tmp_path):
        text_dir, meta = write_corpus(tmp_path, {"a": "Ja vait"})
        meta.write_bytes(b"\xef\xbb\xbf" + meta.read_bytes())
        witnesses = load_corpus(text_dir, meta)
        assert witnesses[0].tokens == ("ia", "uait")

    def test_missing_input_dir(self, tmp_path):
        _, meta = write_corpus(tmp_path, {"a": "text"})
        with pytest.raises(FileNotFoundError, match="nowhere"):
            load_corpus(tmp_path / "nowhere", meta)

    def test_stoplist_filters_after_normalization(self, tmp_path):
        text_dir, meta = write_corpus(tmp_path, {"a": "Ja vait roi"})
        stop_path = tmp_path / "stop.txt"
        stop_path.write_text("Ja  # proper-name-like entry\nVAIT\n", encoding="utf-8")
        stoplist = Stoplist.from_file(stop_path)
        witnesses = load_corpus(text_dir, meta, stoplist=stoplist)
        assert witnesses[0].tokens == ("roi",)

    def test_metadata_fields_land_in_meta(self, tmp_path):
        text_dir, meta = write_corpus(tmp_path, {"a": "text"})
        meta.write_text(
            ",".join(METADATA_COLUMNS)
            + "\na,TFA,RolS,Digby 23,Segre,agn,1137pm13,Nord-Ouest,1100ca\n",
            encoding="utf-8",
        )
        w = load_corpus(text_dir, meta)[0]
        assert w.meta.deaf_sigla == "RolS"
        assert w.meta.ms_base == "Digby 23"
        assert w.meta.editor == "Segre"
        assert w.meta.place_wit == "agn"
        assert w.meta.date_text == "1100ca"


class TestFilterShort:
    def _witness(self, wid, n):
        return Witness(meta=WitnessMeta(id=wid), tokens=("tok",) * n)

    def test_threshold(self):
        short = self._witness("short", 387)
        long = self._witness("long", 11490)
        kept, dropped = filter_short([short, long], 2000)
        assert [w.id for w in kept] == ["long"]
        assert dropped == ["short"]

    def test_zero_threshold_keeps_all(self):
        witnesses = [self._witness("a", 0), self._witness("b", 3)]
        kept, dropped = filter_short(witnesses, 0)
        assert kept == witnesses and dropped == []

    def test_all_dropped_is_an_error(self):
        with pytest.raises(ValueError, match="no witnesses remain"):
            filter_short([self._witness("a", 5)], 10)

    def test_negative_threshold(self):
        with pytest.raises(ValueError):
            filter_short([self._witness("a", 5)], -1)


class TestConfigFile:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "norm.cfg"
        path.write_text(
            "# default-style config\n"
            "case_fold: true\n"
            "strip_diacritics = false\n"
            "apostrophe_splits: true\n"
            "j>i\n"
            "v>u\n",
            encoding="utf-8",
        )
        config = load_normalization_config(path)
        assert config == DEFAULT_CONFIG

    def test_token_pattern_key(self, tmp_path):
        path = tmp_path / "norm.cfg"
        path.write_text("token_pattern: [a-z]+\n", encoding="utf-8")
        assert load_normalization_config(path).token_pattern == "[a-z]+"

    def test_unrecognized_line(self, tmp_path):
        path = tmp_path / "norm.cfg"
        path.write_text("frobnicate\n", encoding="utf-8")
        with pytest.raises(ValueError, match="unrecognized"):
            load_normalization_config(path)

    def test_bad_boolean(self, tmp_path):
        path = tmp_path / "norm.cfg"
        path.write_text("case_fold: maybe\n", encoding="utf-8")
        with pytest.raises(ValueError, match="true or false"):
            load_normalization_config(path)
