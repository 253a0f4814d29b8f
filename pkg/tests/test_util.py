from __future__ import annotations

import numpy as np
import pytest

from scriptometer._util import atomic_write_text, full_precision, map_ordered, thread_count


class TestThreadCount:
    def test_default_is_sequential(self, monkeypatch):
        monkeypatch.delenv("SCRIPTOMETER_THREADS", raising=False)
        assert thread_count() == 1

    def test_env_sets_cap(self, monkeypatch):
        monkeypatch.setenv("SCRIPTOMETER_THREADS", "6")
        assert thread_count() == 6

    def test_floor_of_one(self, monkeypatch):
        monkeypatch.setenv("SCRIPTOMETER_THREADS", "0")
        assert thread_count() == 1
        monkeypatch.setenv("SCRIPTOMETER_THREADS", "-3")
        assert thread_count() == 1

    def test_garbage_rejected_loudly(self, monkeypatch):
        monkeypatch.setenv("SCRIPTOMETER_THREADS", "many")
        with pytest.raises(ValueError, match="SCRIPTOMETER_THREADS"):
            thread_count()


class TestMapOrdered:
    def test_preserves_order_sequential(self, monkeypatch):
        monkeypatch.delenv("SCRIPTOMETER_THREADS", raising=False)
        assert map_ordered(lambda x: x * x, range(10)) == [x * x for x in range(10)]

    def test_preserves_order_threaded(self, monkeypatch):
        monkeypatch.setenv("SCRIPTOMETER_THREADS", "8")
        items = list(range(200))
        assert map_ordered(lambda x: x * 3, items) == [x * 3 for x in items]

    def test_empty_input(self, monkeypatch):
        monkeypatch.setenv("SCRIPTOMETER_THREADS", "8")
        assert map_ordered(lambda x: x, []) == []


class TestAtomicWrite:
    def test_writes_and_replaces(self, tmp_path):
        target = tmp_path / "file.txt"
        atomic_write_text(target, "one\n")
        atomic_write_text(target, "two\n")
        assert target.read_text(encoding="utf-8") == "two\n"

    def test_no_temp_files_left_behind(self, tmp_path):
        target = tmp_path / "file.txt"
        atomic_write_text(target, "content\n")
        assert [p.name for p in tmp_path.iterdir()] == ["file.txt"]


class TestFullPrecision:
    def test_round_trips_float64(self):
        rng = np.random.default_rng(99)
        for _ in range(500):
            x = float(rng.uniform(-1e6, 1e6)) * 10 ** int(rng.integers(-12, 12))
            assert float(full_precision(x)) == x

    def test_plain_integers_stay_short(self):
        assert full_precision(4.0) == "4"
        assert full_precision(0.5) == "0.5"
