import json

from no3line.cache import CACHE_VERSION, ResultCache, cache_get, cache_put


def test_round_trip(tmp_path):
    path = str(tmp_path / "cache.json")
    cache = ResultCache.load(path)  # missing file is fine
    cache.put("torus", 3, 3, {"T": 4})
    cache.save()

    again = ResultCache.load(path)
    rec = again.get("torus", 3, 3)
    assert rec["T"] == 4
    assert rec["version"] == CACHE_VERSION
    assert "timestamp" in rec


def test_keys_are_transpose_invariant():
    cache = ResultCache()
    cache.put("torus", 5, 3, {"T": 2})
    assert cache.get("torus", 3, 5)["T"] == 2
    assert cache.get("lattice", 3, 5) is None


def test_memory_only_cache_never_writes():
    cache = ResultCache()
    cache.put("torus", 2, 2, {"T": 4})
    cache.save()  # no path: a no-op
    assert cache.path is None


def test_corrupt_file_degrades_to_empty(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{this is not json", encoding="utf-8")
    cache = ResultCache.load(str(path))
    assert cache.entries == {}
    assert "corrupt cache" in capsys.readouterr().err


def test_wrong_layout_degrades_to_empty(tmp_path, capsys):
    path = tmp_path / "odd.json"
    path.write_text(json.dumps([1, 2, 3]), encoding="utf-8")
    assert ResultCache.load(str(path)).entries == {}
    assert "corrupt cache" in capsys.readouterr().err


def test_other_version_records_ignored(tmp_path):
    path = tmp_path / "cache.json"
    doc = {"version": CACHE_VERSION,
           "entries": {"torus:3:3": {"T": 4, "version": CACHE_VERSION + 1}}}
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert ResultCache.load(str(path)).get("torus", 3, 3) is None


def test_save_is_atomic_and_stable(tmp_path):
    path = str(tmp_path / "cache.json")
    cache = ResultCache.load(path)
    cache.put("lattice", 4, 4, {"T": 8, "count_max": 11})
    cache.save()
    first = open(path, encoding="utf-8").read()
    ResultCache.load(path).save()
    assert open(path, encoding="utf-8").read() == first
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".no3line")]


def test_module_level_helpers():
    cache = ResultCache()
    cache_put(cache, "torus", 6, 6, {"T": 8})
    assert cache_get(cache, "torus", 6, 6)["T"] == 8
    assert cache_get(cache, "torus", 6, 7) is None
