import json

from cmpairs import GradedModule, Ideal, cache, free_resolution, make_module
from cmpairs.cache import Cache
from cmpairs.groebner import module_gb


def _fresh_module(R):
    # a new object each time, so the in-memory caches start empty
    return make_module(R, None, [[R.parse("x"), R.parse("y")]])


def test_cold_and_warm_resolutions_agree(tmp_path, S2):
    c = Cache(tmp_path)
    cache.activate(c)
    try:
        cold = free_resolution(_fresh_module(S2))
        assert c.misses >= 1
        warm = free_resolution(_fresh_module(S2))
        assert c.hits >= 1
        assert cold.betti == warm.betti and cold.maps == warm.maps and cold.shifts == warm.shifts
    finally:
        cache.activate(None)


def test_gb_round_trip(tmp_path, S2):
    c = Cache(tmp_path)
    cache.activate(c)
    try:
        vecs = [{(0, (2, 0)): 1}, {(0, (1, 1)): 1, (0, (0, 2)): 1}]
        a = module_gb(S2, [(0, 0)], vecs)
        b = module_gb(S2, [(0, 0)], vecs)
        assert a.elements == b.elements
        assert c.hits >= 1
    finally:
        cache.activate(None)


def test_corrupt_entry_is_rejected(tmp_path, S2):
    c = Cache(tmp_path)
    cache.activate(c)
    try:
        free_resolution(_fresh_module(S2))
        for f in tmp_path.rglob("*.json"):
            data = json.loads(f.read_text())
            if "maps" in data["payload"]:
                data["payload"]["maps"][0] = []
                f.write_text(json.dumps(data))
        res = free_resolution(_fresh_module(S2))
        assert res.betti == [1, 2, 1] and res.check_complex()
    finally:
        cache.activate(None)


def test_keys_are_content_addressed(S2):
    from cmpairs.cache import resolution_key
    a, b = _fresh_module(S2), _fresh_module(S2)
    assert resolution_key(a, 4) == resolution_key(b, 4)
    assert resolution_key(a, 4) != resolution_key(a, 5)
    # same module, same key; a different module gets a different key
    k = GradedModule.cyclic(S2, Ideal.maximal(S2))
    assert resolution_key(k, 4) == resolution_key(a, 4)
    x = GradedModule.cyclic(S2, Ideal(S2, [S2.parse("x")]))
    assert resolution_key(x, 4) != resolution_key(a, 4)
