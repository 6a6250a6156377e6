"""Content-addressed on-disk cache for Groebner bases and free resolutions.

Entries are write-once JSON files named by the sha256 of a canonical key.
Writers go through a temporary file and an atomic rename, so concurrent
readers never see partial entries. Every payload is revalidated on load.
"""
import hashlib
import json
import os
import tempfile
from pathlib import Path

VERSION = "1"

_active = None


def _canon(x):
    if isinstance(x, dict):
        return sorted(([_canon(k), _canon(v)] for k, v in x.items()), key=repr)
    if isinstance(x, (list, tuple)):
        return [_canon(v) for v in x]
    return x


def content_hash(*parts):
    blob = json.dumps([VERSION, _canon(parts)], separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def vec_to_json(v):
    return sorted([r, list(e), c] for (r, e), c in v.items())


def vec_from_json(items):
    return {(r, tuple(e)): c for r, e, c in items}


class Cache:
    def __init__(self, directory=None):
        directory = directory or os.environ.get("CMPAIRS_CACHE") or ".cmpairs-cache"
        self.dir = Path(directory)
        self.hits = 0
        self.misses = 0

    def _path(self, key):
        return self.dir / key[:2] / f"{key}.json"

    def get(self, key):
        path = self._path(key)
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            self.misses += 1
            return None
        if data.get("version") != VERSION:
            self.misses += 1
            return None
        self.hits += 1
        return data["payload"]

    def put(self, key, payload):
        path = self._path(key)
        if path.exists():
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"version": VERSION, "payload": payload}, fh, sort_keys=True)
        os.replace(tmp, path)


def activate(cache):
    """Route resolution and GB lookups through ``cache`` (None disables caching)."""
    global _active
    _active = cache


def active():
    return _active


# -- resolutions ----------------------------------------------------------------------------

def resolution_key(M, cap):
    return content_hash("resolution", M.ring.key(), M.shifts,
                        [vec_to_json(c) for c in M.columns], cap)


def resolution_to_json(res):
    P = res.module
    return {
        "presentation": {"shifts": [list(s) for s in P.shifts],
                         "columns": [vec_to_json(c) for c in P.columns]},
        "shifts": [[list(d) for d in s] for s in res.shifts],
        "maps": [[vec_to_json(c) for c in m] for m in res.maps],
        "cap": res.cap,
        "complete": res.complete,
        "periodicity": res.periodicity,
    }


def resolution_from_json(ring, data):
    """Rebuild a Resolution and revalidate it (complex + presentation); None on mismatch."""
    from .homological import Resolution
    from .module import GradedModule
    P = GradedModule(ring, [tuple(s) for s in data["presentation"]["shifts"]],
                     [vec_from_json(c) for c in data["presentation"]["columns"]])
    shifts = [[tuple(d) for d in s] for s in data["shifts"]]
    maps = [[vec_from_json(c) for c in m] for m in data["maps"]]
    res = Resolution(P, shifts, maps, data["cap"], data["complete"], True, data["periodicity"])
    if maps and maps[0] != P.columns:
        return None
    if not res.check_complex():
        return None
    return res


# -- Groebner bases ---------------------------------------------------------------------------

def gb_key(ring, shifts, vectors):
    return content_hash("gb", ring.key(), shifts, [vec_to_json(v) for v in vectors])


def gb_to_json(G):
    return {"elements": [vec_to_json(v) for v in G.elements], "kinds": list(G.kinds)}


def gb_from_json(ring, shifts, data):
    from .groebner import GroebnerBasis
    G = GroebnerBasis(ring, shifts, [vec_from_json(v) for v in data["elements"]], data["kinds"])
    return G if G.check_buchberger() else None
