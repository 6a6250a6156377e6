"""Free resolutions, Hom/Ext/Tor as presented modules, projective dimension and e_R(M, N).

Resolutions over Artinian rings are computed degree by degree with linear
algebra (every graded piece is finite); elsewhere each step is a minimal
Groebner-basis syzygy computation.
"""
from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial

import numpy as np

from .errors import ResolutionTooShort
from .groebner import minimal_generators, module_gb, nf_vector, syzygies, vector_degree
from .linalg import Echelon, nullspace, rank as mat_rank
from .module import GradedModule, prune
from .monomials import mono_mul, unit
from .pieces import multiplication_matrix, piece


# -- extended naturals -----------------------------------------------------------

@dataclass(frozen=True)
class ExtendedNat:
    """Finite(n) | Infinite | AtLeast(n) | NegInfinite, with how the value was established.

    NegInfinite is the supremum of the empty set (e.g. cd of the zero module);
    Infinite is also used for the infimum of the empty set (depth when M = IM).
    """

    kind: str
    value: int = None
    certificate: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def finite(cls, n, **cert):
        return cls("finite", int(n), cert)

    @classmethod
    def infinite(cls, **cert):
        return cls("infinite", None, cert)

    @classmethod
    def at_least(cls, n, **cert):
        return cls("at_least", int(n), cert)

    @classmethod
    def neg_infinite(cls, **cert):
        return cls("neg_infinite", None, cert)

    @property
    def is_finite(self):
        return self.kind == "finite"

    @property
    def is_exact(self):
        return self.kind in ("finite", "infinite", "neg_infinite")

    def _num(self):
        if self.kind == "finite":
            return self.value
        if self.kind == "infinite":
            return float("inf")
        if self.kind == "neg_infinite":
            return float("-inf")
        return None

    def le(self, other):
        """True/False when decidable, None when an AtLeast makes it unknown."""
        a, b = self._num(), other._num()
        if a is not None and b is not None:
            return a <= b
        if self.kind == "at_least" and b is not None and b < self.value:
            return False
        if other.kind == "at_least" and a is not None and a <= other.value:
            return True
        return None

    def eq(self, other):
        a, b = self._num(), other._num()
        if a is None or b is None:
            return None
        return a == b

    def plus(self, k):
        """self + k for an ExtendedNat or int k."""
        if isinstance(k, ExtendedNat):
            if k.kind == "finite":
                k = k.value
            elif k.kind == "infinite":
                return ExtendedNat.infinite(**k.certificate)
            elif k.kind == "neg_infinite":
                return k
            else:
                if self.kind in ("finite", "at_least"):
                    return ExtendedNat.at_least(self.value + k.value)
                return self
        if self.kind == "finite":
            return ExtendedNat("finite", self.value + k, self.certificate)
        if self.kind == "at_least":
            return ExtendedNat("at_least", self.value + k, self.certificate)
        return self

    def to_json(self):
        return {"kind": self.kind, "value": self.value, "certificate": _jsonable(self.certificate)}

    @classmethod
    def from_json(cls, d):
        return cls(d["kind"], d.get("value"), d.get("certificate") or {})

    def __str__(self):
        if self.kind == "finite":
            return f"Finite({self.value})"
        if self.kind == "at_least":
            return f"AtLeast({self.value})"
        if self.kind == "neg_infinite":
            return "NegInfinite"
        period = self.certificate.get("period")
        return f"Infinite(period {period})" if period else "Infinite"

    __repr__ = __str__


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, ExtendedNat):
        return x.to_json()
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


# -- subquotients and homology -----------------------------------------------------

class SubquotientModule(GradedModule):
    """(span of ``ambient_generators`` + rels) / rels inside a free module, with its presentation."""

    def __init__(self, ring, shifts, columns, ambient_shifts, ambient_generators, ambient_relations):
        super().__init__(ring, shifts, columns)
        self.ambient_shifts = list(ambient_shifts)
        self.ambient_generators = ambient_generators
        self.ambient_relations = ambient_relations


def subquotient(ring, ambient_shifts, gens, rels):
    gens = [nf_vector(ring, g) for g in gens]
    gens = [g for g in gens if g]
    rels = [r for r in (nf_vector(ring, r) for r in rels) if r]
    if not gens:
        return SubquotientModule(ring, [], [], ambient_shifts, [], rels)
    gdeg = [vector_degree(ring, ambient_shifts, g) for g in gens]
    rdeg = [vector_degree(ring, ambient_shifts, r) for r in rels]
    syz, _ = syzygies(ring, ambient_shifts, gens + rels, gdeg + rdeg)
    k = len(gens)
    cols = [{(i, e): c for (i, e), c in s.items() if i < k} for s in syz]
    P, _, kept = prune(GradedModule(ring, gdeg, cols))
    return SubquotientModule(ring, P.shifts, P.columns, ambient_shifts,
                             [gens[i] for i in kept], rels)


def _kernel_generators(ring, P_shifts, out_images, Q_shifts, Q_rels):
    """Generators of {x in F_P : Psi x in im(Q_rels)}."""
    r = len(P_shifts)
    if out_images is None:
        return [{(i, (0,) * ring.n): 1} for i in range(r)]
    cols = [nf_vector(ring, v) for v in out_images] + list(Q_rels)
    degs = list(P_shifts) + [vector_degree(ring, Q_shifts, v) for v in Q_rels]
    syz, _ = syzygies(ring, Q_shifts, cols, degs)
    out = []
    for s in syz:
        v = {(i, e): c for (i, e), c in s.items() if i < r}
        if v:
            out.append(v)
    return out


def homology(ring, P_shifts, P_rels, out_images, Q_shifts, Q_rels, in_images):
    """ker(P -> Q) / im(O -> P) for modules presented over free modules.

    ``out_images`` lists images of P's generators in Q's free module (None when
    Q = 0); ``in_images`` are vectors of P's free module spanning im(O -> P).
    """
    K = _kernel_generators(ring, P_shifts, out_images, Q_shifts, Q_rels)
    return subquotient(ring, P_shifts, K, list(in_images) + list(P_rels))


def homology_is_zero(ring, P_shifts, P_rels, out_images, Q_shifts, Q_rels, in_images):
    K = _kernel_generators(ring, P_shifts, out_images, Q_shifts, Q_rels)
    if not K:
        return True
    G = module_gb(ring, P_shifts, [nf_vector(ring, v) for v in list(in_images) + list(P_rels)])
    return all(G.contains(v) for v in K)


# -- resolutions -------------------------------------------------------------------

@dataclass
class Resolution:
    """Minimal graded free resolution F_0 <- F_1 <- ... <- F_L.

    ``maps[k]`` is d_{k+1}: its columns are images of the generators of
    F_{k+1} in F_k. ``complete`` means F_{L+1} = 0 was established.
    """

    module: GradedModule
    shifts: list
    maps: list
    cap: int
    complete: bool
    minimal: bool = True
    periodicity: dict = None
    memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def ring(self):
        return self.module.ring

    @property
    def length(self):
        return len(self.maps)

    @property
    def betti(self):
        return [len(s) for s in self.shifts]

    def d(self, k):
        """The differential d_k : F_k -> F_{k-1} as a list of columns."""
        return self.maps[k - 1]

    def has_map(self, k):
        """True if d_k is known; d_k for k beyond a complete resolution is zero."""
        return k <= self.length or self.complete

    def free_shifts(self, k):
        if k < len(self.shifts):
            return self.shifts[k]
        if self.complete:
            return []
        raise ResolutionTooShort(f"F_{k} not computed (cap {self.cap})")

    def check_complex(self):
        """d_k d_{k+1} = 0 modulo J for every k."""
        ring = self.ring
        p = ring.p
        for k in range(1, self.length):
            dk, dk1 = self.maps[k - 1], self.maps[k]
            for col in dk1:
                acc = {}
                for (j, e), c in col.items():
                    for (i, e2), c2 in dk[j].items():
                        t = (i, mono_mul(e, e2))
                        acc[t] = (acc.get(t, 0) + c * c2) % p
                if nf_vector(ring, {t: x for t, x in acc.items() if x}):
                    return False
        return True

    def matrix_rows(self, k):
        """d_k as a list of rows of polynomial dicts."""
        rows = [[{} for _ in self.maps[k - 1]] for _ in self.shifts[k - 1]]
        for j, col in enumerate(self.maps[k - 1]):
            for (i, e), c in col.items():
                rows[i][j][e] = c
        return rows


def _artinian_standard(ring):
    data = getattr(ring, "_artinian_std", None)
    if data is None:
        seen = {(0,) * ring.n}
        frontier = [(0,) * ring.n]
        while frontier:
            nxt = []
            for e in frontier:
                for v in range(ring.n):
                    f = mono_mul(e, unit(ring.n, v))
                    if f not in seen and not ring.in_initial(f):
                        seen.add(f)
                        nxt.append(f)
            frontier = nxt
        data = {}
        for e in seen:
            data.setdefault(ring.degree(e), []).append(e)
        for d in data:
            data[d].sort()
        ring._artinian_std = data
    return data


def _mul_nf(ring, exp, vec):
    """x^exp * vec, reduced mod J."""
    if ring.monomial_relations:
        out = {}
        for (i, e), c in vec.items():
            f = mono_mul(e, exp)
            if not ring.in_initial(f):
                out[(i, f)] = c
        return out
    return nf_vector(ring, {(i, mono_mul(e, exp)): c for (i, e), c in vec.items()})


def _la_min_syzygies(ring, tgt_shifts, columns, src_shifts):
    """Minimal generators of ker(F_src -> F_tgt) over an Artinian ring, degree by degree."""
    p = ring.p
    std = _artinian_standard(ring)
    var_degs = [ring.degree(unit(ring.n, v)) for v in range(ring.n)]
    degs = set()
    for a in src_shifts:
        for dd in std:
            degs.add(ring.deg_add(a, dd))
    kernels = {}
    gens, gen_degs = [], []
    for d in sorted(degs, key=lambda x: (ring.tdeg(x), x)):
        src = [(j, s) for j, a in enumerate(src_shifts) for s in std.get(ring.deg_sub(d, a), ())]
        tgt = [(i, s) for i, b in enumerate(tgt_shifts) for s in std.get(ring.deg_sub(d, b), ())]
        if not src:
            continue
        tindex = {t: k for k, t in enumerate(tgt)}
        A = np.zeros((len(src), len(tgt)), dtype=np.int64)
        for row, (j, s) in enumerate(src):
            for t, c in _mul_nf(ring, s, columns[j]).items():
                A[row, tindex[t]] = (A[row, tindex[t]] + c) % p
        null = nullspace(A.T, p) if tgt else np.eye(len(src), dtype=np.int64)
        kernels[d] = (src, null)
        if null.shape[0] == 0:
            continue
        sindex = {t: k for k, t in enumerate(src)}
        E = Echelon(len(src), p)
        for v in range(ring.n):
            dv = ring.deg_sub(d, var_degs[v])
            if dv not in kernels:
                continue
            b, rows = kernels[dv]
            if rows.shape[0] == 0:
                continue
            xv = unit(ring.n, v)
            M = np.zeros((rows.shape[0], len(src)), dtype=np.int64)
            for k, (j, s) in enumerate(b):
                f = mono_mul(s, xv)
                img = _mul_nf(ring, xv, {(j, s): 1})
                for t, c in img.items():
                    M[:, sindex[t]] = (M[:, sindex[t]] + rows[:, k] * c) % p
            E.add(M)
        for k in E.add(null):
            vec = {src[c]: int(null[k, c]) for c in np.flatnonzero(null[k])}
            gens.append(vec)
            gen_degs.append(d)
    return gens, gen_degs


def _min_syzygies(ring, tgt_shifts, columns, src_shifts):
    if ring.is_artinian:
        return _la_min_syzygies(ring, tgt_shifts, columns, src_shifts)
    return syzygies(ring, tgt_shifts, columns, src_shifts, minimal=True)


def _sort_degrees(ring, degs):
    return sorted(degs, key=lambda d: (ring.tdeg(d), d))


def _periodic_match(ring, rows1, d1, rows2, d2, max_perms=5040):
    """Certificate that coker(d2) is coker(d1) shifted, via a row identification, or None."""
    if len(rows1) != len(rows2) or len(d1) != len(d2) or not d1:
        return None
    s1, s2 = _sort_degrees(ring, rows1), _sort_degrees(ring, rows2)
    delta = ring.deg_sub(s2[0], s1[0])
    if _sort_degrees(ring, [ring.deg_add(x, delta) for x in rows1]) != s2:
        return None
    classes = {}
    for i, dg in enumerate(rows1):
        classes.setdefault(dg, []).append(i)
    groups = []
    for dg, idx1 in classes.items():
        idx2 = [i for i, x in enumerate(rows2) if x == ring.deg_add(dg, delta)]
        groups.append((idx1, idx2))
    total = 1
    for idx1, _ in groups:
        total *= factorial(len(idx1))
    if total > max_perms:
        return None
    G1 = module_gb(ring, rows1, d1)
    for choice in product(*(permutations(idx2) for _, idx2 in groups)):
        perm = {}
        for (idx1, _), idx2 in zip(groups, choice):
            for a, b in zip(idx1, idx2):
                perm[b] = a
        moved = [{(perm[i], e): c for (i, e), c in col.items()} for col in d2]
        if not all(G1.contains(v) for v in moved):
            continue
        G2 = module_gb(ring, rows1, moved)
        if all(G2.contains(v) for v in d1):
            return {"period": 2, "shift": list(delta),
                    "row_permutation": [perm[b] for b in range(len(rows2))]}
    return None


def free_resolution(M, cap=None):
    """Minimal graded free resolution of M up to length ``cap`` (default n + 4)."""
    ring = M.ring
    if cap is None:
        cap = ring.n + 4
    from . import cache
    store = cache.active()
    if store is not None:
        key = cache.resolution_key(M, cap)
        data = store.get(key)
        if data is not None:
            res = cache.resolution_from_json(ring, data)
            if res is not None:
                return res
        res = _free_resolution(M, cap)
        store.put(key, cache.resolution_to_json(res))
        return res
    return _free_resolution(M, cap)


def _free_resolution(M, cap):
    ring = M.ring
    P = M.minimal_presentation()
    shifts = [list(P.shifts)]
    maps = []
    complete = False
    periodicity = None
    if not P.columns:
        complete = True
    elif cap >= 1:
        maps.append(list(P.columns))
        shifts.append(list(P.col_degrees))
        check_period = ring.is_hypersurface and ring.relations
        while len(maps) < cap:
            syz, degs = _min_syzygies(ring, shifts[-2], maps[-1], shifts[-1])
            if not syz:
                complete = True
                break
            maps.append(syz)
            shifts.append(list(degs))
            k = len(maps) - 2
            if check_period and periodicity is None and k >= 1:
                cert = _periodic_match(ring, shifts[k - 1], maps[k - 1], shifts[k + 1], maps[k + 1])
                if cert is not None:
                    periodicity = dict(cert, start=k)
    return Resolution(P, shifts, maps, cap, complete, True, periodicity)


# -- Hom / tensor with a free complex ---------------------------------------------------

def _hom_free(ring, F_shifts, N):
    """Hom(F, N) = sum_j N(a_j): generator (j, k) has degree b_k - a_j."""
    s = N.rank
    shifts = [ring.deg_sub(b, a) for a in F_shifts for b in N.shifts]
    rels = []
    for j in range(len(F_shifts)):
        for col in N.columns:
            rels.append({(j * s + k, e): c for (k, e), c in col.items()})
    return shifts, rels


def _hom_map_images(F_rank, dcols, N):
    """Images of generators of Hom(F_i, N) under precomposition with d = d_{i+1}."""
    s = N.rank
    images = [dict() for _ in range(F_rank * s)]
    for jp, col in enumerate(dcols):
        for (j, e), c in col.items():
            for k in range(s):
                images[j * s + k][(jp * s + k, e)] = c
    return images


def _tensor_free(ring, F_shifts, N):
    s = N.rank
    shifts = [ring.deg_add(a, b) for a in F_shifts for b in N.shifts]
    rels = []
    for j in range(len(F_shifts)):
        for col in N.columns:
            rels.append({(j * s + k, e): c for (k, e), c in col.items()})
    return shifts, rels


def _tensor_map_images(dcols, N):
    """Images of generators (j, k) of F_i (x) N under d_i (x) 1."""
    s = N.rank
    images = []
    for col in dcols:
        for k in range(s):
            images.append({(l * s + k, e): c for (l, e), c in col.items()})
    return images


def _ensure_resolution(M, res, need):
    if res is None:
        res = free_resolution(M, max(need, M.ring.n + 4))
    if not res.complete and res.length < need:
        raise ResolutionTooShort(f"need d_{need}, resolution computed to length {res.length}")
    return res


def _ext_data(i, res, N):
    ring = res.ring
    Fi = res.free_shifts(i) if i < len(res.shifts) else []
    P_shifts, P_rels = _hom_free(ring, Fi, N)
    if i + 1 <= res.length:
        Fi1 = res.shifts[i + 1]
        Q_shifts, Q_rels = _hom_free(ring, Fi1, N)
        out = _hom_map_images(len(Fi), res.d(i + 1), N)
    else:
        Q_shifts, Q_rels, out = [], [], None
    if i >= 1 and i <= res.length:
        ins = _hom_map_images(len(res.shifts[i - 1]), res.d(i), N)
    else:
        ins = []
    return P_shifts, P_rels, out, Q_shifts, Q_rels, ins


def ext(i, M, N, res=None):
    """Ext^i_R(M, N) as a presented graded module."""
    ring = M.ring
    res = _ensure_resolution(M, res, i + 1)
    if i >= len(res.shifts):
        return SubquotientModule(ring, [], [], [], [], [])
    return homology(ring, *_ext_data(i, res, N))


def finite_support(N):
    """Degrees where N can be nonzero, or None if N does not have finite length."""
    if N.rank == 0:
        return []
    if N.dim() > 0:
        return None
    ring = N.ring
    ann = N.annihilator()
    from .groebner import ideal_gb_in_ambient, leading_exp
    gb = ideal_gb_in_ambient(ring, list(ann.generators) + list(ring.relations))
    leads = [leading_exp(ring, g) for g in gb]
    seen = {(0,) * ring.n}
    frontier = list(seen)
    while frontier:
        nxt = []
        for e in frontier:
            for v in range(ring.n):
                f = mono_mul(e, unit(ring.n, v))
                if f not in seen and not any(all(a <= b for a, b in zip(le, f)) for le in leads):
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    degs = {ring.deg_add(b, ring.degree(e)) for b in N.shifts for e in seen}
    return _sort_degrees(ring, degs)


def _block(src_pieces, tgt_pieces, entries):
    rows = sum(P.dim for P in src_pieces)
    cols = sum(P.dim for P in tgt_pieces)
    M = np.zeros((rows, cols), dtype=np.int64)
    if not rows or not cols:
        return M
    so = np.cumsum([0] + [P.dim for P in src_pieces])
    to = np.cumsum([0] + [P.dim for P in tgt_pieces])
    for (j, jp), f in entries.items():
        if src_pieces[j].dim and tgt_pieces[jp].dim:
            M[so[j]:so[j + 1], to[jp]:to[jp + 1]] = multiplication_matrix(src_pieces[j], tgt_pieces[jp], f)
    return M


def _entries(dcols):
    """{(row, col): poly} of a matrix given by columns."""
    out = {}
    for jp, col in enumerate(dcols):
        for (j, e), c in col.items():
            out.setdefault((j, jp), {})[e] = c
    return out


def ext_dim(i, M, N, degree, res=None):
    """dim_k Ext^i(M, N)_degree from the Hom complex, by linear algebra on graded pieces."""
    ring = M.ring
    degree = ring.as_degree(degree)
    res = _ensure_resolution(M, res, i + 1)
    p = ring.p

    def pieces(k):
        if k < 0 or k >= len(res.shifts):
            return []
        return [piece(N, ring.deg_add(degree, a)) for a in res.shifts[k]]

    Ci = pieces(i)
    dimC = sum(P.dim for P in Ci)
    if not dimC:
        return 0
    r_out = 0
    if i + 1 <= res.length:
        r_out = mat_rank(_block(Ci, pieces(i + 1), _entries(res.d(i + 1))), p)
    r_in = 0
    if 1 <= i <= res.length:
        r_in = mat_rank(_block(pieces(i - 1), Ci, _entries(res.d(i))), p)
    return dimC - r_out - r_in


def tor_dim(i, M, N, degree, res=None):
    """dim_k Tor_i(M, N)_degree by linear algebra on (F_. (x) N)_degree."""
    ring = M.ring
    degree = ring.as_degree(degree)
    res = _ensure_resolution(M, res, i + 1)
    p = ring.p

    def pieces(k):
        if k < 0 or k >= len(res.shifts):
            return []
        return [piece(N, ring.deg_sub(degree, a)) for a in res.shifts[k]]

    Ci = pieces(i)
    dimC = sum(P.dim for P in Ci)
    if not dimC:
        return 0
    # d_i (x) 1 : block j -> l is multiplication by (d_i)_{l j}
    r_out = 0
    if 1 <= i <= res.length:
        ent = {(j, l): f for (l, j), f in _entries(res.d(i)).items()}
        r_out = mat_rank(_block(Ci, pieces(i - 1), ent), p)
    r_in = 0
    if i + 1 <= res.length:
        ent = {(j, l): f for (l, j), f in _entries(res.d(i + 1)).items()}
        r_in = mat_rank(_block(pieces(i + 1), Ci, ent), p)
    return dimC - r_out - r_in


def _memo(res, kind, i, N, compute):
    key = (kind, i, id(N))
    hit = res.memo.get(key)
    if hit is None or hit[0] is not N:
        hit = (N, compute())
        res.memo[key] = hit
    return hit[1]


def ext_is_zero(i, M, N, res=None):
    ring = M.ring
    res = _ensure_resolution(M, res, i + 1)
    if i >= len(res.shifts):
        return True

    def compute():
        supp = finite_support(N)
        if supp is not None:
            degs = {ring.deg_sub(s, a) for s in supp for a in res.shifts[i]}
            return all(ext_dim(i, M, N, d, res) == 0 for d in degs)
        return homology_is_zero(ring, *_ext_data(i, res, N))
    return _memo(res, "ext", i, N, compute)


def _tor_data(i, res, N):
    ring = res.ring
    Fi = res.shifts[i]
    P_shifts, P_rels = _tensor_free(ring, Fi, N)
    if 1 <= i <= res.length:
        Q_shifts, Q_rels = _tensor_free(ring, res.shifts[i - 1], N)
        out = _tensor_map_images(res.d(i), N)
    else:
        Q_shifts, Q_rels, out = [], [], None
    ins = _tensor_map_images(res.d(i + 1), N) if i + 1 <= res.length else []
    return P_shifts, P_rels, out, Q_shifts, Q_rels, ins


def tor(i, M, N, res=None):
    """Tor_i^R(M, N) as a presented graded module."""
    ring = M.ring
    res = _ensure_resolution(M, res, i + 1)
    if i >= len(res.shifts):
        return SubquotientModule(ring, [], [], [], [], [])
    return homology(ring, *_tor_data(i, res, N))


def tor_is_zero(i, M, N, res=None):
    ring = M.ring
    res = _ensure_resolution(M, res, i + 1)
    if i >= len(res.shifts):
        return True

    def compute():
        supp = finite_support(N)
        if supp is not None:
            degs = {ring.deg_add(s, a) for s in supp for a in res.shifts[i]}
            return all(tor_dim(i, M, N, d, res) == 0 for d in degs)
        return homology_is_zero(ring, *_tor_data(i, res, N))
    return _memo(res, "tor", i, N, compute)


def hom_module(M, N):
    """Hom_R(M, N) as the kernel of Hom(F_0, N) -> Hom(F_1, N)."""
    ring = M.ring
    P = M.pruned()
    P_shifts, P_rels = _hom_free(ring, P.shifts, N)
    if P.columns:
        Q_shifts, Q_rels = _hom_free(ring, P.col_degrees, N)
        out = _hom_map_images(P.rank, P.columns, N)
    else:
        Q_shifts, Q_rels, out = [], [], None
    H = homology(ring, P_shifts, P_rels, out, Q_shifts, Q_rels, [])
    H.source_presentation = P
    return H


def tensor_module(M, N):
    return M.tensor(N)


# -- invariants -------------------------------------------------------------------------

def pd(M, cap=None, res=None):
    """Projective dimension as an ExtendedNat."""
    res = res or free_resolution(M, cap)
    if res.complete:
        return ExtendedNat.finite(res.length, route="resolution terminated", betti=res.betti)
    if res.periodicity:
        return ExtendedNat.infinite(kind="periodicity", **res.periodicity)
    return ExtendedNat.at_least(res.length, route="cap reached", cap=res.cap)


def _sup_nonvanishing(res, is_zero):
    """sup{i : is_zero(i) is False} with the ExtendedNat semantics of e_R."""
    if res.complete:
        rho = res.length
        for i in range(rho, -1, -1):
            if not is_zero(i):
                return ExtendedNat.finite(i, route="finite pd", pd=rho)
        return ExtendedNat.neg_infinite(route="all vanish", pd=rho)
    if res.periodicity:
        k0 = res.periodicity["start"]
        nonzero = [i for i in (k0, k0 + 1) if not is_zero(i)]
        if nonzero:
            return ExtendedNat.infinite(kind="periodicity", nonzero_at=nonzero, **res.periodicity)
        for i in range(k0 - 1, -1, -1):
            if not is_zero(i):
                return ExtendedNat.finite(i, route="periodic vanishing", **res.periodicity)
        return ExtendedNat.neg_infinite(route="periodic vanishing", **res.periodicity)
    found = [i for i in range(res.length) if not is_zero(i)]
    top = max(found) if found else -1
    return ExtendedNat.at_least(top, route="cap reached", cap=res.length - 1, nonzero_at=found)


def nonvanishing_profile(res, is_zero):
    """(indices i with nonzero value inside the checked range, exactness label)."""
    if res.complete:
        return [i for i in range(res.length + 1) if not is_zero(i)], "exact"
    if res.periodicity:
        k0 = res.periodicity["start"]
        found = [i for i in range(k0 + 2) if not is_zero(i)]
        if any(i >= k0 for i in found):
            return found, "infinite"
        return found, "exact"
    return [i for i in range(res.length) if not is_zero(i)], "to_cap"


def e_sup(M, N, cap=None, res=None):
    """e_R(M, N) = sup{i : Ext^i(M, N) != 0}."""
    res = res or free_resolution(M, cap)
    return _sup_nonvanishing(res, lambda i: ext_is_zero(i, M, N, res))


def tor_sup(M, N, cap=None, res=None):
    """sup{i : Tor_i(M, N) != 0}, same semantics as e_sup."""
    res = res or free_resolution(M, cap)
    return _sup_nonvanishing(res, lambda i: tor_is_zero(i, M, N, res))
