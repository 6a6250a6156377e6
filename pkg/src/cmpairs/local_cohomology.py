"""Ordinary local cohomology: graded local duality for I = m, Cech complexes for monomial I.

Only dimension tables and the (finite) deficiency modules are materialized;
H^i_m(N) itself is Artinian and never built as a module.
"""
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .errors import NotFineGraded, NotMonomialIdeal
from .groebner import Ideal, as_ideal, radical_contains
from .homological import (ExtendedNat, _ensure_resolution, ext, ext_is_zero,
                          free_resolution, homology_is_zero)
from .linalg import rank as mat_rank
from .module import GradedModule
from .monomials import mono_mul
from .pieces import multiplication_matrix, piece


# -- deficiency modules --------------------------------------------------------------

@dataclass
class DeficiencyModule:
    """K^q(N) = Ext^{n-q}_S(N, S(-sigma)); its degree-d piece is dual to H^q_m(N)_{-d}."""

    q: int
    module: GradedModule
    ring: object

    @property
    def over_ring(self):
        return self.module.over_ring(self.ring)

    def hilbert_dim(self, degree):
        return self.module.hilbert_dim(degree)

    def lc_dim(self, degree):
        """dim_k H^q_m(N)_degree."""
        return self.module.hilbert_dim(self.ring.deg_neg(self.ring.as_degree(degree)))

    def is_zero(self):
        return self.module.is_zero()


def _ambient_resolution(N):
    cache = N._cache
    res = cache.get("ambient_res")
    if res is None:
        Ns = N.over_ambient()
        res = free_resolution(Ns, N.ring.n + 1)
        cache["ambient_res"] = res
    return res


def deficiency(q, N):
    ring = N.ring
    S = ring.ambient
    n = ring.n
    key = ("deficiency", q)
    if key in N._cache:
        return N._cache[key]
    if q < 0 or q > n:
        K = GradedModule(S, [], [])
    else:
        res = _ambient_resolution(N)
        K = ext(n - q, res.module, GradedModule.free(S, [ring.sigma]), res)
    out = DeficiencyModule(q, K, ring)
    N._cache[key] = out
    return out


def depth_via_deficiency(N):
    """depth_m N = min{q : K^q(N) != 0} (Infinite for the zero module)."""
    if N.is_zero():
        return ExtendedNat.infinite(route="zero module")
    for q in range(N.ring.n + 1):
        if not deficiency(q, N).is_zero():
            return ExtendedNat.finite(q, route="duality", witness_q=q)
    raise AssertionError("nonzero module with all deficiency modules zero")


def is_relative_cm_m(N):
    """N is Cohen-Macaulay w.r.t. m iff K^q(N) = 0 for every q != dim N."""
    d = N.dim()
    if d < 0:
        return False
    return all(deficiency(q, N).is_zero() for q in range(N.ring.n + 1) if q != d)


# -- grade -----------------------------------------------------------------------------

def grade_via_ext(J, N, cap=None):
    """min{i : Ext^i(R/J, N) != 0}; Infinite when N = JN."""
    ring = N.ring
    J = as_ideal(ring, J)
    if N.quotient_by_ideal(J).is_zero():
        return ExtendedNat.infinite(route="N = JN", torsion_witness="N/JN = 0")
    top = N.dim()
    RJ = GradedModule.cyclic(ring, J)
    res = free_resolution(RJ, max(top + 1, cap or 0))
    for i in range(top + 1):
        if not ext_is_zero(i, RJ, N, res):
            return ExtendedNat.finite(i, route="ext", witness=i)
    raise AssertionError("grade exceeded dim N")


def _koszul_data(ring, gens, degs, N, i):
    """Free presentation data of K_i(g; N) = sum over i-subsets T of N(-deg g_T)."""
    s = N.rank
    subsets = list(combinations(range(len(gens)), i))
    index = {T: k for k, T in enumerate(subsets)}
    shifts, rels = [], []
    for k, T in enumerate(subsets):
        dT = ring.zero_degree
        for t in T:
            dT = ring.deg_add(dT, degs[t])
        shifts.extend(ring.deg_add(b, dT) for b in N.shifts)
        for col in N.columns:
            rels.append({(k * s + r, e): c for (r, e), c in col.items()})
    return subsets, index, shifts, rels


def _koszul_images(ring, gens, subsets, tgt_index, N):
    """Images of generators (T, r) under the Koszul differential."""
    s = N.rank
    p = ring.p
    images = []
    for T in subsets:
        for r in range(s):
            v = {}
            for pos, t in enumerate(T):
                U = T[:pos] + T[pos + 1:]
                sign = 1 if pos % 2 == 0 else p - 1
                base = tgt_index[U] * s + r
                for e, c in gens[t].items():
                    key = (base, e)
                    v[key] = (v.get(key, 0) + sign * c) % p
            images.append({k: x for k, x in v.items() if x})
    return images


def koszul_homology_is_zero(gens, N, i):
    ring = N.ring
    g = len(gens)
    if i < 0 or i > g:
        return True
    degs = [ring.poly_degree(f) for f in gens]
    subs, idx, P_shifts, P_rels = _koszul_data(ring, gens, degs, N, i)
    if i >= 1:
        subs_o, idx_o, Q_shifts, Q_rels = _koszul_data(ring, gens, degs, N, i - 1)
        out = _koszul_images(ring, gens, subs, idx_o, N)
    else:
        Q_shifts, Q_rels, out = [], [], None
    if i + 1 <= g:
        subs_i, _, _, _ = _koszul_data(ring, gens, degs, N, i + 1)
        ins = _koszul_images(ring, gens, subs_i, idx, N)
    else:
        ins = []
    return homology_is_zero(ring, P_shifts, P_rels, out, Q_shifts, Q_rels, ins)


def koszul_grade(generators, N):
    """s - max{i : H_i(g; N) != 0}; Infinite when the Koszul complex is exact."""
    ring = N.ring
    gens = [ring.nf(ring.as_terms(f)) for f in generators]
    gens = [f for f in gens if f]
    s = len(gens)
    for i in range(s, -1, -1):
        if not koszul_homology_is_zero(gens, N, i):
            return ExtendedNat.finite(s - i, route="koszul", top_homology=i)
    return ExtendedNat.infinite(route="koszul exact", torsion_witness="N = (g)N")


# -- Cech complexes ---------------------------------------------------------------------

@dataclass
class CohomologyTable:
    """dims[(i, d)] of H^i_I(N)_d over a box; status 'exact' or 'box_limited' per cell."""

    dims: dict = field(default_factory=dict)
    status: dict = field(default_factory=dict)
    box: tuple = None

    def nonzero(self, i=None):
        return sorted(k for k, v in self.dims.items() if v and (i is None or k[0] == i))

    def get(self, i, d):
        return self.dims.get((i, tuple(d)), 0)


@dataclass
class CdResult:
    value: ExtendedNat
    certificate: dict = field(default_factory=dict)

    def to_json(self):
        from .homological import _jsonable
        return {"value": self.value.to_json(), "certificate": _jsonable(self.certificate)}

    def __str__(self):
        return str(self.value)


def _require_fine_monomial(I, N):
    ring = N.ring
    if not ring.fine:
        raise NotFineGraded("Cech cohomology needs the fine Z^n grading")
    if not I.is_monomial():
        raise NotMonomialIdeal(f"{I} is not a monomial ideal")
    return I.monomial_generators()


def default_box(N, pad=None):
    """Componentwise span of generator and relation degrees of N, padded by n + 2."""
    ring = N.ring
    pad = ring.n + 2 if pad is None else pad
    degs = list(N.shifts) + list(N.col_degrees) or [ring.zero_degree]
    lo = tuple(min(d[k] for d in degs) - pad for k in range(len(degs[0])))
    hi = tuple(max(d[k] for d in degs) + pad for k in range(len(degs[0])))
    return lo, hi


def _box_degrees(box):
    lo, hi = box
    return [tuple(d) for d in product(*(range(a, b + 1) for a, b in zip(lo, hi)))]


class _Cech:
    """Degreewise Cech complex of N on monomials f_1..f_s."""

    MAX_STEPS = 64

    def __init__(self, N, exps):
        self.N = N
        self.ring = N.ring
        self.exps = exps
        s = len(exps)
        self.subsets = {j: list(combinations(range(s), j)) for j in range(s + 1)}
        ann = N.annihilator()
        self.vanish = {}
        for j in range(s + 1):
            for T in self.subsets[j]:
                f = self._fT(T)
                self.vanish[T] = radical_contains(ann, {f: 1})
        self.stable = {}

    def _fT(self, T):
        e = (0,) * self.ring.n
        for t in T:
            e = mono_mul(e, self.exps[t])
        return e

    def _stable_k(self, T, d):
        """Exponent k after which multiplication by f_T on N_{d + k deg f_T} is an isomorphism."""
        key = (T, d)
        if key in self.stable:
            return self.stable[key]
        f = self._fT(T)
        N, ring = self.N, self.ring
        if not T:
            self.stable[key] = 0
            return 0
        deg = ring.degree(f)

        def at(k):
            return piece(N, tuple(a + k * b for a, b in zip(d, deg)))

        def injective(k):
            A, B = at(k), at(k + 1)
            if A.dim == 0:
                return True
            return mat_rank(multiplication_matrix(A, B, {f: 1}), ring.p) == A.dim

        # beyond k0 multiplication by f is onto: the degree clears every generator in supp(f)
        k = 0
        for j, a in enumerate(deg):
            if a:
                top = max(g[j] for g in N.shifts)
                k = max(k, -((d[j] - top) // a))
        limit = k + self.MAX_STEPS
        while k < limit:
            if (at(k).dim == at(k + 1).dim == at(k + 2).dim and injective(k) and injective(k + 1)):
                assert at(k + 3).dim == at(k).dim, "localization did not stay stable"
                self.stable[key] = k
                return k
            k += 1
        raise RuntimeError(f"localization at {T} did not stabilise in degree {d}")

    def pieces(self, j, d, K):
        out = []
        for T in self.subsets.get(j, []):
            if self.vanish[T]:
                out.append(None)
                continue
            f = self._fT(T)
            deg = self.ring.degree(f)
            out.append((T, piece(self.N, tuple(a + K * b for a, b in zip(d, deg)))))
        return out

    def differential(self, j, d, K):
        """Matrix (rows = C^j_d basis) of C^j_d -> C^{j+1}_d at stabilisation exponent K."""
        src = self.pieces(j, d, K)
        tgt = self.pieces(j + 1, d, K)
        sd = [P[1].dim if P else 0 for P in src]
        td = [P[1].dim if P else 0 for P in tgt]
        M = np.zeros((sum(sd), sum(td)), dtype=np.int64)
        if not M.size:
            return M
        so = np.cumsum([0] + sd)
        to = np.cumsum([0] + td)
        p = self.ring.p
        tindex = {T: k for k, T in enumerate(self.subsets[j + 1])}
        for a, P in enumerate(src):
            if not P or not sd[a]:
                continue
            T, A = P
            for t in range(len(self.exps)):
                if t in T:
                    continue
                U = tuple(sorted(T + (t,)))
                b = tindex[U]
                Q = tgt[b]
                if not Q or not td[b]:
                    continue
                sign = 1 if U.index(t) % 2 == 0 else p - 1
                mult = tuple(K * x for x in self.exps[t])
                block = multiplication_matrix(A, Q[1], {mult: sign})
                M[so[a]:so[a + 1], to[b]:to[b + 1]] = block
        return M

    def dim(self, i, d):
        s = len(self.exps)
        if i < 0 or i > s:
            return 0
        K = 0
        for j in (i - 1, i, i + 1):
            for T in self.subsets.get(j, []):
                if not self.vanish[T]:
                    K = max(K, self._stable_k(T, d))
        Ci = sum(P[1].dim for P in self.pieces(i, d, K) if P)
        if not Ci:
            return 0
        r_out = mat_rank(self.differential(i, d, K), self.ring.p) if i < s else 0
        r_in = mat_rank(self.differential(i - 1, d, K), self.ring.p) if i > 0 else 0
        return Ci - r_out - r_in

    def top_nonvanishing(self):
        """Largest |T| with N_{f_T} != 0 (H^j = 0 beyond it)."""
        return max(len(T) for T, v in self.vanish.items() if not v)


def _cech(I, N):
    key = ("cech", tuple(sorted(I.monomial_generators())))
    c = N._cache.get(key)
    if c is None:
        c = _Cech(N, _require_fine_monomial(I, N))
        N._cache[key] = c
    return c


def cech_cohomology(I, N, i, box=None):
    """Table of dim H^i_I(N)_d for d in the box (fine grading, monomial I)."""
    I = as_ideal(N.ring, I)
    _require_fine_monomial(I, N)
    box = box or default_box(N)
    table = CohomologyTable(box=box)
    if N.is_zero():
        for d in _box_degrees(box):
            table.dims[(i, d)] = 0
            table.status[(i, d)] = "exact"
        return table
    C = _cech(I, N)
    for d in _box_degrees(box):
        table.dims[(i, d)] = C.dim(i, d)
        table.status[(i, d)] = "exact"
    return table


def cech_table(I, N, indices, box=None):
    table = CohomologyTable(box=box or default_box(N))
    for i in indices:
        t = cech_cohomology(I, N, i, table.box)
        table.dims.update(t.dims)
        table.status.update(t.status)
    return table


def duality_table(N, indices, box):
    """dim H^q_m(N)_d read off deficiency modules at -d."""
    table = CohomologyTable(box=box)
    for q in indices:
        K = deficiency(q, N)
        for d in _box_degrees(box):
            table.dims[(q, d)] = 0 if K.is_zero() else K.lc_dim(d)
            table.status[(q, d)] = "exact"
    return table


def cd_support(I, N, box=None):
    """cd_I N with a witness and an upper bound."""
    ring = N.ring
    I = as_ideal(ring, I)
    if N.is_zero():
        return CdResult(ExtendedNat.neg_infinite(route="zero module"), {"upper_bound": "zero module"})
    if I.is_unit():
        return CdResult(ExtendedNat.neg_infinite(route="unit ideal"), {"upper_bound": "unit ideal"})
    dimN = N.dim()
    if I.is_maximal_graded():
        for q in range(dimN, -1, -1):
            if not deficiency(q, N).is_zero():
                cert = {"witness": {"i": q, "source": "deficiency"},
                        "upper_bound": {"source": "dimension", "value": dimN}}
                if q == dimN:
                    return CdResult(ExtendedNat.finite(q, **cert), cert)
                return CdResult(ExtendedNat.at_least(q, **cert), cert)
    C = _cech(I, N)
    bounds = {"dimension": dimN, "generator-count": len(C.exps),
              "localization": C.top_nonvanishing()}
    source = min(bounds, key=lambda k: bounds[k])
    bound = bounds[source]
    box = box or default_box(N)
    degs = _box_degrees(box)
    for i in range(bound, -1, -1):
        for d in degs:
            if C.dim(i, d):
                cert = {"witness": {"i": i, "degree": list(d)},
                        "upper_bound": {"source": source, "value": bound}}
                if i == bound:
                    return CdResult(ExtendedNat.finite(i, **cert), cert)
                cert["box_exhausted"] = {"box": [list(box[0]), list(box[1])]}
                return CdResult(ExtendedNat.at_least(i, **cert), cert)
    cert = {"upper_bound": {"source": source, "value": bound},
            "box_exhausted": {"box": [list(box[0]), list(box[1])]}}
    return CdResult(ExtendedNat.at_least(0, **cert), cert)


def depth_support(I, N):
    """depth_I N = grade of I on N."""
    return grade_via_ext(I, N)


def lc_dims(I, N, indices, box=None):
    """Dimension table of H^i_I(N) by the best available route."""
    I = as_ideal(N.ring, I)
    box = box or default_box(N)
    if I.is_maximal_graded():
        return duality_table(N, indices, box)
    return cech_table(I, N, indices, box)
