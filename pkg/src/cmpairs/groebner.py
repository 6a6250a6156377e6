"""Groebner bases for submodules of graded free modules over R = S/J.

Everything is computed over the polynomial ring S with the basis of J
adjoined to every component ("background" elements), using a homogeneous
Buchberger algorithm with normal selection, the Gebauer-Moeller chain
criterion, and the product criterion where it is valid for modules (one
element of the pair a background element f*e_i).

Module terms are pairs ``(component, exp)``; the module order is
position-over-term with component 0 largest, so lower components are
eliminated first.
"""
import heapq
from itertools import combinations

from .errors import RankMismatch, UnitIdeal
from .monomials import coprime, divides, mono_div, mono_lcm, mono_mul
from .poly import pscale, vpoly

BACKGROUND, COMPUTED, INPUT = 0, 1, 2


class Reducer:
    """Reduction of vectors by a fixed list of monic vectors."""

    def __init__(self, ring):
        self.ring = ring
        self.p = ring.p
        self.okey = ring.order.key
        self.elems = []
        self.leads = []
        self.by_comp = {}
        self._nk = {}

    def tkey(self, t):
        return (-t[0],) + self.okey(t[1])

    def nkey(self, t):
        k = self._nk.get(t)
        if k is None:
            k = (t[0],) + tuple(-x for x in self.okey(t[1]))
            self._nk[t] = k
        return k

    def lead(self, v):
        return max(v, key=self.tkey)

    def _append(self, v, lead):
        idx = len(self.elems)
        self.elems.append(v)
        self.leads.append(lead)
        self.by_comp.setdefault(lead[0], []).append(idx)
        return idx

    def find_divisor(self, t, skip=None):
        comp, e = t
        for i in self.by_comp.get(comp, ()):
            if i != skip and divides(self.leads[i][1], e):
                return i
        return None

    def reduce(self, v, skip=None, top_only=False):
        """Full (or top) reduction; returns the remainder."""
        p = self.p
        v = dict(v)
        heap = [(self.nkey(t), t) for t in v]
        heapq.heapify(heap)
        rem = {}
        nkey = self.nkey
        while heap:
            _, t = heapq.heappop(heap)
            c = v.get(t)
            if c is None:
                continue
            i = self.find_divisor(t, skip)
            if i is None:
                if top_only:
                    rem.update(v)
                    return rem
                rem[t] = c
                del v[t]
                continue
            g = self.elems[i]
            q = mono_div(t[1], self.leads[i][1])
            coef = p - c
            for (r, e), x in g.items():
                k = (r, mono_mul(e, q))
                old = v.get(k)
                if old is None:
                    nv = (coef * x) % p
                    if nv:
                        v[k] = nv
                        heapq.heappush(heap, (nkey(k), k))
                else:
                    nv = (old + coef * x) % p
                    if nv:
                        v[k] = nv
                    else:
                        del v[k]
        return rem


class _Buchberger(Reducer):
    def __init__(self, ring, shifts, background=True):
        super().__init__(ring)
        self.shifts = list(shifts)
        self.stot = [ring.tdeg(s) for s in self.shifts]
        self.kinds = []
        self.pairs = {}
        self.heap = []
        self.seq = 0
        if background and ring.relations:
            for c in range(len(self.shifts)):
                for f in ring.relation_gb:
                    v = {(c, e): x for e, x in f.items()}
                    self._add(v, BACKGROUND)

    def vtdeg(self, v):
        (c, e) = next(iter(v))
        return self.ring.total(e) + self.stot[c]

    def _add(self, v, kind):
        lead = self.lead(v)
        inv = pow(v[lead], self.p - 2, self.p)
        if inv != 1:
            v = {t: (x * inv) % self.p for t, x in v.items()}
        idx = self._append(v, lead)
        self.kinds.append(kind)
        self._update_pairs(idx)
        return idx

    def _update_pairs(self, k):
        comp, m = self.leads[k]
        kind_k = self.kinds[k]
        cpairs = self.pairs.setdefault(comp, {})
        for (i, j), L in list(cpairs.items()):
            if divides(m, L):
                if (mono_lcm(self.leads[i][1], m) != L
                        and mono_lcm(self.leads[j][1], m) != L):
                    del cpairs[(i, j)]
        new = []
        for i in self.by_comp.get(comp, ()):
            if i == k:
                continue
            if kind_k == BACKGROUND and self.kinds[i] == BACKGROUND:
                continue
            mi = self.leads[i][1]
            L = mono_lcm(mi, m)
            prod = ((kind_k == BACKGROUND or self.kinds[i] == BACKGROUND)
                    and coprime(mi, m))
            new.append((L, i, prod))
        # criterion M: drop pairs whose lcm is properly divisible by another new lcm
        lcms = {L for L, _, _ in new}
        minimal = {L for L in lcms
                   if not any(L2 != L and divides(L2, L) for L2 in lcms)}
        groups = {}
        for L, i, prod in new:
            if L in minimal:
                groups.setdefault(L, []).append((i, prod))
        for L, members in groups.items():
            if any(prod for _, prod in members):
                continue
            i = members[0][0]
            cpairs[(i, k)] = L
            td = self.ring.total(L) + self.stot[comp]
            self.seq += 1
            heapq.heappush(self.heap, (td, self.seq, comp, i, k))

    def _spoly(self, i, j, L):
        p = self.p
        gi, gj = self.elems[i], self.elems[j]
        qi = mono_div(L, self.leads[i][1])
        qj = mono_div(L, self.leads[j][1])
        out = {}
        for (r, e), x in gi.items():
            out[(r, mono_mul(e, qi))] = x
        for (r, e), x in gj.items():
            k = (r, mono_mul(e, qj))
            nv = (out.get(k, 0) - x) % p
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return out

    def run(self, inputs):
        """Complete the basis; returns indices (into ``inputs``) that were not redundant."""
        pending = sorted(((self.vtdeg(v), n) for n, v in enumerate(inputs) if v))
        pos = 0
        kept = []
        while self.heap or pos < len(pending):
            d_pair = self.heap[0][0] if self.heap else None
            d_in = pending[pos][0] if pos < len(pending) else None
            d = min(x for x in (d_pair, d_in) if x is not None)
            while self.heap and self.heap[0][0] == d:
                _, _, comp, i, j = heapq.heappop(self.heap)
                L = self.pairs.get(comp, {}).pop((i, j), None)
                if L is None:
                    continue
                r = self.reduce(self._spoly(i, j, L))
                if r:
                    self._add(r, COMPUTED)
            while pos < len(pending) and pending[pos][0] == d:
                n = pending[pos][1]
                pos += 1
                r = self.reduce(inputs[n])
                if r:
                    self._add(r, INPUT)
                    kept.append(n)
        return kept

    def reduced(self):
        """Indices and tail-reduced vectors of the reduced Groebner basis."""
        keep = []
        for i, (c, m) in enumerate(self.leads):
            redundant = False
            for j in self.by_comp[c]:
                if j == i:
                    continue
                mj = self.leads[j][1]
                if divides(mj, m) and (mj != m or j < i):
                    redundant = True
                    break
            if not redundant:
                keep.append(i)
        red = Reducer(self.ring)
        for i in keep:
            red._append(self.elems[i], self.leads[i])
        out = []
        for pos, i in enumerate(keep):
            v = self.elems[i]
            lead = self.leads[i]
            tail = dict(v)
            del tail[lead]
            tail = red.reduce(tail, skip=pos)
            tail[lead] = v[lead]
            out.append((i, tail))
        return out


class GroebnerBasis:
    """Reduced Groebner basis of a submodule U + J*F of a graded free module F.

    ``elements`` are all basis vectors over S (including those coming from J);
    ``generators`` lists only those not already in J*F.
    """

    def __init__(self, ring, shifts, elements, kinds=None):
        self.ring = ring
        self.shifts = list(shifts)
        self.rank = len(self.shifts)
        self.elements = elements
        self._red = Reducer(ring)
        for v in elements:
            self._red._append(v, self._red.lead(v))
        self.kinds = kinds or [COMPUTED] * len(elements)

    @property
    def leads(self):
        return self._red.leads

    @property
    def order(self):
        return self.ring.order

    @property
    def generators(self):
        if not self.ring.relations:
            return list(self.elements)
        out = []
        for v in self.elements:
            if any(self.ring.nf(f) for f in _rows(v).values()):
                out.append(v)
        return out

    @property
    def polys(self):
        """Generators as polynomials (rank-1 bases only)."""
        return [{e: c for (_, e), c in v.items()} for v in self.generators]

    def normal_form(self, v):
        v = _as_vector(self.ring, v)
        for (i, _) in v:
            if i >= self.rank:
                raise RankMismatch(f"component {i} outside rank {self.rank}")
        return self._red.reduce(v)

    def contains(self, v):
        return not self.normal_form(v)

    def lead_terms(self):
        return list(self._red.leads)

    def is_unit_ideal(self):
        zero = (0,) * self.ring.n
        return any(t[1] == zero for t in self._red.leads)

    def check_buchberger(self):
        """True iff every S-pair of the basis reduces to zero."""
        eng = _Buchberger(self.ring, self.shifts, background=False)
        for v in self.elements:
            eng._append(v, eng.lead(v))
            eng.kinds.append(COMPUTED)
        for i, j in combinations(range(len(self.elements)), 2):
            (ci, mi), (cj, mj) = eng.leads[i], eng.leads[j]
            if ci != cj:
                continue
            if eng.reduce(eng._spoly(i, j, mono_lcm(mi, mj))):
                return False
        return True

    def is_autoreduced(self):
        L = self._red.leads
        for i, (ci, mi) in enumerate(L):
            for j, (cj, mj) in enumerate(L):
                if i != j and ci == cj and divides(mj, mi):
                    return False
        return True

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis(rank={self.rank}, size={len(self.elements)})"


def _rows(v):
    rows = {}
    for (i, e), c in v.items():
        rows.setdefault(i, {})[e] = c
    return rows


def is_vector(d):
    if not d:
        return True
    k = next(iter(d))
    return len(k) == 2 and isinstance(k[1], tuple)


def _as_vector(ring, v):
    """Accept a vector dict, or a polynomial (str/dict/Polynomial) as rank-1 vector."""
    if isinstance(v, dict) and is_vector(v):
        return dict(v)
    f = ring.as_terms(v)
    return {(0, e): c for e, c in f.items()}


def leading_exp(ring, f):
    return max(f, key=ring.order.key)


def ideal_gb_in_ambient(ring, polys):
    """Reduced GB over S (ignoring J) of homogeneous polynomials."""
    S = ring.ambient
    eng = _Buchberger(S, [S.zero_degree], background=False)
    eng.run([{(0, e): c for e, c in f.items()} for f in polys if f])
    return [{e: c for (_, e), c in v.items()} for _, v in eng.reduced()]


def reduce_poly(ring, f, gb):
    red = Reducer(ring.ambient)
    for g in gb:
        v = {(0, e): c for e, c in g.items()}
        red._append(v, red.lead(v))
    r = red.reduce({(0, e): c for e, c in f.items()})
    return {e: c for (_, e), c in r.items()}


def vector_degree(ring, shifts, v):
    degs = {ring.deg_add(shifts[i], ring.degree(e)) for (i, e) in v}
    if len(degs) > 1:
        return None
    return degs.pop() if degs else None


def module_gb(ring, shifts, vectors):
    from . import cache
    store = cache.active()
    vectors = [v for v in vectors if v]
    if store is not None:
        key = cache.gb_key(ring, shifts, vectors)
        data = store.get(key)
        if data is not None:
            G = cache.gb_from_json(ring, shifts, data)
            if G is not None:
                return G
    eng = _Buchberger(ring, shifts)
    eng.run(vectors)
    red = eng.reduced()
    G = GroebnerBasis(ring, shifts, [v for _, v in red], [eng.kinds[i] for i, _ in red])
    if store is not None:
        store.put(key, cache.gb_to_json(G))
    return G


def groebner_basis(generators, ring, shifts=None):
    """Reduced Groebner basis over R of an ideal (polynomials) or submodule (vectors).

    ``shifts`` gives the generator degrees of the ambient free module
    (default: rank 1 in degree 0).
    """
    vecs = [_as_vector(ring, g) for g in generators]
    if shifts is None:
        rank = 1 + max((i for v in vecs for (i, _) in v), default=0)
        shifts = [ring.zero_degree] * rank
    vecs = [nf_vector(ring, v) for v in vecs]
    return module_gb(ring, shifts, vecs)


def normal_form(element, basis):
    return basis.normal_form(element)


def nf_vector(ring, v):
    """Reduce every entry of v modulo J."""
    if not ring.relations:
        return dict(v)
    out = {}
    for i, f in _rows(v).items():
        for e, c in ring.nf(f).items():
            out[(i, e)] = c
    return out


def minimal_generators(ring, shifts, vectors):
    """A minimal homogeneous generating subset of the R-module spanned by vectors."""
    vecs = [nf_vector(ring, v) for v in vectors]
    eng = _Buchberger(ring, shifts)
    kept = eng.run(vecs)
    return [vecs[n] for n in sorted(kept, key=lambda n: (eng.vtdeg(vecs[n]), n))]


def syzygies(ring, row_shifts, columns, col_degrees=None, minimal=True):
    """Generators of {c in R^m : sum c_j columns_j = 0 in R^r}.

    Returns (syzygy vectors in R^m, their degrees). Homogeneous input required.
    """
    r = len(row_shifts)
    m = len(columns)
    if col_degrees is None:
        col_degrees = [vector_degree(ring, row_shifts, c) for c in columns]
    shifts = list(row_shifts) + list(col_degrees)
    inputs = []
    for j, c in enumerate(columns):
        v = nf_vector(ring, c)
        v[(r + j, (0,) * ring.n)] = 1
        inputs.append(v)
    eng = _Buchberger(ring, shifts)
    eng.run(inputs)
    syz = []
    for i, (comp, _) in enumerate(eng.leads):
        if comp < r:
            continue
        v = {(c - r, e): x for (c, e), x in eng.elems[i].items()}
        v = nf_vector(ring, v)
        if v:
            syz.append(v)
    if minimal:
        syz = minimal_generators(ring, col_degrees, syz)
    return syz, [vector_degree(ring, col_degrees, v) for v in syz]


# -- ideals --------------------------------------------------------------------

class Ideal:
    """Homogeneous ideal of R given by generators (normal forms mod J)."""

    def __init__(self, ring, generators):
        self.ring = ring
        gens = []
        for g in generators:
            f = ring.nf(ring.as_terms(g))
            if f:
                ring.poly_degree(f)
                gens.append(f)
        self.generators = gens

    @classmethod
    def maximal(cls, ring):
        return cls(ring, [{tuple(1 if k == i else 0 for k in range(ring.n)): 1}
                          for i in range(ring.n)])

    def _cache_key(self):
        return tuple(sorted(tuple(sorted(f.items())) for f in self.generators))

    @property
    def gb(self):
        g = getattr(self, "_gb", None)
        if g is None:
            g = groebner_basis(self.generators, self.ring, [self.ring.zero_degree])
            self._gb = g
        return g

    def contains(self, f):
        return self.gb.contains(self.ring.nf(self.ring.as_terms(f)))

    def is_unit(self):
        return self.gb.is_unit_ideal()

    def is_zero(self):
        return not self.generators

    def is_monomial(self):
        return all(len(f) == 1 for f in self.generators)

    def is_maximal_graded(self):
        """True when the ideal equals the irrelevant ideal (x_1, ..., x_n) of R."""
        n = self.ring.n
        for i in range(n):
            e = tuple(1 if k == i else 0 for k in range(n))
            if not self.contains({e: 1}):
                return False
        return not self.is_unit()

    def minimal_generators(self):
        vecs = minimal_generators(self.ring, [self.ring.zero_degree],
                                  [{(0, e): c for e, c in f.items()} for f in self.generators])
        return [{e: c for (_, e), c in v.items()} for v in vecs]

    def monomial_generators(self):
        """Minimal generating monomials (exps); requires a monomial ideal."""
        from .errors import NotMonomialIdeal
        gens = self.minimal_generators()
        if any(len(f) != 1 for f in gens):
            raise NotMonomialIdeal(f"{self} is not a monomial ideal")
        return [next(iter(f)) for f in gens]

    def equals(self, other):
        return all(other.contains(f) for f in self.generators) and \
            all(self.contains(f) for f in other.generators)

    def __add__(self, other):
        return Ideal(self.ring, self.generators + other.generators)

    def power(self, k):
        if k == 0:
            return Ideal(self.ring, [1])
        out = [dict(f) for f in self.generators]
        for _ in range(k - 1):
            from .poly import pmul
            out = [pmul(a, b, self.ring.p) for a in out for b in self.generators]
        return Ideal(self.ring, out)

    def __repr__(self):
        return "(" + ", ".join(self.ring.format(f) for f in self.generators) + ")"

    __str__ = __repr__


def as_ideal(ring, I):
    if isinstance(I, Ideal):
        return I
    return Ideal(ring, list(I))


def ideal_quotient(A, B):
    """(A : B) = {r : r*b in A for all b in B}; A an Ideal, B a list of polynomials.

    Computed as the kernel of R -> (R/A)^|B|, 1 -> (b_1, ..., b_k).
    """
    ring = A.ring
    B = [ring.nf(ring.as_terms(b)) for b in B]
    B = [b for b in B if b]
    if not B:
        return Ideal(ring, [1])
    k = len(B)
    zero = ring.zero_degree
    dB = [ring.poly_degree(b) for b in B]
    # free module R^k with component i shifted by -deg(b_i)'s opposite so 1 -> b is degree 0
    shifts = [ring.deg_neg(d) for d in dB]
    cols = [{(i, e): c for i, b in enumerate(B) for e, c in b.items()}]
    degs = [zero]
    for i in range(k):
        for a in A.generators:
            cols.append({(i, e): c for e, c in a.items()})
            degs.append(ring.deg_add(shifts[i], ring.poly_degree(a)))
    syz, _ = syzygies(ring, shifts, cols, degs, minimal=False)
    gens = [{e: c for (j, e), c in s.items() if j == 0} for s in syz]
    return Ideal(ring, [g for g in gens if g])


def saturation(A, f):
    """(A : f^infinity) by iterated quotients until the chain stabilises."""
    cur = A
    while True:
        nxt = ideal_quotient(cur, [f])
        if nxt.equals(cur):
            return cur
        cur = nxt


def radical_contains(A, f):
    """True iff f lies in the radical of A, decided by (A : f^inf) == R."""
    ring = A.ring
    f = ring.nf(ring.as_terms(f))
    if not f:
        return True
    if A.is_unit():
        return True
    return saturation(A, f).is_unit()


def dimension_from_leads(n, leads):
    """dim S/I from the leading monomials of a GB of I (max independent set)."""
    zero = (0,) * n
    if any(e == zero for e in leads):
        return -1
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in leads]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            Us = set(U)
            if all(not s <= Us for s in supports):
                return size
    return 0


def krull_dimension(J):
    """Krull dimension of R/J; raises UnitIdeal when J = R."""
    ring = J.ring
    gens = list(J.generators) + list(ring.relations)
    gb = ideal_gb_in_ambient(ring, gens)
    leads = [leading_exp(ring, g) for g in gb]
    d = dimension_from_leads(ring.n, leads)
    if d < 0:
        raise UnitIdeal(f"{J} is the unit ideal")
    return d


def scale_vector(v, c, p):
    return pscale(v, c, p)


def multiply_vector(v, f, p):
    return vpoly(v, f, p)
