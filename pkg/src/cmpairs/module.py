"""Finitely presented graded modules and homogeneous maps between them."""
from .errors import InhomogeneousColumn, ShapeMismatch
from .groebner import (Ideal, krull_dimension, module_gb, nf_vector, syzygies,
                       vector_degree)
from .pieces import hilbert_dim, piece
from .poly import pscale, vpoly


class GradedModule:
    """coker(columns) for columns in the graded free module with generator degrees ``shifts``.

    Columns are vectors ``{(row, exp): coeff}`` in normal form mod J; zero
    columns are never stored.
    """

    def __init__(self, ring, shifts, columns=(), col_degrees=None):
        self.ring = ring
        self.shifts = [tuple(s) for s in shifts]
        cols, degs = [], []
        given = list(col_degrees) if col_degrees is not None else None
        for k, c in enumerate(columns):
            c = nf_vector(ring, c)
            if not c:
                continue
            d = vector_degree(ring, self.shifts, c)
            if d is None:
                raise InhomogeneousColumn(f"column {k} is not homogeneous")
            if given is not None and given[k] != d:
                raise InhomogeneousColumn(f"column {k} has degree {d}, declared {given[k]}")
            cols.append(c)
            degs.append(d)
        self.columns = cols
        self.col_degrees = degs
        self._pieces = {}
        self._cache = {}

    # -- constructors --------------------------------------------------------
    @classmethod
    def free(cls, ring, shifts=None, rank=None):
        if shifts is None:
            shifts = [ring.zero_degree] * (rank or 1)
        return cls(ring, shifts, [])

    @classmethod
    def cyclic(cls, ring, ideal, shift=None):
        """R/I, generated in degree ``shift`` (default 0)."""
        shift = shift or ring.zero_degree
        cols = [{(0, e): c for e, c in f.items()} for f in ideal.generators]
        return cls(ring, [shift], cols)

    # -- basic data ----------------------------------------------------------
    @property
    def rank(self):
        return len(self.shifts)

    @property
    def num_relations(self):
        return len(self.columns)

    def hilbert_dim(self, degree):
        return hilbert_dim(self, degree)

    def piece(self, degree):
        return piece(self, degree)

    def gb(self):
        g = self._cache.get("gb")
        if g is None:
            g = module_gb(self.ring, self.shifts, self.columns)
            self._cache["gb"] = g
        return g

    def gb_dim(self, degree):
        """dim of the degree piece counted from standard monomials of the GB."""
        ring = self.ring
        degree = ring.as_degree(degree)
        leads = self.gb().leads
        by = {}
        for c, e in leads:
            by.setdefault(c, []).append(e)
        count = 0
        for i, g in enumerate(self.shifts):
            ls = by.get(i, [])
            for e in ring.monomials_of_degree(ring.deg_sub(degree, g)):
                if not any(all(a <= b for a, b in zip(le, e)) for le in ls):
                    count += 1
        return count

    def pruned(self):
        """Minimal presentation (no unit entries), memoised. See ``prune``."""
        out = self._cache.get("pruned")
        if out is None:
            out = prune(self)
            self._cache["pruned"] = out
        return out[0]

    def prune_map(self):
        """(expressions of old generators in new ones, indices of surviving generators)."""
        self.pruned()
        return self._cache["pruned"][1], self._cache["pruned"][2]

    def is_zero(self):
        return self.pruned().rank == 0

    def is_free(self):
        return self.pruned().num_relations == 0

    def minimal_presentation(self):
        """Pruned module whose relation columns are also a minimal generating set."""
        out = self._cache.get("minpres")
        if out is None:
            P = self.pruned()
            from .groebner import minimal_generators
            cols = minimal_generators(self.ring, P.shifts, P.columns)
            out = GradedModule(self.ring, P.shifts, cols)
            self._cache["minpres"] = out
        return out

    def annihilator(self):
        a = self._cache.get("ann")
        if a is None:
            a = annihilator(self)
            self._cache["ann"] = a
        return a

    def dim(self):
        """Krull dimension of the module (-1 for the zero module)."""
        d = self._cache.get("dim")
        if d is None:
            if self.is_zero():
                d = -1
            else:
                d = krull_dimension(self.annihilator())
            self._cache["dim"] = d
        return d

    # -- constructions ---------------------------------------------------------
    def shift(self, d):
        """M(d): the piece of M(d) in degree e is M_{d+e}."""
        ring = self.ring
        d = ring.as_degree(d)
        return GradedModule(ring, [ring.deg_sub(s, d) for s in self.shifts], self.columns)

    def direct_sum(self, other):
        off = self.rank
        cols = list(self.columns) + [{(i + off, e): c for (i, e), c in col.items()}
                                     for col in other.columns]
        return GradedModule(self.ring, self.shifts + other.shifts, cols)

    def power(self, k):
        out = GradedModule(self.ring, [], [])
        for _ in range(k):
            out = out.direct_sum(self)
        return out

    def tensor(self, other):
        ring = self.ring
        r, s = self.rank, other.rank
        shifts = [ring.deg_add(a, b) for a in self.shifts for b in other.shifts]
        cols = []
        for col in self.columns:
            for k in range(s):
                cols.append({(i * s + k, e): c for (i, e), c in col.items()})
        for col in other.columns:
            for i in range(r):
                cols.append({(i * s + k, e): c for (k, e), c in col.items()})
        return GradedModule(ring, shifts, cols)

    def quotient_by_ideal(self, I):
        """M / I M."""
        cols = list(self.columns)
        for f in I.generators:
            for i in range(self.rank):
                cols.append({(i, e): c for e, c in f.items()})
        return GradedModule(self.ring, self.shifts, cols)

    def over_ambient(self):
        """The same module viewed over the polynomial ring S (restriction of scalars)."""
        ring = self.ring
        S = ring.ambient
        cols = list(self.columns)
        for f in ring.relations:
            for i in range(self.rank):
                cols.append({(i, e): c for e, c in f.items()})
        return GradedModule(S, self.shifts, cols)

    def over_ring(self, ring):
        """Reinterpret a presentation over another ring with the same variables."""
        return GradedModule(ring, self.shifts, self.columns)

    def matrix_rows(self):
        """Presentation matrix as a list of rows of polynomial dicts."""
        rows = [[{} for _ in self.columns] for _ in self.shifts]
        for j, col in enumerate(self.columns):
            for (i, e), c in col.items():
                rows[i][j][e] = c
        return rows

    def __repr__(self):
        return (f"GradedModule(rank={self.rank}, relations={self.num_relations}, "
                f"shifts={self.shifts})")


class ModuleMap:
    """Homogeneous map given by the images of source generators in the target's free module."""

    def __init__(self, source, target, images, degree=None):
        self.source = source
        self.target = target
        self.images = [nf_vector(source.ring, v) for v in images]
        self.degree = degree if degree is not None else source.ring.zero_degree
        if len(self.images) != source.rank:
            raise ShapeMismatch("one image per source generator required")

    def respects_presentations(self):
        """Each source relation maps into the target's relations (GB membership)."""
        ring = self.source.ring
        G = self.target.gb()
        for col in self.source.columns:
            img = {}
            for (i, e), c in col.items():
                for t, x in vpoly(self.images[i], {e: c}, ring.p).items():
                    img[t] = (img.get(t, 0) + x) % ring.p
            img = {t: x for t, x in img.items() if x}
            if not G.contains(img):
                return False
        return True


def make_module(ring, shifts=None, matrix=None):
    """Build coker(matrix) with generators in degrees ``shifts``.

    ``matrix`` is a list of rows; entries are polynomials (str, dict, int or
    Polynomial). Each column must be homogeneous.
    """
    matrix = matrix or []
    nrows = len(matrix)
    if shifts is None:
        shifts = [ring.zero_degree] * max(nrows, 1)
    shifts = [ring.as_degree(s) for s in shifts]
    if nrows and nrows != len(shifts):
        raise ShapeMismatch(f"{nrows} matrix rows but {len(shifts)} shifts")
    ncols = len(matrix[0]) if nrows else 0
    if any(len(row) != ncols for row in matrix):
        raise ShapeMismatch("ragged matrix rows")
    cols = []
    for j in range(ncols):
        col = {}
        for i in range(nrows):
            f = ring.nf(ring.as_terms(matrix[i][j]))
            if not ring.is_homogeneous(f):
                raise InhomogeneousColumn(f"entry ({i}, {j}) = {ring.format(f)} is not homogeneous")
            for e, c in f.items():
                col[(i, e)] = c
        if col and vector_degree(ring, shifts, col) is None:
            raise InhomogeneousColumn(f"column {j} is not homogeneous for the given shifts")
        cols.append(col)
    return GradedModule(ring, shifts, cols)


def prune(M):
    """Eliminate generators killed by relations with unit entries (graded Nakayama).

    Returns (pruned module, expressions, kept) where expressions[i] is the
    old generator i written as a vector in the new generators and kept[k] is
    the old index of new generator k.
    """
    ring = M.ring
    p = ring.p
    zero = (0,) * ring.n
    cols = [dict(c) for c in M.columns]
    exprs = [{(i, zero): 1} for i in range(M.rank)]
    alive = set(range(M.rank))
    while True:
        found = None
        for j, c in enumerate(cols):
            for (i, e), x in c.items():
                if e == zero:
                    found = (j, i, x)
                    break
            if found:
                break
        if not found:
            break
        j, i, u = found
        piv = cols.pop(j)
        uinv = pow(u, p - 2, p)
        # g_i = sub (a vector in the other generators)
        sub = {t: (-x * uinv) % p for t, x in piv.items() if t[0] != i}

        def substitute(v):
            rowi = {e: x for (r, e), x in v.items() if r == i}
            if not rowi:
                return v
            out = {t: x for t, x in v.items() if t[0] != i}
            for t, x in vpoly(sub, rowi, p).items():
                nv = (out.get(t, 0) + x) % p
                if nv:
                    out[t] = nv
                else:
                    out.pop(t, None)
            return nf_vector(ring, out)

        cols = [substitute(c) for c in cols]
        cols = [c for c in cols if c]
        exprs = [substitute(v) for v in exprs]
        alive.discard(i)
    order = sorted(alive)
    remap = {old: new for new, old in enumerate(order)}

    def rename(v):
        return {(remap[i], e): x for (i, e), x in v.items()}

    P = GradedModule(ring, [M.shifts[i] for i in order], [rename(c) for c in cols])
    return P, [rename(v) for v in exprs], order


def annihilator(M):
    """(0 :_R M), as the kernel of R -> M^r sending 1 to (g_1, ..., g_r)."""
    ring = M.ring
    r = M.rank
    if r == 0:
        return Ideal(ring, [1])
    shifts = []
    for a in range(r):
        for b in range(r):
            shifts.append(ring.deg_sub(M.shifts[b], M.shifts[a]))
    zero_e = (0,) * ring.n
    cols = [{(a * r + a, zero_e): 1 for a in range(r)}]
    degs = [ring.zero_degree]
    for a in range(r):
        for col, cd in zip(M.columns, M.col_degrees):
            cols.append({(a * r + i, e): c for (i, e), c in col.items()})
            degs.append(ring.deg_sub(cd, M.shifts[a]))
    syz, _ = syzygies(ring, shifts, cols, degs, minimal=False)
    gens = [{e: c for (j, e), c in s.items() if j == 0} for s in syz]
    return Ideal(ring, [g for g in gens if g])


def scale(v, c, p):
    return pscale(v, c, p)
