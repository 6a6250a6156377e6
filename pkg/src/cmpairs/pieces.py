"""Graded pieces of presented modules by plain linear algebra.

``Piece(M, d)`` builds the vector space M_d = F_d / (image of the
presentation + J*F)_d directly from monomial bases of the ambient
polynomial ring; no Groebner basis is involved. This is the independent
oracle for every graded-dimension claim in the package.
"""
import numpy as np

from .linalg import rref
from .monomials import mono_mul


class Piece:
    __slots__ = ("module", "degree", "basis", "index", "R", "pivots", "free", "dim", "p")

    def __init__(self, module, degree):
        ring = module.ring
        self.module = module
        self.degree = degree
        self.p = p = ring.p
        basis = []
        for i, g in enumerate(module.shifts):
            for e in ring.monomials_of_degree(ring.deg_sub(degree, g)):
                basis.append((i, e))
        self.basis = basis
        self.index = {t: k for k, t in enumerate(basis)}
        N = len(basis)
        rows = []
        if N:
            for col, cd in zip(module.columns, module.col_degrees):
                for e in ring.monomials_of_degree(ring.deg_sub(degree, cd)):
                    row = np.zeros(N, dtype=np.int64)
                    for (i, f), c in col.items():
                        row[self.index[(i, mono_mul(f, e))]] += c
                    rows.append(row % p)
            for rel in ring.relations:
                rd = ring.degree(next(iter(rel)))
                for i, g in enumerate(module.shifts):
                    for e in ring.monomials_of_degree(ring.deg_sub(degree, ring.deg_add(g, rd))):
                        row = np.zeros(N, dtype=np.int64)
                        for f, c in rel.items():
                            row[self.index[(i, mono_mul(f, e))]] += c
                        rows.append(row % p)
        if rows:
            self.R, self.pivots = rref(np.vstack(rows), p)
        else:
            self.R, self.pivots = np.zeros((0, N), dtype=np.int64), []
        ps = set(self.pivots)
        self.free = [k for k in range(N) if k not in ps]
        self.dim = len(self.free)

    def coords(self, vectors):
        """Quotient coordinates (rows) of F_d-vectors given as {(i, exp): c} dicts."""
        N = len(self.basis)
        V = np.zeros((len(vectors), N), dtype=np.int64)
        for k, v in enumerate(vectors):
            for t, c in v.items():
                V[k, self.index[t]] += c
        return self.reduce_rows(V)

    def reduce_rows(self, V):
        V %= self.p
        if self.pivots:
            V = (V - V[:, self.pivots] @ self.R) % self.p
        return V[:, self.free]

    def basis_vectors(self):
        """Representatives in F_d of the quotient basis."""
        return [{self.basis[k]: 1} for k in self.free]


def piece(module, degree):
    cache = module._pieces
    P = cache.get(degree)
    if P is None:
        P = Piece(module, degree)
        cache[degree] = P
    return P


def multiplication_matrix(src, dst, f):
    """Matrix (rows = src basis) of multiplication by the polynomial f: M_d -> M_d'."""
    reps = src.basis_vectors()
    images = []
    for v in reps:
        ((i, e), c), = v.items()
        images.append({(i, mono_mul(e, fe)): (c * fc) % src.p for fe, fc in f.items()})
    if not images:
        return np.zeros((0, dst.dim), dtype=np.int64)
    return dst.coords(images)


def hilbert_dim(module, degree):
    """dim_k of the degree piece of a presented module (linear-algebra oracle)."""
    degree = module.ring.as_degree(degree)
    return piece(module, degree).dim
