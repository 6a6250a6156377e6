"""Dense row reduction over GF(p) on int64 numpy arrays (p < 2^31)."""
import numpy as np


def as_matrix(rows, ncols, p):
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), ncols) % p


def rref(M, p):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    A = np.array(M, dtype=np.int64, copy=True) % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        piv = int(A[r, c])
        if piv != 1:
            A[r] = (A[r] * pow(piv, p - 2, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, p):
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M, p):
    """Rows spanning {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = rref(M, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            out[k, c] = (-R[i, f]) % p
    return out


def matmul(A, B, p):
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    return (A @ B) % p


class Echelon:
    """Incrementally maintained reduced echelon basis of a subspace of GF(p)^n."""

    def __init__(self, n, p):
        self.n = n
        self.p = p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots = []

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, V):
        """Reduce the rows of V against the basis."""
        V = np.atleast_2d(np.asarray(V, dtype=np.int64)) % self.p
        if self.pivots:
            V = (V - V[:, self.pivots] @ self.rows) % self.p
        return V

    def contains(self, v):
        return not self.reduce(v).any()

    def add(self, V):
        """Add the rows of V; returns the indices of rows that enlarged the span."""
        V = self.reduce(V)
        new = []
        for k in range(V.shape[0]):
            v = V[k]
            if self.pivots:
                v = (v - v[self.pivots] @ self.rows) % self.p
            nz = np.flatnonzero(v)
            if nz.size == 0:
                continue
            c = int(nz[0])
            v = (v * pow(int(v[c]), self.p - 2, self.p)) % self.p
            # keep the basis fully reduced
            if self.pivots:
                col = self.rows[:, c].copy()
                nzr = np.flatnonzero(col)
                if nzr.size:
                    self.rows[nzr] = (self.rows[nzr] - np.outer(col[nzr], v)) % self.p
            self.rows = np.vstack([self.rows, v[None, :]])
            self.pivots.append(c)
            new.append(k)
        return new
