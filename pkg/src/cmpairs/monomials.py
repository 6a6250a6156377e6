"""Exponent-vector monomials and monomial orders.

Monomials are tuples of non-negative ints. Orders map a monomial to a flat
tuple of ints; comparing those tuples lexicographically is the order.
"""
from functools import lru_cache
from itertools import product


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


class MonomialOrder:
    """grevlex (weighted by the ring's grading weights) or lex.

    ``perm`` lists variable indices from largest to smallest variable.
    """

    __slots__ = ("kind", "perm", "weights", "_key")

    def __init__(self, kind, perm, weights):
        if kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("perm must be a permutation of the variables")
        self.kind = kind
        self.perm = tuple(perm)
        self.weights = tuple(weights)
        self._key = lru_cache(maxsize=None)(self._compute_key)

    def _compute_key(self, exp):
        e = [exp[i] for i in self.perm]
        if self.kind == "lex":
            return tuple(e)
        w = sum(wi * xi for wi, xi in zip(self.weights, exp))
        return (w,) + tuple(-x for x in reversed(e))

    def key(self, exp):
        return self._key(exp)

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.perm == other.perm and self.weights == other.weights)

    def __hash__(self):
        return hash((self.kind, self.perm, self.weights))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, perm={self.perm})"


@lru_cache(maxsize=None)
def monomials_of_weight(weights, total):
    """All exponent vectors e with sum(w_i e_i) == total."""
    n = len(weights)
    out = []

    def rec(i, left, acc):
        if i == n - 1:
            if left % weights[i] == 0:
                out.append(tuple(acc + [left // weights[i]]))
            return
        for k in range(left // weights[i] + 1):
            rec(i + 1, left - k * weights[i], acc + [k])

    if total < 0:
        return ()
    if n == 0:
        return ((),) if total == 0 else ()
    rec(0, total, [])
    return tuple(out)


def box(lo, hi):
    """All integer points of the box [lo, hi] (inclusive, componentwise)."""
    return product(*(range(a, b + 1) for a, b in zip(lo, hi)))
