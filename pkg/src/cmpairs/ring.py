"""Graded rings R = S/J over a prime field, and polynomials in them."""
from functools import cached_property

from .errors import (FineGradingNeedsMonomialRelations, GradingModeMismatch,
                     NonHomogeneousRelation)
from .expr import format_poly, parse_poly
from .field import DEFAULT_CHARACTERISTIC, PrimeField
from .monomials import MonomialOrder, divides, monomials_of_weight
from .poly import padd, pmul, pscale


class Ring:
    """A presentation S/J of a graded ring.

    ``weights is None`` selects the fine Z^n grading (J must be monomial);
    otherwise the ring carries the coarse Z grading with the given positive
    weights. Degrees are always tuples internally: length n in fine mode,
    length 1 in coarse mode.
    """

    def __init__(self, variables, field, order, relations, weights=None):
        self.variables = tuple(variables)
        self.n = len(self.variables)
        self.field = field
        self.p = field.p
        self.fine = weights is None
        self.weights = tuple(weights) if weights is not None else (1,) * self.n
        self.order = order
        self.relations = tuple(relations)
        self.monomial_relations = all(len(f) == 1 for f in self.relations)

    # -- grading -----------------------------------------------------------
    @property
    def grading(self):
        return "fine" if self.fine else "coarse"

    def degree(self, exp):
        if self.fine:
            return exp
        return (sum(w * e for w, e in zip(self.weights, exp)),)

    def total(self, exp):
        return sum(w * e for w, e in zip(self.weights, exp))

    def tdeg(self, deg):
        """Total degree of a multidegree, used for graded Nakayama ordering."""
        return sum(deg)

    @property
    def zero_degree(self):
        return (0,) * (self.n if self.fine else 1)

    @property
    def sigma(self):
        """Degree of the product of all variables (the canonical shift)."""
        return (1,) * self.n if self.fine else (sum(self.weights),)

    def as_degree(self, d):
        if isinstance(d, int):
            if self.fine:
                raise GradingModeMismatch(f"ring {self.name} is fine graded; got integer degree {d}")
            return (d,)
        d = tuple(d)
        want = self.n if self.fine else 1
        if len(d) != want:
            raise GradingModeMismatch(f"degree {d} does not match {self.grading} grading of {self.name}")
        return d

    def deg_add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def deg_sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def deg_neg(self, a):
        return tuple(-x for x in a)

    def poly_degree(self, f):
        """Degree of a homogeneous polynomial, None for 0; raises if inhomogeneous."""
        degs = {self.degree(e) for e in f}
        if not degs:
            return None
        if len(degs) > 1:
            raise NonHomogeneousRelation(f"{self.format(f)} is not homogeneous")
        return degs.pop()

    def is_homogeneous(self, f):
        return len({self.degree(e) for e in f}) <= 1

    def monomials_of_degree(self, deg):
        if self.fine:
            return (tuple(deg),) if all(x >= 0 for x in deg) else ()
        return monomials_of_weight(self.weights, deg[0])

    # -- quotient structure ------------------------------------------------
    @cached_property
    def relation_gb(self):
        """Reduced Groebner basis of J in S (list of monic polynomials)."""
        from .groebner import ideal_gb_in_ambient
        return ideal_gb_in_ambient(self, self.relations)

    @cached_property
    def relation_leads(self):
        from .groebner import leading_exp
        return [leading_exp(self, f) for f in self.relation_gb]

    def in_initial(self, exp):
        """True if x^exp lies in the initial ideal of J (so is not standard)."""
        for le in self.relation_leads:
            if divides(le, exp):
                return True
        return False

    def standard_monomials(self, deg):
        return [e for e in self.monomials_of_degree(deg) if not self.in_initial(e)]

    def nf(self, f):
        """Normal form of f modulo J."""
        if not self.relations or not f:
            return dict(f)
        from .groebner import reduce_poly
        return reduce_poly(self, f, self.relation_gb)

    @cached_property
    def ambient(self):
        """The polynomial ring S with the same variables, grading and order."""
        if not self.relations:
            return self
        return Ring(self.variables, self.field, self.order, (), None if self.fine else self.weights)

    @cached_property
    def krull_dim(self):
        from .groebner import dimension_from_leads
        return dimension_from_leads(self.n, self.relation_leads)

    @property
    def is_artinian(self):
        return self.krull_dim == 0

    @property
    def is_hypersurface(self):
        return len(self.relation_gb) == 1

    # -- parsing / display -------------------------------------------------
    def parse(self, text):
        return parse_poly(text, self.variables, self.p)

    def poly(self, f):
        """Coerce str / dict / int / Polynomial to a reduced Polynomial of this ring."""
        if isinstance(f, Polynomial):
            return Polynomial(self, f.terms)
        if isinstance(f, str):
            f = self.parse(f)
        elif isinstance(f, int):
            f = {(0,) * self.n: f % self.p} if f % self.p else {}
        return Polynomial(self, self.nf(f))

    def as_terms(self, f):
        if isinstance(f, Polynomial):
            return dict(f.terms)
        if isinstance(f, str):
            return self.parse(f)
        if isinstance(f, int):
            return {(0,) * self.n: f % self.p} if f % self.p else {}
        return {e: c % self.p for e, c in f.items() if c % self.p}

    def format(self, f):
        return format_poly(f, self.variables, self.order, self.p)

    @property
    def name(self):
        rel = ", ".join(self.format(f) for f in self.relations)
        base = f"GF({self.p})[{', '.join(self.variables)}]"
        return f"{base}/({rel})" if rel else base

    # -- identity ------------------------------------------------------------
    def key(self):
        rels = tuple(sorted(tuple(sorted(f.items())) for f in self.relations))
        return (self.variables, self.p, self.order.kind, self.order.perm,
                None if self.fine else self.weights, rels)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        mode = "fine" if self.fine else f"weights={self.weights}"
        return f"Ring({self.name}, {mode})"


class Polynomial:
    """Immutable element of a Ring, kept in normal form modulo J."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = dict(terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other.terms
        return self.ring.as_terms(other)

    def __add__(self, other):
        return self.ring.poly(padd(self.terms, self._coerce(other), self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, pscale(self.terms, -1, self.ring.p))

    def __sub__(self, other):
        return self + (-self.ring.poly(self._coerce(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self.ring.poly(pmul(self.terms, self._coerce(other), self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.poly(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (Polynomial, str, int, dict)):
            return self.terms == self.ring.nf(self._coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        return self.ring.poly_degree(self.terms)

    def is_homogeneous(self):
        return self.ring.is_homogeneous(self.terms)

    def __str__(self):
        return self.ring.format(self.terms)

    def __repr__(self):
        return f"Polynomial({self})"


def _parse_variables(variables):
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    return list(variables)


def make_ring(variables, relations=(), *, characteristic=DEFAULT_CHARACTERISTIC,
              weights=None, order="grevlex", order_variables=None):
    """Build and validate a ring presentation.

    ``variables`` is a list of names or a comma-separated string. ``weights``
    of None means fine multigrading; otherwise a positive weight per variable.
    ``order_variables`` optionally lists the variables from largest to smallest.
    """
    variables = _parse_variables(variables)
    if len(set(variables)) != len(variables):
        raise ValueError(f"variables must be distinct: {variables}")
    field = PrimeField(characteristic)
    n = len(variables)
    if weights is not None:
        weights = tuple(int(w) for w in weights)
        if len(weights) != n or any(w <= 0 for w in weights):
            raise ValueError("weights must be one positive integer per variable")
    if order_variables is None:
        perm = tuple(range(n))
    else:
        order_variables = _parse_variables(order_variables)
        perm = tuple(variables.index(v) for v in order_variables)
    mo = MonomialOrder(order, perm, weights or (1,) * n)

    probe = Ring(variables, field, mo, (), weights)
    rels = []
    for r in relations:
        f = probe.as_terms(r)
        if not f:
            continue
        if weights is None and len(f) > 1:
            raise FineGradingNeedsMonomialRelations(
                f"relation {probe.format(f)} is not a monomial; use coarse weights")
        if not probe.is_homogeneous(f):
            raise NonHomogeneousRelation(f"relation {probe.format(f)} is not homogeneous")
        # normalise to monic so equal ideals print alike
        lead = max(f, key=mo.key)
        rels.append(pscale(f, field.inv(f[lead]), field.p))
    return Ring(variables, field, mo, rels, weights)
