"""Randomized checks of the inequalities and route agreements on small monomial modules."""
from hypothesis import HealthCheck, given, settings, strategies as st

from cmpairs import GradedModule, Ideal, cd_pair, make_module, make_ring
from cmpairs.local_cohomology import (cd_support, cech_table, default_box, duality_table,
                                      grade_via_ext, koszul_grade)
from cmpairs.pairs import _window

S = make_ring("x,y")
RXY = make_ring("x,y", ["x*y"])

monomial = st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda e: sum(e) > 0)


def cyclic(R, exps):
    return GradedModule.cyclic(R, Ideal(R, [{e: 1} for e in exps]))


@st.composite
def monomial_module(draw, R=S):
    exps = draw(st.lists(monomial, min_size=0, max_size=2, unique=True))
    return cyclic(R, exps)


ideals = st.sampled_from([["x"], ["y"], ["x", "y"], ["x^2", "y"]])
cfg = settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@given(monomial_module(), monomial_module(), ideals)
@cfg
def test_chain(M, N, gens):
    I = Ideal(S, [S.parse(g) for g in gens])
    if N.is_zero() or M.is_zero():
        return
    rep = cd_pair(I, M, N)
    dN = grade_via_ext(I, N)
    assert dN.le(rep.depth) in (True, None)
    assert rep.depth.le(rep.cd.value) in (True, None)


@given(monomial_module(), ideals)
@cfg
def test_grade_routes(N, gens):
    I = Ideal(S, [S.parse(g) for g in gens])
    assert grade_via_ext(I, N).eq(koszul_grade(I.generators, N))


@given(monomial_module(RXY))
@cfg
def test_cech_vs_duality(N):
    if N.is_zero():
        return
    box = default_box(N, 2)
    a = cech_table(Ideal.maximal(RXY), N, [0, 1, 2], box)
    b = duality_table(N, [0, 1, 2], box)
    for key in set(a.nonzero()) | set(b.nonzero()):
        assert a.dims.get(key, 0) == b.dims.get(key, 0)


@given(monomial_module())
@cfg
def test_grothendieck_bounds(N):
    if N.is_zero():
        return
    m = Ideal.maximal(S)
    g, c = grade_via_ext(m, N), cd_support(m, N).value
    assert g.le(c) and c.value == N.dim()


@given(st.lists(monomial, min_size=1, max_size=3, unique=True), st.integers(0, 1))
@cfg
def test_hilbert_oracle(exps, s):
    M = make_module(S, [(s, 0)], [[{e: 1} for e in exps]])
    for d in _window(S, [M], 2):
        assert M.hilbert_dim(d) == M.gb_dim(d)
