import pytest

from cmpairs import (GradedModule, Ideal, ar_certificate, ass_monomial, cd_pair, depth_pair,
                     glc_truncated, huneke_check, is_cci, is_cm_pair, is_semidualizing, make_module)
from cmpairs.errors import HypothesisNotMet, UnsupportedIdeal
from cmpairs.homological import ExtendedNat, subquotient
from cmpairs.local_cohomology import deficiency
from cmpairs.pairs import Verdict, h_invariant, is_totally_C_reflexive


def test_example_18_pair(ex18):
    R, I, M, N = ex18
    rep = cd_pair(I, M, N)
    assert rep.depth == ExtendedNat.finite(0)
    assert rep.cd.value.kind == "infinite"
    assert rep.cd.value.certificate["period"] == 2
    assert str(rep.verdict) == "No"
    F = GradedModule.free(R)
    assert is_cm_pair(I, F, N) == Verdict.yes(0)


def test_glc_with_R_is_ordinary_lc(ex18):
    R, I, M, N = ex18
    F = GradedModule.free(R)
    t = glc_truncated(I, F, N, 0, Q=3)
    assert t.stabilized
    assert t.dims() == [N.hilbert_dim(d) for d in t.window]


def test_glc_shortcut_when_I_kills_M(ex18):
    R, I, M, N = ex18
    t = glc_truncated(I, M, N, 2, Q=3)
    assert t.shortcut is not None and t.total() == 1


def test_three_strategies_agree(S2):
    M = make_module(S2, None, [[S2.parse("x")]])
    F = GradedModule.free(S2)
    rep = cd_pair(Ideal.maximal(S2), M, F)
    exact = {k: v for k, v in rep.strategies.items() if v.is_exact}
    assert len(exact) >= 3
    assert all(v == ExtendedNat.finite(2) for v in exact.values())
    assert rep.agreement is True
    assert rep.h == ExtendedNat.finite(0)
    assert str(rep.verdict) == "Yes(2)"


def test_depth_pair_formula(S2):
    M = make_module(S2, None, [[S2.parse("x")]])
    F = GradedModule.free(S2)
    assert depth_pair(Ideal.maximal(S2), M, F) == ExtendedNat.finite(2)
    assert depth_pair(Ideal(S2, [S2.parse("y")]), M, F) == ExtendedNat.finite(2)


def test_h_invariant(ex18):
    R, I, M, N = ex18
    F = GradedModule.free(R)
    assert h_invariant(M, F).eq(ExtendedNat.finite(0))


def test_unit_ideal(S2):
    M = GradedModule.free(S2)
    rep = cd_pair(Ideal(S2, [{(0, 0): 1}]), M, M)
    assert rep.cd.value.kind == "neg_infinite" and rep.depth.kind == "infinite"
    assert str(rep.verdict) == "No"


def test_non_monomial_ideal_rejected():
    from cmpairs import make_ring
    T = make_ring("x,y", weights=(1, 1))
    F = GradedModule.free(T)
    with pytest.raises(UnsupportedIdeal):
        cd_pair(Ideal(T, [T.parse("x+y")]), F, F)


def test_cci(S2, Rxy):
    assert is_cci(Ideal(S2, [S2.parse("x")]))
    assert is_cci(Ideal.maximal(S2))
    assert not is_cci(Ideal(Rxy, [Rxy.parse("x")]))


def test_semidualizing_examples(ex36, semigroup):
    S, R, C = ex36
    assert is_semidualizing(C, 6)
    assert is_semidualizing(GradedModule.free(R), 3)
    W = deficiency(1, GradedModule.free(semigroup)).over_ring
    assert is_semidualizing(W, 4)
    assert is_cm_pair(Ideal.maximal(semigroup), W, W) == Verdict.yes(1)


def test_not_semidualizing(S2):
    M = make_module(S2, None, [[S2.parse("x")]])
    assert not is_semidualizing(M, 2)


def test_totally_reflexive_free(S2):
    F = GradedModule.free(S2)
    assert is_totally_C_reflexive(F, F, 3)
    M = make_module(S2, None, [[S2.parse("x")]])
    assert not is_totally_C_reflexive(M, F, 3)


def test_ass_regressions(S2, Rxy):
    assert [str(P) for P in ass_monomial(GradedModule.free(S2))] == ["(0)"]
    assert sorted(str(P) for P in ass_monomial(GradedModule.free(Rxy))) == ["(x)", "(y)"]
    D = make_module(S2, None, [[S2.parse("x^2"), S2.parse("x*y")]])
    assert sorted(str(P) for P in ass_monomial(D)) == ["(x)", "(x, y)"]


def test_huneke(ex18):
    R, I, M, N = ex18
    r = huneke_check(I, M, N)
    assert r.finite and [str(P) for P in r.ass] == ["(x)"]


def test_huneke_hypotheses(S2):
    F = GradedModule.free(S2)
    with pytest.raises(HypothesisNotMet):
        huneke_check(Ideal(S2, [S2.parse("x")]), F, F)
    r = huneke_check(Ideal.maximal(S2), F, F)
    assert r.c == 2 and [str(P) for P in r.ass] == ["(x, y)"]


def test_ar_certificates(S2):
    F = GradedModule.free(S2, rank=2)
    assert ar_certificate(F).verdict == "Free"
    m = subquotient(S2, [(0, 0)], [{(0, (1, 0)): 1}, {(0, (0, 1)): 1}], [])
    c = ar_certificate(m)
    assert c.verdict == "NotFree" and c.witness
    H = make_module(S2, None, [[S2.parse("x")]])
    assert ar_certificate(H).verdict == "NotFree"
