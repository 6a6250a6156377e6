import pytest

from cmpairs import GradedModule, Ideal, make_module, make_ring
from cmpairs.errors import NotFineGraded
from cmpairs.homological import ExtendedNat
from cmpairs.local_cohomology import (cd_support, cech_cohomology, cech_table, default_box,
                                      deficiency, depth_via_deficiency, duality_table, grade_via_ext,
                                      is_relative_cm_m, koszul_grade, lc_dims)


def test_top_local_cohomology_of_polynomial_ring(S2):
    F = GradedModule.free(S2)
    m = Ideal.maximal(S2)
    t = cech_cohomology(m, F, 2, ((-3, -3), (1, 1)))
    assert t.get(2, (-1, -1)) == 1
    assert t.get(2, (-2, -1)) == 1
    assert t.get(2, (0, -1)) == 0
    assert t.get(2, (-1, 0)) == 0


def test_cech_matches_duality(S2, Rxy):
    for R in (S2, Rxy):
        for X in (GradedModule.free(R), make_module(R, None, [[R.parse("x")]])):
            box = default_box(X, 2)
            idx = list(range(R.n + 1))
            a = cech_table(Ideal.maximal(R), X, idx, box)
            b = duality_table(X, idx, box)
            for i in idx:
                assert a.nonzero(i) == b.nonzero(i)
                for key in a.nonzero(i):
                    assert a.dims[key] == b.dims[key]


def test_principal_cech(S2):
    F = GradedModule.free(S2)
    x = Ideal(S2, [S2.parse("x")])
    t = cech_cohomology(x, F, 1, ((-3, 0), (0, 2)))
    # H^1_x(S) = S_x / S lives in negative x-degrees
    assert t.get(1, (-1, 0)) == 1 and t.get(1, (-2, 1)) == 1
    assert t.get(1, (0, 0)) == 0


def test_cd_and_grade(S2, ex18):
    F = GradedModule.free(S2)
    x = Ideal(S2, [S2.parse("x")])
    assert cd_support(x, F).value == ExtendedNat.finite(1)
    assert grade_via_ext(Ideal.maximal(S2), F) == ExtendedNat.finite(2)
    R, I, M, N = ex18
    assert cd_support(I, N).value.eq(ExtendedNat.finite(0))
    assert grade_via_ext(I, N).eq(ExtendedNat.finite(0))


def test_grade_routes_agree(S2, Rxy):
    for R in (S2, Rxy):
        for gens in (["x"], ["x", "y"], ["y"]):
            J = Ideal(R, [R.parse(g) for g in gens])
            for X in (GradedModule.free(R), make_module(R, None, [[R.parse("x")]])):
                assert grade_via_ext(J, X).eq(koszul_grade(J.generators, X))


def test_deficiency_and_cm(S2, Rxy):
    F = GradedModule.free(S2)
    K2 = deficiency(2, F)
    assert K2.lc_dim((-1, -1)) == 1 and K2.lc_dim((-3, -2)) == 1
    assert K2.lc_dim((0, 0)) == 0 and K2.lc_dim((-1, 0)) == 0
    assert deficiency(0, F).is_zero() and deficiency(1, F).is_zero()
    assert is_relative_cm_m(F)
    U = make_ring("a,b,c,d", ["a*c", "a*d", "b*c", "b*d"])
    G = GradedModule.free(U)
    assert not is_relative_cm_m(G)
    assert depth_via_deficiency(G).eq(ExtendedNat.finite(1))


def test_artinian_lc(ex36):
    S, R, C = ex36
    m = Ideal.maximal(R)
    assert cd_support(m, GradedModule.free(R)).value.eq(ExtendedNat.finite(0))
    assert grade_via_ext(m, C).eq(ExtendedNat.finite(0))


def test_semigroup_duality_route(semigroup):
    T = semigroup
    F = GradedModule.free(T)
    m = Ideal.maximal(T)
    assert cd_support(m, F).value.eq(ExtendedNat.finite(1))
    assert grade_via_ext(m, F).eq(ExtendedNat.finite(1))
    W = deficiency(1, F).over_ring
    assert W.minimal_presentation().rank == 2


def test_cech_needs_fine_grading(semigroup):
    with pytest.raises(NotFineGraded):
        cech_cohomology(Ideal(semigroup, [semigroup.parse("x")]), GradedModule.free(semigroup), 0)


def test_lc_dims_route(S2):
    F = GradedModule.free(S2)
    t = lc_dims(Ideal.maximal(S2), F, [2])
    assert t.get(2, (-1, -1)) == 1
