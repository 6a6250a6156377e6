import pytest
from hypothesis import given, settings, strategies as st

from cmpairs import GradedModule, Ideal, make_module, make_ring
from cmpairs.errors import InhomogeneousColumn
from cmpairs.module import prune
from cmpairs.pairs import _window


def test_cyclic_dims(S2):
    M = GradedModule.cyclic(S2, Ideal(S2, [S2.parse("x")]))
    assert M.hilbert_dim((0, 3)) == 1
    assert M.hilbert_dim((1, 0)) == 0
    assert M.dim() == 1


def test_inhomogeneous_column_rejected(S2):
    with pytest.raises(InhomogeneousColumn):
        make_module(S2, None, [[S2.parse("x+x^2")]])


def test_prune_removes_unit_relations(S2):
    # S^2 / (e1 - e2, x*e1 + x*e2) is cyclic
    M = make_module(S2, [(0, 0), (0, 0)], [[1, S2.parse("x")], [-1 % 32003, S2.parse("x")]])
    P, _, kept = prune(M)
    assert P.rank == 1
    assert M.pruned().rank == 1


def test_shift_and_sum(S2):
    F = GradedModule.free(S2)
    G = F.shift((1, 0))  # S(1, 0): generator in degree (-1, 0)
    assert G.hilbert_dim((-1, 0)) == 1 and G.hilbert_dim((-1, 1)) == 1
    assert G.hilbert_dim((-2, 0)) == 0
    assert F.direct_sum(G).hilbert_dim((0, 0)) == 2


def test_tensor_of_cyclics(S2):
    A = GradedModule.cyclic(S2, Ideal(S2, [S2.parse("x")]))
    B = GradedModule.cyclic(S2, Ideal(S2, [S2.parse("y")]))
    T = A.tensor(B)
    assert T.hilbert_dim((0, 0)) == 1
    assert T.hilbert_dim((1, 0)) == 0 and T.hilbert_dim((0, 1)) == 0


def test_annihilator(Rxy):
    M = make_module(Rxy, None, [[Rxy.parse("x")]])
    assert M.annihilator().equals(Ideal(Rxy, [Rxy.parse("x")]))


def test_minimal_presentation_of_ideal(S2):
    from cmpairs.homological import subquotient
    m = subquotient(S2, [(0, 0)], [{(0, (1, 0)): 1}, {(0, (0, 1)): 1}], [])
    P = m.minimal_presentation()
    assert P.rank == 2 and P.num_relations == 1


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2))
@settings(max_examples=20, deadline=None)
def test_hilbert_matches_gb_dims(a, b, c):
    S = make_ring("x,y")
    rows = [[S.parse(f"x^{a}"), S.parse(f"y^{b}")]]
    M = make_module(S, [(c, 0)], rows)
    for d in _window(S, [M], 2):
        assert M.hilbert_dim(d) == M.gb_dim(d)


def test_hilbert_matches_gb_dims_coarse(semigroup):
    M = GradedModule.free(semigroup)
    for d in range(0, 12):
        assert M.hilbert_dim((d,)) == M.gb_dim((d,))
    # the semigroup <3,4,5> misses 1 and 2
    assert [M.hilbert_dim((d,)) for d in range(7)] == [1, 0, 0, 1, 1, 1, 1]
