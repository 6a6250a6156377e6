import pytest

from cmpairs import GradedModule, Ideal, make_module, make_ring
from cmpairs.homological import subquotient


@pytest.fixture(scope="session")
def S2():
    return make_ring("x,y")


@pytest.fixture(scope="session")
def Rxy():
    return make_ring("x,y", ["x*y"])


@pytest.fixture(scope="session")
def ex18(Rxy):
    R = Rxy
    x, y = R.parse("x"), R.parse("y")
    M = make_module(R, None, [[x]])
    N = subquotient(R, [R.zero_degree], [{(0, (0, 1)): 1}], [])
    I = Ideal(R, [x])
    return R, I, M, N


@pytest.fixture(scope="session")
def semigroup():
    return make_ring("x,y,z", ["y^2-x*z", "z^2-x^2*y", "y*z-x^3"], weights=(3, 4, 5))


@pytest.fixture(scope="session")
def ex36():
    from cmpairs import ext
    S = make_ring("x,y,t,u", ["x^2", "x*y", "y^2"])
    R = make_ring("x,y,t,u", ["x^2", "x*y", "y^2", "t^2", "t*u", "u^2"])
    J = Ideal(S, [S.parse(f) for f in ("t^2", "t*u", "u^2")])
    A = GradedModule.cyclic(S, J)
    C = ext(2, A, GradedModule.free(S)).over_ring(R)
    return S, R, C
