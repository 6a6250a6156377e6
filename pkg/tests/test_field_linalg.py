import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cmpairs.errors import NonPrimeCharacteristic
from cmpairs.field import PrimeField, is_prime
from cmpairs.linalg import Echelon, nullspace, rank, rref

P = 32003


def test_prime_field_inverse():
    F = PrimeField(P)
    assert F.mul(F.inv(2), 2) == 1
    assert F.sub(0, 1) == P - 1


def test_rejects_composite():
    assert not is_prime(32001)
    with pytest.raises((NonPrimeCharacteristic, ValueError)):
        PrimeField(32001)


def test_rank_and_nullspace_small():
    assert rank([[1, 2], [2, 4]], 7) == 1
    K = np.array(nullspace([[1, 2], [2, 4]], 7))
    assert K.shape == (1, 2)
    assert (np.array([[1, 2], [2, 4]]) @ K.T % 7 == 0).all()


mats = st.lists(st.lists(st.integers(0, P - 1), min_size=4, max_size=4), min_size=1, max_size=5)


@given(mats)
@settings(max_examples=40, deadline=None)
def test_rank_nullity(A):
    r = rank(A, P)
    K = nullspace(A, P)
    assert r + len(K) == 4
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) % P == 0 for row in A)


@given(mats)
@settings(max_examples=30, deadline=None)
def test_echelon_matches_rank(A):
    E = Echelon(4, P)
    E.add(np.array(A, dtype=np.int64))
    assert E.dim == rank(A, P)
    for row in A:
        assert E.contains(np.array(row, dtype=np.int64))


def test_rref_idempotent():
    A = [[2, 4, 1], [1, 2, 0]]
    R1, piv = rref(A, 7)
    R2, piv2 = rref(R1, 7)
    assert piv == piv2 == [0, 2]
    assert np.array_equal(R1, R2)
