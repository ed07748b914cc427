import numpy as np
import pytest

from bgph.linalg import (check_field, identity, is_prime, kernel_basis, left_inverse, matmul,
                         quotient_basis, rank, rref, solve_in_span, zeros)
from oracles import gf_rank


def test_rank_small_cases():
    assert rank(identity(3)) == 3
    assert rank(zeros(2, 2)) == 0
    assert rank([[1, 1], [1, 1]], 2) == 1
    assert rank(zeros(0, 4)) == 0


def test_rank_depends_on_field():
    A = [[1, 1], [1, -1]]
    assert rank(A, 2) == 1
    assert rank(A, 3) == 2


def test_rref_is_reduced():
    R, piv = rref([[2, 4, 1], [1, 2, 1]], 3)
    assert list(piv) == [0, 2]
    assert R[0, 0] == 1 and R[1, 2] == 1 and R[0, 2] == 0


def test_kernel_examples():
    assert kernel_basis(identity(3)).shape == (3, 0)
    K = kernel_basis(zeros(2, 2))
    assert K.shape == (2, 2) and rank(K) == 2
    assert kernel_basis([[1, 1]], 2).T.tolist() == [[1, 1]]


def test_solve_in_span():
    v = np.array([1, 0, 1])
    assert solve_in_span(identity(3), v).tolist() == v.tolist()
    assert solve_in_span([[1], [1]], [1, 0], 2) is None
    assert solve_in_span(zeros(2, 0), [0, 0]).size == 0
    with pytest.raises(ValueError, match="dimension mismatch"):
        solve_in_span(identity(2), [1, 0, 0])


def test_quotient_examples():
    reps, proj = quotient_basis(identity(2), zeros(2, 0))
    assert reps.shape[1] == 2
    assert quotient_basis(identity(2), identity(2))[0].shape[1] == 0
    Z = identity(3)[:, :2]
    reps, proj = quotient_basis(Z, np.array([[1], [1], [0]]), 2)
    assert reps.shape[1] == 1
    with pytest.raises(ValueError, match="boundary not contained in cycles"):
        quotient_basis(identity(3)[:, :1], identity(3)[:, 1:2])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_random_properties(p, rng):
    for _ in range(30):
        r, c = rng.integers(0, 7, size=2)
        A = rng.integers(0, p, size=(r, c))
        k = rank(A, p)
        assert k == rank(A.T, p) == gf_rank(A.tolist(), p)
        K = kernel_basis(A, p)
        assert K.shape[1] + k == c
        assert not matmul(A, K, p).any()


@pytest.mark.parametrize("p", [2, 3])
def test_quotient_projection(p, rng):
    for _ in range(30):
        n = int(rng.integers(1, 7))
        Z = rng.integers(0, p, size=(n, int(rng.integers(0, n + 1))))
        Bd = matmul(Z, rng.integers(0, p, size=(Z.shape[1], int(rng.integers(0, 4)))), p)
        reps, proj = quotient_basis(Z, Bd, p)
        assert reps.shape[1] == rank(Z, p) - rank(Bd, p)
        if reps.shape[1]:
            assert (matmul(proj, reps, p) == identity(reps.shape[1])).all()
            if Bd.size:
                assert not matmul(proj, Bd, p).any()


def test_left_inverse():
    M = np.array([[1, 0], [1, 1], [0, 1]])
    P = left_inverse(M, 3)
    assert (matmul(P, M, 3) == identity(2)).all()
    with pytest.raises(ValueError):
        left_inverse([[1, 1], [1, 1]], 2)


def test_field_checks():
    assert is_prime(7) and not is_prime(9) and not is_prime(1)
    assert check_field(3) == 3
    with pytest.raises(ValueError):
        check_field(4)
