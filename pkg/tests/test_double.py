import numpy as np
import pytest

from bgph.complex import FlagComplex, SimplicialComplex, double_vertex, glue_simplex, simplex
from bgph.double import build_partial_prime, double_homology, induced_map_HH, sign_epsilon
from bgph.hochster import Bigrade, bigraded_homology
from bgph.linalg import identity, matmul, rank

SQUARE = [(0, 1), (1, 2), (2, 3), (0, 3)]
K23 = [(a, b) for a in (0, 1) for b in (2, 3, 4)]


def test_sign_epsilon():
    assert sign_epsilon(3, ()) == 1
    assert sign_epsilon(3, {1, 2}) == 1
    assert sign_epsilon(2, {1, 3}) == -1
    with pytest.raises(ValueError):
        sign_epsilon(1, {1, 3})


def test_partial_prime_examples():
    two = build_partial_prime(bigraded_homology(SimplicialComplex.from_simplices(2, [])))
    assert all(not D.any() for D in two.differentials.values())
    three = build_partial_prime(bigraded_homology(SimplicialComplex.from_simplices(3, [])))
    D = three.outgoing(Bigrade(1, 2))
    assert D.shape == (2, 3) and rank(D) == 2


@pytest.mark.parametrize("p", [2, 3])
def test_double_homology_examples(p):
    assert double_homology(simplex(range(4)), p).dims() == {(0, 0): 1}
    assert double_homology(SimplicialComplex.from_simplices(4, SQUARE), p).dims() == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    assert double_homology(FlagComplex.from_edges(5, K23), p).dims() == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    assert double_homology(SimplicialComplex.from_simplices(3, []), p).dims() == {(0, 0): 1, (1, 2): 1}


def test_nilpotent_over_f3_on_three_points():
    H = bigraded_homology(SimplicialComplex.from_simplices(3, []), 3)
    chain = build_partial_prime(H)
    D1, D2 = chain.outgoing(Bigrade(1, 2)), chain.outgoing(Bigrade(2, 3))
    assert not matmul(D2, D1, 3).any()


def test_surgery_examples():
    square = SimplicialComplex.from_simplices(4, SQUARE)
    for face, n in (((2,), 1), ((), 0), ((0, 1), 2), ((), 2)):
        K = glue_simplex(square, face, n)
        assert double_homology(K, 3).dims() == {(0, 0): 1, (1, 2): 1}
    assert glue_simplex(simplex([0]), (0,), 1).is_simplex()


@pytest.mark.parametrize("p", [2, 3])
def test_nilpotent_and_doubling_invariant(p, rng):
    for _ in range(15):
        m = int(rng.integers(2, 7))
        A = np.triu(rng.random((m, m)) < 0.5, 1)
        K = FlagComplex(m, A | A.T)
        hh = double_homology(K, p)
        assert hh.dim((0, 0)) == 1
        i = int(rng.integers(m))
        assert double_homology(double_vertex(K, i), p).dims() == hh.dims()


def test_induced_maps_outlier_step():
    # three points on a line, the last a strong outlier at distance 10 from the rest
    small = FlagComplex.from_edges(3, [(0, 1)])
    full = simplex(range(3))
    a, b = double_homology(small), double_homology(full)
    F = induced_map_HH(a, a)
    assert all((M == identity(M.shape[0])).all() for M in F.values())
    G = induced_map_HH(a, b)
    assert G[Bigrade(0, 0)].tolist() == [[1]]
    assert G[Bigrade(1, 2)].shape == (0, 1)


def test_induced_maps_functorial(rng):
    m = 5
    W = rng.random((m, m))
    W = np.triu(W, 1) + np.triu(W, 1).T
    hh = [double_homology(FlagComplex(m, (W <= t) & ~np.eye(m, dtype=bool)), 3) for t in (0.3, 0.5, 0.8)]
    F01, F12, F02 = (induced_map_HH(hh[a], hh[b]) for a, b in ((0, 1), (1, 2), (0, 2)))
    for g, M in F02.items():
        if M.size:
            assert (matmul(F12[g], F01[g], 3) == M).all()
