import math

import pytest

from bgph.distances import bottleneck, interleaving_via_isometry, interval_interleaving, matching_distance, pi_distance
from bgph.hochster import Bigrade
from bgph.persistence import Barcode, persistent_homology, phz

INF = math.inf


def random_bars(rng, k, with_rays=True):
    out = []
    for _ in range(k):
        b = float(rng.uniform(0, 5))
        d = INF if with_rays and rng.random() < 0.15 else b + float(rng.uniform(0.01, 5))
        out.append((b, d))
    return out


def brute_bottleneck(A, B):
    """Minimum over every assignment of bars (or the empty interval) on both sides."""
    import itertools
    left = A + [None] * len(B)
    right = B + [None] * len(A)
    best = INF
    for perm in itertools.permutations(range(len(right))):
        best = min(best, max([pi_distance(left[i], right[j]) for i, j in enumerate(perm)] or [0.0]))
    return best


def test_pi_table():
    assert pi_distance((0, 5), (1, 7)) == 2
    assert pi_distance(None, (3, 9)) == 3
    assert pi_distance((2, INF), None) == INF
    assert pi_distance((2, INF), (3, INF)) == 1
    assert pi_distance((2, INF), (3, 4)) == INF
    assert pi_distance(None, None) == 0


def test_interleaving_examples():
    assert interval_interleaving((0, 5), (1, 7)) == 2
    assert interval_interleaving((0, 5), None) == 2.5
    assert interval_interleaving((1, 3), (1, 3)) == 0
    assert interval_interleaving((0, 1), (10, 11)) == 0.5


def test_bottleneck_golden():
    assert bottleneck([(0, 5)], [(1, 7)]) == 2
    assert bottleneck([(0, 5)], [(3, 9)]) == 3
    B = [(0, 1), (0.5, 3), (1, INF)]
    assert bottleneck(B, B) == 0
    assert interleaving_via_isometry([(0, 5)], [(1, 7)]) == 2


def test_rays_only_match_rays():
    assert bottleneck([(0, INF)], []) == INF
    assert bottleneck([(0, INF)], [(1, INF), (0, 1)]) == 1


def test_matches_bruteforce(rng):
    for _ in range(40):
        A = random_bars(rng, int(rng.integers(0, 4)))
        B = random_bars(rng, int(rng.integers(0, 4)))
        assert matching_distance(A, B) == brute_bottleneck(A, B)


def test_costs_agree(rng):
    for _ in range(100):
        A = random_bars(rng, int(rng.integers(0, 6)))
        B = random_bars(rng, int(rng.integers(0, 6)))
        assert bottleneck(A, B) == bottleneck(A, B, cost="interleaving")


def test_pseudometric(rng):
    for _ in range(40):
        A, B, C = (random_bars(rng, int(rng.integers(0, 5)), with_rays=False) for _ in range(3))
        ab = bottleneck(A, B)
        assert ab == bottleneck(B, A)
        assert ab <= bottleneck(A, C) + bottleneck(C, B) + 1e-12


def test_direct_sum_bound(rng):
    for _ in range(40):
        A1, A2, B1, B2 = (random_bars(rng, int(rng.integers(0, 4))) for _ in range(4))
        lhs = bottleneck(A1 + A2, B1 + B2)
        assert lhs <= max(bottleneck(A1, B1), bottleneck(A2, B2)) + 1e-12


def test_grade_matching(x1, x2):
    a, b = phz(x1), phz(x2)
    assert bottleneck(a, b) == pytest.approx(2 * math.sqrt(5) - 4, abs=1e-12)
    assert bottleneck(persistent_homology(x1), persistent_homology(x2)) == 0
    g = Barcode([(Bigrade(1, 2), 0, 1)], "bigraded")
    h = Barcode([(Bigrade(2, 3), 0, 1)], "bigraded")
    assert bottleneck(g, h) == 0.5
    assert bottleneck(g, h, grade_matched=False) == 0
    with pytest.raises(ValueError):
        bottleneck(a, persistent_homology(x1))
    with pytest.raises(ValueError):
        bottleneck(a, b, cost="wasserstein")
