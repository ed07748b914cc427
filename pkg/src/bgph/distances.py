"""Distances between intervals and barcodes.

An extended interval is a ``(birth, death)`` pair with ``death`` possibly
``math.inf``, or ``None`` for the empty interval. The bottleneck distance is
exact: a binary search over candidate matching costs, each probe a maximum
bipartite matching on the pairs within that cost.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .persistence import Barcode

INF = math.inf
EMPTY = None

ExtendedInterval = Optional[Tuple[float, float]]


def check_interval(a: ExtendedInterval) -> ExtendedInterval:
    if a is None:
        return None
    birth, death = float(a[0]), float(a[1])
    if not birth < death:
        raise ValueError(f"interval [{birth}, {death}) must have birth < death")
    return birth, death


def half_length(a: ExtendedInterval) -> float:
    return 0.0 if a is None else (a[1] - a[0]) / 2


def pi_distance(a: ExtendedInterval, b: ExtendedInterval) -> float:
    """Endpoint distance between extended intervals, with the empty interval
    at half-length from every finite interval and infinitely far from rays."""
    if a is None and b is None:
        return 0.0
    if a is None or b is None:
        c = a if b is None else b
        return INF if c[1] == INF else half_length(c)
    if a[1] == INF and b[1] == INF:
        return abs(a[0] - b[0])
    if a[1] == INF or b[1] == INF:
        return INF
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def interval_interleaving(a: ExtendedInterval, b: ExtendedInterval) -> float:
    """Interleaving distance between two interval modules.

    Two finite intervals are either interleaved directly (endpoint shift) or
    both shifted to zero (half the longer length), whichever is cheaper.
    """
    if a is None or b is None:
        return pi_distance(a, b)
    if a[1] == INF or b[1] == INF:
        return pi_distance(a, b)
    return min(max(half_length(a), half_length(b)), pi_distance(a, b))


COSTS = {"pi": pi_distance, "interleaving": interval_interleaving}


def _perfect(allowed: np.ndarray) -> bool:
    n = allowed.shape[0]
    if n == 0:
        return True
    match = maximum_bipartite_matching(csr_matrix(allowed.astype(np.int8)), perm_type="column")
    return bool(np.all(match >= 0))


def matching_distance(A: list, B: list, cost=pi_distance) -> float:
    """Bottleneck distance between two multisets of extended intervals.

    Each side is padded with as many empty intervals as the other side has
    bars, so every bar may also be matched to the empty interval.
    """
    k, l = len(A), len(B)
    n = k + l
    if n == 0:
        return 0.0
    left = list(A) + [None] * l
    right = list(B) + [None] * k
    C = np.empty((n, n))
    for r, a in enumerate(left):
        for c, b in enumerate(right):
            C[r, c] = cost(a, b)
    candidates = np.unique(C[np.isfinite(C)])
    if not _perfect(np.isfinite(C)):
        return INF
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect(C <= candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def _groups(B) -> dict:
    if isinstance(B, Barcode):
        out = {}
        for bar in B:
            out.setdefault(bar.grade, []).append((bar.birth, bar.death))
        return out
    return {0: [check_interval(iv) for iv in B]}


def _kind(B) -> str:
    return B.kind if isinstance(B, Barcode) else "degree"


def bottleneck(B1, B2, grade_matched: bool = True, cost: str = "pi") -> float:
    """Bottleneck (infinity-Wasserstein) distance between barcodes.

    With ``grade_matched`` (the default) bars only match bars of the same
    grade or the empty interval, and the result is the maximum over grades.
    Plain iterables of ``(birth, death)`` pairs are treated as one grade.
    """
    if _kind(B1) != _kind(B2):
        raise ValueError(f"cannot compare a {_kind(B1)} barcode with a {_kind(B2)} barcode")
    try:
        fn = COSTS[cost]
    except KeyError:
        raise ValueError(f"unknown matching cost {cost!r}; expected one of {sorted(COSTS)}") from None
    g1, g2 = _groups(B1), _groups(B2)
    if not grade_matched:
        return matching_distance([iv for v in g1.values() for iv in v],
                                 [iv for v in g2.values() for iv in v], fn)
    worst = 0.0
    for g in sorted(set(g1) | set(g2)):
        worst = max(worst, matching_distance(g1.get(g, []), g2.get(g, []), fn))
    return worst


def interleaving_via_isometry(B1, B2, grade_matched: bool = True) -> float:
    """Interleaving distance of the modules behind two barcodes.

    Computed as the bottleneck distance of their barcodes, which the isometry
    theorem identifies with the interleaving distance; no interleavings are searched.
    """
    return bottleneck(B1, B2, grade_matched=grade_matched)


def intervals(bars: Iterable) -> list:
    """Normalise ``(birth, death)`` pairs, mapping ``None`` deaths to infinity."""
    return [(float(b), INF if d is None else float(d)) for b, d in bars]
