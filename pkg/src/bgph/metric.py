"""Finite pseudo-metric spaces, doubling, strong outliers and exact
Gromov-Hausdorff distances for small spaces."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import TOLERANCE, CapExceededError

GH_PAIR_CAP = 30
BIJECTIVE_CAP = 9


@dataclass(frozen=True, eq=False)
class PseudoMetricSpace:
    """Finite set of points with a symmetric, zero-diagonal distance matrix.

    Distinct points may sit at distance zero. The triangle inequality is
    checked with tolerance ``1e-9`` and only produces a warning when it fails.
    """

    dist: np.ndarray
    labels: Optional[tuple] = None

    def __post_init__(self):
        d = np.array(self.dist, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {d.shape}")
        if d.shape[0] == 0:
            raise ValueError("a pseudo-metric space needs at least one point")
        if not np.all(np.isfinite(d)):
            raise ValueError("distances must be finite")
        if np.any(d < -TOLERANCE):
            raise ValueError("distances must be nonnegative")
        if np.any(np.abs(np.diag(d)) > TOLERANCE):
            raise ValueError("self-distances must be zero")
        if np.any(np.abs(d - d.T) > TOLERANCE):
            raise ValueError("distance matrix is not symmetric")
        d = np.maximum((d + d.T) / 2, 0.0)
        np.fill_diagonal(d, 0.0)
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != d.shape[0]:
                raise ValueError("one label per point is required")
            object.__setattr__(self, "labels", labels)
        worst = triangle_violation(d)
        if worst > TOLERANCE:
            warnings.warn(f"distance matrix violates the triangle inequality by {worst:.3g}", stacklevel=3)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other):
        if not isinstance(other, PseudoMetricSpace):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.dist, other.dist)

    def __hash__(self):
        return hash(self.dist.tobytes())

    def restrict(self, points: Iterable[int]) -> "PseudoMetricSpace":
        idx = sorted(points)
        labels = None if self.labels is None else tuple(self.labels[i] for i in idx)
        return PseudoMetricSpace(self.dist[np.ix_(idx, idx)], labels)


def triangle_violation(d: np.ndarray) -> float:
    """Largest amount by which ``d[x, z] > d[x, y] + d[y, z]``."""
    if d.shape[0] < 3:
        return 0.0
    via = np.min(d[:, :, None] + d[None, :, :], axis=1)
    return float(max(np.max(d - via), 0.0))


def from_points(coords) -> PseudoMetricSpace:
    """Euclidean distances between the rows of ``coords``."""
    rows = [list(map(float, row)) for row in coords]
    if not rows:
        raise ValueError("need at least one point")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("ragged coordinates: all points need the same dimension")
    pts = np.array(rows, dtype=np.float64)
    diff = pts[:, None, :] - pts[None, :, :]
    return PseudoMetricSpace(np.sqrt(np.sum(diff * diff, axis=-1)))


def from_matrix(dist) -> PseudoMetricSpace:
    return PseudoMetricSpace(np.asarray(dist, dtype=np.float64))


def diameter(X: PseudoMetricSpace) -> float:
    return float(X.dist.max())


def doubling(X: PseudoMetricSpace, x: int) -> PseudoMetricSpace:
    """``X`` with an extra point at distance zero from ``x``; the copy gets index ``n``."""
    if not 0 <= x < X.n:
        raise IndexError(f"point index {x} out of range for {X.n} points")
    n = X.n
    d = np.zeros((n + 1, n + 1))
    d[:n, :n] = X.dist
    d[n, :n] = X.dist[x]
    d[:n, n] = X.dist[x]
    labels = None if X.labels is None else X.labels + (f"{X.labels[x]}'",)
    return PseudoMetricSpace(d, labels)


def is_strong_outlier(X: PseudoMetricSpace, x: int, tol: float = TOLERANCE) -> bool:
    """True iff every ``y != x`` is at least as far from ``x`` as from any other point.

    The inequality is non-strict, so in a space where all distances are equal
    every point is a strong outlier.
    """
    if X.n < 2:
        raise ValueError("strong outliers need at least two points")
    others = [y for y in range(X.n) if y != x]
    sub = X.dist[np.ix_(others, others)]
    return bool(np.all(X.dist[x, others] + tol >= sub.max(axis=1)))


def strong_outliers(X: PseudoMetricSpace) -> list:
    return [x for x in range(X.n) if is_strong_outlier(X, x)]


def distortion(X: PseudoMetricSpace, Y: PseudoMetricSpace, pairs) -> float:
    """Max of ``|d_X(x1, x2) - d_Y(y1, y2)|`` over pairs of elements of ``pairs``."""
    pairs = list(pairs)
    if not pairs:
        return 0.0
    xs = np.array([a for a, _ in pairs])
    ys = np.array([b for _, b in pairs])
    return float(np.max(np.abs(X.dist[np.ix_(xs, xs)] - Y.dist[np.ix_(ys, ys)])))


def check_correspondence(X: PseudoMetricSpace, Y: PseudoMetricSpace, pairs) -> list:
    pairs = sorted(set((int(a), int(b)) for a, b in pairs))
    for a, b in pairs:
        if not (0 <= a < X.n and 0 <= b < Y.n):
            raise ValueError(f"pair {(a, b)} out of range")
    if {a for a, _ in pairs} != set(range(X.n)) or {b for _, b in pairs} != set(range(Y.n)):
        raise ValueError("not a correspondence: some point of X or Y is unmatched")
    return pairs


def _candidate_costs(X, Y) -> np.ndarray:
    vals = np.abs(X.dist.ravel()[:, None] - Y.dist.ravel()[None, :]).ravel()
    return np.unique(np.concatenate([[0.0], vals]))


def _compatibility(X, Y, delta, tol):
    """Bitmask rows: pair ``k = x * |Y| + y`` is compatible with pair ``l``."""
    nx, ny = X.n, Y.n
    gap = np.abs(X.dist[:, None, :, None] - Y.dist[None, :, None, :]).reshape(nx * ny, nx * ny)
    ok = gap <= delta + tol
    weights = [1 << k for k in range(nx * ny)]
    return [sum(w for w, flag in zip(weights, row) if flag) for row in ok]


def _find_correspondence(X, Y, delta, tol):
    nx, ny = X.n, Y.n
    compat = _compatibility(X, Y, delta, tol)
    x_cover = [sum(1 << (x * ny + y) for y in range(ny)) for x in range(nx)]
    y_cover = [sum(1 << (x * ny + y) for x in range(nx)) for y in range(ny)]
    full = (1 << (nx * ny)) - 1

    def search(chosen, allowed, open_x, open_y):
        if not open_x and not open_y:
            return chosen
        best = None
        for x in open_x:
            opts = allowed & x_cover[x]
            if best is None or opts.bit_count() < best.bit_count():
                best = opts
        for y in open_y:
            opts = allowed & y_cover[y]
            if best is None or opts.bit_count() < best.bit_count():
                best = opts
        while best:
            low = best & -best
            k = low.bit_length() - 1
            best ^= low
            x, y = divmod(k, ny)
            found = search(chosen | low, allowed & compat[k], open_x - {x}, open_y - {y})
            if found is not None:
                return found
        return None

    found = search(0, full, frozenset(range(nx)), frozenset(range(ny)))
    if found is None:
        return None
    return [divmod(k, ny) for k in range(nx * ny) if found >> k & 1]


def gromov_hausdorff(X, Y, max_pairs: int = GH_PAIR_CAP, tol: float = TOLERANCE, return_correspondence: bool = False):
    """Exact Gromov-Hausdorff distance: half the least distortion of a correspondence.

    Every candidate distortion is some ``|d_X - d_Y|`` value; a binary search over
    them asks whether a correspondence of distortion at most that value exists.
    Feasibility is a covering search over compatible pairs of ``X x Y``.
    """
    if X.n * Y.n > max_pairs:
        raise CapExceededError(
            f"|X|*|Y| = {X.n * Y.n} exceeds the exact enumeration bound {max_pairs}; "
            "use gromov_hausdorff_bijective or a sampled estimate"
        )
    costs = _candidate_costs(X, Y)
    lo, hi = 0, len(costs) - 1
    best = _find_correspondence(X, Y, costs[hi], tol)
    while lo < hi:
        mid = (lo + hi) // 2
        found = _find_correspondence(X, Y, costs[mid], tol)
        if found is None:
            lo = mid + 1
        else:
            hi, best = mid, found
    value = distortion(X, Y, best) / 2
    return (value, best) if return_correspondence else value


def gromov_hausdorff_bruteforce(X, Y, max_pairs: int = 16) -> float:
    """Enumerate every subset of ``X x Y``; only for tiny spaces."""
    if X.n * Y.n > max_pairs:
        raise CapExceededError(f"|X|*|Y| = {X.n * Y.n} exceeds {max_pairs}")
    pairs = [(x, y) for x in range(X.n) for y in range(Y.n)]
    best = np.inf
    for mask in range(1, 1 << len(pairs)):
        chosen = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if len({a for a, _ in chosen}) == X.n and len({b for _, b in chosen}) == Y.n:
            best = min(best, distortion(X, Y, chosen))
    return best / 2


def _find_bijection(X, Y, delta, tol):
    n = X.n
    gap = np.abs(X.dist[:, None, :, None] - Y.dist[None, :, None, :])
    ok = gap <= delta + tol  # ok[x, y, x2, y2]
    image = [-1] * n
    used = [False] * n

    def extend(x):
        if x == n:
            return True
        for y in range(n):
            if used[y]:
                continue
            if all(ok[x, y, x2, image[x2]] for x2 in range(x)):
                image[x], used[y] = y, True
                if extend(x + 1):
                    return True
                used[y] = False
        image[x] = -1
        return False

    return list(image) if extend(0) else None


def gromov_hausdorff_bijective(X, Y, max_points: int = BIJECTIVE_CAP, tol: float = TOLERANCE, return_bijection: bool = False):
    """Half the least distortion over bijections ``X -> Y`` (equal cardinalities only)."""
    if X.n != Y.n:
        raise ValueError("d'_GH requires equal cardinality")
    if X.n > max_points:
        raise CapExceededError(f"{X.n} points exceed the bijection search bound {max_points}")
    costs = _candidate_costs(X, Y)
    lo, hi = 0, len(costs) - 1
    best = _find_bijection(X, Y, costs[hi], tol)
    while lo < hi:
        mid = (lo + hi) // 2
        found = _find_bijection(X, Y, costs[mid], tol)
        if found is None:
            lo = mid + 1
        else:
            hi, best = mid, found
    value = distortion(X, Y, list(enumerate(best))) / 2
    return (value, best) if return_bijection else value


def gromov_hausdorff_bijective_bruteforce(X, Y) -> float:
    if X.n != Y.n:
        raise ValueError("d'_GH requires equal cardinality")
    return min(distortion(X, Y, list(enumerate(perm))) for perm in itertools.permutations(range(Y.n))) / 2


def equalize_by_doubling(X, Y, pairs: Sequence):
    """Turn a correspondence into a bijection between iterated doublings.

    Each ``x`` met by ``k > 1`` pairs is doubled ``k - 1`` times and each copy
    takes one of its pairs; the same is then done on the ``Y`` side. Returns
    ``(X_hat, Y_hat, bijection)`` with the bijection as ``(x_hat, y_hat)`` pairs.
    The multiset of distance gaps, hence the distortion, is unchanged.
    """
    pairs = check_correspondence(X, Y, pairs)
    Xh = X
    seen_x = set()
    step = []
    for a, b in pairs:
        if a in seen_x:
            Xh = doubling(Xh, a)
            step.append((Xh.n - 1, b))
        else:
            seen_x.add(a)
            step.append((a, b))
    Yh = Y
    seen_y = set()
    bijection = []
    for a, b in sorted(step, key=lambda ab: (ab[1], ab[0])):
        if b in seen_y:
            Yh = doubling(Yh, b)
            bijection.append((a, Yh.n - 1))
        else:
            seen_y.add(b)
            bijection.append((a, b))
    return Xh, Yh, sorted(bijection)
