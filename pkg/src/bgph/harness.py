"""Randomised property checks shared by ``bgph selftest`` and the test suite.

Every check draws from a generator seeded by ``(seed, trial)``, so a failing
trial is reproduced by rerunning the same check with the same pair.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .complex import FlagComplex, SimplicialComplex, double_vertex, glue_simplex, vietoris_rips
from .config import TOLERANCE
from .distances import bottleneck
from .double import build_partial_prime, double_homology
from .hochster import Bigrade, betti_table, bigraded_homology, in_trapezoid
from .homology import HomologyCache
from .linalg import matmul
from .metric import (PseudoMetricSpace, diameter, doubling, from_points, gromov_hausdorff,
                     gromov_hausdorff_bijective)
from .persistence import phhz, phz


@dataclass(frozen=True)
class RandomModel:
    seed: int = 1
    n_min: int = 3
    n_max: int = 7
    box: float = 1.0
    eps: float = 0.2
    dim: int = 2

    def __post_init__(self):
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.box <= 0 or self.eps < 0:
            raise ValueError("box must be positive and eps nonnegative")

    def rng(self, trial: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, trial])

    def points(self, rng, n: Optional[int] = None) -> np.ndarray:
        n = int(rng.integers(self.n_min, self.n_max + 1)) if n is None else n
        return rng.uniform(0, self.box, size=(n, self.dim))

    def perturb(self, pts: np.ndarray, rng, eps: Optional[float] = None) -> np.ndarray:
        """Move every point by at most ``eps`` (uniform direction and radius)."""
        eps = self.eps if eps is None else eps
        v = rng.normal(size=pts.shape)
        v /= np.maximum(np.linalg.norm(v, axis=1, keepdims=True), 1e-300)
        return pts + v * rng.uniform(0, eps, size=(len(pts), 1))

    def flag_complex(self, rng, m: int, density: Optional[float] = None) -> FlagComplex:
        density = rng.uniform(0.2, 0.8) if density is None else density
        A = np.triu(rng.random((m, m)) < density, 1)
        return FlagComplex(m, A | A.T)

    def complex(self, rng, m: int) -> SimplicialComplex:
        """A random complex: closure of a few random faces on ``m`` vertices."""
        facets = []
        for _ in range(int(rng.integers(1, m + 1))):
            size = int(rng.integers(1, min(m, 4) + 1))
            facets.append(rng.choice(m, size=size, replace=False).tolist())
        return SimplicialComplex.from_simplices(m, facets)

    def glued(self, rng):
        """``(K', face, n, K)`` with ``K = K'`` glued to an ``n``-simplex along ``face``."""
        base = self.complex(rng, int(rng.integers(1, 5)))
        faces = [0] + [int(f) for k in range(base.dimension + 1) for f in base.faces(k)]
        face = faces[int(rng.integers(len(faces)))]
        size = face.bit_count()
        n = int(rng.integers(size, size + 3))
        return base, face, n, glue_simplex(base, face, n)


class CheckResult(NamedTuple):
    name: str
    seed: int
    trial: int
    ok: bool
    detail: str


@dataclass
class Report:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def summary(self) -> dict:
        out = {}
        for r in self.results:
            passed, total = out.get(r.name, (0, 0))
            out[r.name] = (passed + r.ok, total + 1)
        return out

    def lines(self) -> list:
        lines = [f"{'PASS' if p == t else 'FAIL'} {name}: {p}/{t}" for name, (p, t) in sorted(self.summary().items())]
        for r in self.failures():
            lines.append(f"  counterexample {r.name} seed={r.seed} trial={r.trial}: {r.detail}")
        return lines


def _pts(pts) -> str:
    return np.array2string(np.asarray(pts), precision=17, separator=",").replace("\n", "")


def check_surgery(model: RandomModel, rng, p: int = 2):
    base, face, n, K = model.glued(rng)
    if K.is_simplex():
        return True, "simplex"
    dims = double_homology(K, p).dims()
    want = {Bigrade(0, 0): 1, Bigrade(1, 2): 1}
    return dims == want, f"base={base.simplices()} face={face} n={n} HH={dims}"


def check_nilpotency(model: RandomModel, rng, p: int = 2):
    K = model.flag_complex(rng, int(rng.integers(2, 9)))
    try:
        chain = build_partial_prime(bigraded_homology(K, p))
    except RuntimeError as exc:
        return False, f"edges={K.edges()}: {exc}"
    for b, D in chain.differentials.items():
        nxt = chain.outgoing(Bigrade(b.i + 1, b.j + 1))
        if D.size and nxt.size and matmul(nxt, D, p).any():
            return False, f"edges={K.edges()} at {b.label()}"
    return True, ""


def check_doubling_hh(model: RandomModel, rng, p: int = 2):
    m = int(rng.integers(2, 7))
    K = model.flag_complex(rng, m)
    i = int(rng.integers(m))
    a, b = double_homology(K, p).dims(), double_homology(double_vertex(K, i), p).dims()
    return a == b, f"edges={K.edges()} vertex={i}: {a} vs {b}"


def check_doubling_phhz(model: RandomModel, rng, p: int = 2):
    pts = model.points(rng, int(rng.integers(model.n_min, min(model.n_max, 5) + 1)))
    X = from_points(pts)
    x = int(rng.integers(X.n))
    a, b = phhz(X, p), phhz(doubling(X, x), p)
    return a == b, f"points={_pts(pts)} x={x}"


def _stability(lhs: float, rhs: float, tol: float, what: str):
    return lhs <= rhs + tol, f"{what}: {lhs!r} <= {rhs!r}"


def check_stability_gh(model: RandomModel, rng, p: int = 2, tol: float = TOLERANCE):
    """Bottleneck of double-homology barcodes against twice the exact GH distance (n <= 5)."""
    hi = min(model.n_max, 5)
    X = from_points(model.points(rng, int(rng.integers(model.n_min, hi + 1))))
    Y = from_points(model.points(rng, int(rng.integers(model.n_min, hi + 1))))
    lhs = bottleneck(phhz(X, p), phhz(Y, p))
    rhs = 2 * gromov_hausdorff(X, Y)
    ok, msg = _stability(lhs, rhs, tol, "W(phhz) <= 2 dGH")
    return ok, f"{msg} X={_pts(X.dist)} Y={_pts(Y.dist)}"


def check_stability_perturbed(model: RandomModel, rng, p: int = 2, tol: float = TOLERANCE):
    """Bottleneck of double-homology barcodes against ``2 eps`` for an ``eps``-perturbation."""
    pts = model.points(rng, int(rng.integers(model.n_min, min(model.n_max, 6) + 1)))
    eps = float(rng.uniform(0, model.eps))
    moved = model.perturb(pts, rng, eps)
    lhs = bottleneck(phhz(from_points(pts), p), phhz(from_points(moved), p))
    ok, msg = _stability(lhs, 2 * eps, tol, "W(phhz) <= 2 eps")
    return ok, f"{msg} points={_pts(pts)} moved={_pts(moved)}"


def check_stability_bijective(model: RandomModel, rng, p: int = 2, tol: float = TOLERANCE):
    """Bottleneck of bigraded barcodes against twice the bijective GH distance."""
    n = int(rng.integers(model.n_min, model.n_max + 1))
    X, Y = from_points(model.points(rng, n)), from_points(model.points(rng, n))
    if rng.random() < 0.5:
        Y = from_points(model.perturb(np.array(_points_of(X)), rng))
    lhs = bottleneck(phz(X, p), phz(Y, p))
    rhs = 2 * gromov_hausdorff_bijective(X, Y)
    ok, msg = _stability(lhs, rhs, tol, "W(phz) <= 2 d'GH")
    return ok, f"{msg} X={_pts(X.dist)} Y={_pts(Y.dist)}"


def _points_of(X: PseudoMetricSpace) -> np.ndarray:
    # classical multidimensional scaling; only used to perturb a space given by distances
    n = X.n
    J = np.eye(n) - 1.0 / n
    G = -0.5 * J @ (X.dist ** 2) @ J
    w, V = np.linalg.eigh(G)
    return V * np.sqrt(np.clip(w, 0, None))


def check_outlier(model: RandomModel, rng, p: int = 2, tol: float = TOLERANCE):
    """A far point makes the double-homology barcode two bars, and stability holds against the base space."""
    pts = model.points(rng, int(rng.integers(model.n_min, min(model.n_max, 5) + 1)))
    far = np.full((1, pts.shape[1]), 10.0 * model.box)
    X, Xo = from_points(pts), from_points(np.vstack([pts, far]))
    B = phhz(Xo, p)
    D = diameter(Xo)
    want = [(Bigrade(0, 0), 0.0, math.inf), (Bigrade(1, 2), 0.0, D)]
    if [tuple(b) for b in B] != want:
        return False, f"points={_pts(pts)}: {list(B)}"
    if Xo.n * X.n > 30:
        return True, ""
    lhs = bottleneck(phhz(X, p), B)
    ok, msg = _stability(lhs, 2 * gromov_hausdorff(X, Xo), tol, "W(phhz) <= 2 dGH")
    return ok, f"{msg} points={_pts(pts)}"


def check_bar_counts(model: RandomModel, rng, p: int = 2, tol: float = TOLERANCE):
    """Bars of the bigraded barcode alive at each grid value match the Betti table there."""
    pts = model.points(rng, int(rng.integers(model.n_min, min(model.n_max, 6) + 1)))
    X = from_points(pts)
    B = phz(X, p)
    cache = HomologyCache(p)
    for t in B.grid:
        table = betti_table(vietoris_rips(X, t), p, cache=cache)
        for b in set(table) | set(B.grades()):
            if not in_trapezoid(b, X.n):
                return False, f"points={_pts(pts)} bigrade {b} outside the trapezoid"
            if B.count_at(b, t, tol) != table.get(b, 0):
                return False, f"points={_pts(pts)} t={t} bigrade {b}"
    return True, ""


CHECKS = {
    "surgery": check_surgery,
    "nilpotency": check_nilpotency,
    "doubling_hh": check_doubling_hh,
    "doubling_phhz": check_doubling_phhz,
    "stability_gh": check_stability_gh,
    "stability_perturbed": check_stability_perturbed,
    "stability_bijective": check_stability_bijective,
    "outlier": check_outlier,
    "bar_counts": check_bar_counts,
}


def run_check(name: str, model: RandomModel, trial: int, p: int = 2) -> CheckResult:
    fn: Callable = CHECKS[name]
    try:
        ok, detail = fn(model, model.rng(trial), p)
    except Exception as exc:  # a crash is a failure with reproduction data, not an abort
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, model.seed, trial, bool(ok), detail)


def run_property_suite(model: RandomModel, trials: int = 50, p: int = 2, checks=None, threads: int = 1) -> Report:
    names = list(CHECKS) if checks is None else list(checks)
    unknown = set(names) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    jobs = [(name, t) for t in range(trials) for name in names]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: run_check(job[0], model, job[1], p), jobs))
    else:
        results = [run_check(name, model, t, p) for name, t in jobs]
    results.sort(key=lambda r: (r.seed, r.trial, r.name))
    return Report(results)
