"""Persistence towers on critical-value grids, barcode extraction, and the
three pipelines: ordinary (PH), bigraded (PHZ) and double-homology (PHHZ)
persistent homology of a finite pseudo-metric space.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Hashable, NamedTuple, Optional

import numpy as np

from .complex import RipsFiltration, SimplicialComplex
from .config import TOLERANCE, VERTEX_CAP, check_vertex_cap
from .double import double_homology, induced_map_HH
from .hochster import Bigrade, bigrade_of
from .homology import HomologyCache, induced_map
from .linalg import DEFAULT_FIELD, identity, matmul, rank, zeros
from .metric import PseudoMetricSpace

INF = math.inf


@dataclass
class Tower:
    """A persistence module sampled on a grid: ``dims[k]`` at ``grid[k]`` and
    ``steps[k]`` the map from index ``k`` to ``k + 1`` (shape ``dims[k+1] x dims[k]``)."""

    grid: np.ndarray
    grade: Hashable
    dims: list
    steps: list

    def __post_init__(self):
        if len(self.dims) != len(self.grid):
            raise ValueError("one dimension per grid value is required")
        if len(self.steps) != max(len(self.dims) - 1, 0):
            raise ValueError("one transition per consecutive pair of grid values is required")
        for k, S in enumerate(self.steps):
            if S.shape != (self.dims[k + 1], self.dims[k]):
                raise ValueError(f"step {k} has shape {S.shape}, expected {(self.dims[k + 1], self.dims[k])}")


class Bar(NamedTuple):
    grade: Hashable
    birth: float
    death: float  # math.inf for classes that never die

    @property
    def finite(self) -> bool:
        return self.death != INF


@dataclass(eq=False)
class Barcode:
    """Multiset of bars. ``kind`` is ``"degree"`` (grade = homological degree)
    or ``"bigraded"`` (grade = ``Bigrade(i, j)`` for bidegree ``(-i, 2j)``)."""

    bars: list
    kind: str = "degree"
    grid: Optional[np.ndarray] = None

    def __post_init__(self):
        norm = []
        for bar in self.bars:
            g = Bigrade(*bar[0]) if self.kind == "bigraded" else int(bar[0])
            norm.append(Bar(g, float(bar[1]), float(bar[2])))
        self.bars = sorted(norm)
        for bar in self.bars:
            if not bar.birth < bar.death:
                raise ValueError(f"bar {bar} must have birth < death")

    def __eq__(self, other):
        if not isinstance(other, Barcode):
            return NotImplemented
        return self.kind == other.kind and self.bars == other.bars

    def __len__(self):
        return len(self.bars)

    def __iter__(self):
        return iter(self.bars)

    def grades(self) -> list:
        return sorted({b.grade for b in self.bars})

    def by_grade(self) -> dict:
        out = {}
        for b in self.bars:
            out.setdefault(b.grade, []).append((b.birth, b.death))
        return out

    def count_at(self, grade, t: float, tol: float = TOLERANCE) -> int:
        """Number of bars of ``grade`` containing ``t`` (left-closed, right-open)."""
        return sum(1 for b in self.bars if b.grade == grade and b.birth <= t + tol and t + tol < b.death)

    def restrict(self, grades) -> "Barcode":
        keep = set(grades)
        return Barcode([b for b in self.bars if b.grade in keep], self.kind, self.grid)


def composite_ranks(T: Tower, p: int = DEFAULT_FIELD) -> np.ndarray:
    """``r[s, t]`` = rank of the composite map from index ``s`` to ``t`` (``s <= t``)."""
    N = len(T.dims)
    r = np.zeros((N, N), dtype=np.int64)
    for s in range(N):
        r[s, s] = T.dims[s]
        M = identity(T.dims[s])
        for t in range(s + 1, N):
            if r[s, t - 1] == 0:
                break
            M = matmul(T.steps[t - 1], M, p)
            r[s, t] = rank(M, p)
    return r


def tower_barcode(T: Tower, p: int = DEFAULT_FIELD) -> list:
    """Bars of a tower from its rank function.

    A bar ``[grid[b], grid[d])`` has multiplicity
    ``r(b, d-1) - r(b, d) - r(b-1, d-1) + r(b-1, d)``, with ranks into index ``N``
    (past the grid) and out of index ``-1`` taken as zero; ``d = N`` means death at infinity.
    """
    N = len(T.dims)
    if N == 0 or not any(T.dims):
        return []
    r = composite_ranks(T, p)

    def R(s, t):
        if s < 0 or t >= N:
            return 0
        return int(r[s, t])

    bars = []
    for b in range(N):
        if T.dims[b] == 0:
            continue
        for d in range(b + 1, N + 1):
            mult = R(b, d - 1) - R(b, d) - R(b - 1, d - 1) + R(b - 1, d)
            if mult < 0:
                raise RuntimeError("negative interval multiplicity; tower maps are inconsistent")
            death = INF if d == N else float(T.grid[d])
            bars.extend([Bar(T.grade, float(T.grid[b]), death)] * mult)
    return bars


def _step(bK, bL, d):
    return identity(bK.dim(d)) if bK is bL else induced_map(bK, bL, d)


def _subset_towers(filt: RipsFiltration, subset: int, cache: HomologyCache) -> list:
    """Towers of reduced homology in every degree for the subspace on ``subset``."""
    levels = filt.levels_of(subset)
    masks, lv = filt.subset_view(subset)
    bases = [cache(SimplicialComplex.from_masks(filt.n, masks[lv <= k])) for k in levels]
    grid = filt.grid[levels]
    towers = []
    for d in range(0, subset.bit_count() - 1):
        dims = [b.dim(d) for b in bases]
        if not any(dims):
            continue
        steps = [_step(bases[k], bases[k + 1], d) for k in range(len(bases) - 1)]
        towers.append(Tower(grid, d, dims, steps))
    return towers


def _prepare(X, p, cap, filtration, cache):
    check_vertex_cap(X.n, cap)
    filt = filtration if filtration is not None else RipsFiltration(X, cap=cap)
    if cache is None:
        cache = HomologyCache(p)
    elif cache.field != p:
        raise ValueError("cache was built for a different field")
    return filt, cache


def persistent_homology(X: PseudoMetricSpace, p: int = DEFAULT_FIELD, cap: int = VERTEX_CAP,
                        filtration: Optional[RipsFiltration] = None,
                        cache: Optional[HomologyCache] = None) -> Barcode:
    """Reduced persistent homology of the Rips filtration, graded by degree.

    Reduced homology of a finite space vanishes once the complex is a simplex,
    so every bar is finite.
    """
    filt, cache = _prepare(X, p, cap, filtration, cache)
    full = (1 << X.n) - 1
    bars = [bar for T in _subset_towers(filt, full, cache) for bar in tower_barcode(T, p)]
    if any(not b.finite for b in bars):
        raise RuntimeError("reduced persistent homology of a finite space produced an infinite bar")
    return Barcode(bars, "degree", filt.grid)


def phz(X: PseudoMetricSpace, p: int = DEFAULT_FIELD, cap: int = VERTEX_CAP, threads: int = 1,
        filtration: Optional[RipsFiltration] = None, cache: Optional[HomologyCache] = None) -> Barcode:
    """Bigraded persistent homology through the subset decomposition.

    Each degree-``d`` bar of the subspace ``J`` is placed at bigrade
    ``(|J| - d - 1, |J|)``; the empty subset adds ``[0, inf)`` at ``(0, 0)``.
    """
    filt, cache = _prepare(X, p, cap, filtration, cache)
    subsets = list(range(1, 1 << X.n))

    def run(J):
        return [Bar(bigrade_of(J.bit_count(), T.grade), bar.birth, bar.death)
                for T in _subset_towers(filt, J, cache) for bar in tower_barcode(T, p)]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run, subsets))
    else:
        chunks = [run(J) for J in subsets]
    bars = [Bar(Bigrade(0, 0), 0.0, INF)] + [bar for chunk in chunks for bar in chunk]
    if any(not b.finite and b.grade != (0, 0) for b in bars):
        raise RuntimeError("infinite bar outside bigrade (0, 0)")
    return Barcode(bars, "bigraded", filt.grid)


def hh_filtration(X: PseudoMetricSpace, p: int = DEFAULT_FIELD, cap: int = VERTEX_CAP,
                  filtration: Optional[RipsFiltration] = None, cache: Optional[HomologyCache] = None):
    """Double homology of ``R(X, t)`` at every critical value and the maps between them."""
    filt, cache = _prepare(X, p, cap, filtration, cache)
    hh = [double_homology(filt.complex(k), p, cap, cache) for k in range(len(filt.grid))]
    maps = [induced_map_HH(hh[k], hh[k + 1]) for k in range(len(hh) - 1)]
    return filt, hh, maps


def phhz(X: PseudoMetricSpace, p: int = DEFAULT_FIELD, cap: int = VERTEX_CAP,
         filtration: Optional[RipsFiltration] = None, cache: Optional[HomologyCache] = None) -> Barcode:
    """Bigraded persistent double homology: towers of ``HH`` over the full grid."""
    filt, hh, maps = hh_filtration(X, p, cap, filtration, cache)
    grades = sorted({b for h in hh for b in h.dims()})
    bars = []
    for g in grades:
        dims = [h.dim(g) for h in hh]
        steps = [maps[k].get(g, zeros(dims[k + 1], dims[k])) for k in range(len(maps))]
        bars.extend(tower_barcode(Tower(filt.grid, g, dims, steps), p))
    if any(not b.finite and b.grade != (0, 0) for b in bars):
        raise RuntimeError("infinite bar outside bigrade (0, 0)")
    return Barcode(bars, "bigraded", filt.grid)


def top_level(barcode: Barcode, m: int) -> Barcode:
    """Bars of a bigraded barcode with ``j = m``, regraded by homological degree."""
    return Barcode([(b.grade.degree, b.birth, b.death) for b in barcode if b.grade.j == m], "degree", barcode.grid)
