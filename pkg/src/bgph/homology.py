"""Reduced simplicial homology over F_p with explicit cycle representatives,
and the maps induced by inclusions of complexes.

The chain complex is augmented by the empty simplex in degree -1, so the
empty complex has a one-dimensional reduced homology in degree -1 and every
nonempty complex has none there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .complex import SimplicialComplex
from .linalg import DEFAULT_FIELD, identity, kernel_basis, matmul, quotient_basis, zeros


@dataclass(frozen=True, eq=False)
class HomologyBasis:
    """Per-degree basis of reduced homology.

    ``faces[d + 1]`` lists the oriented ``d``-simplices (sorted bitmasks, vertices in
    increasing order); ``reps[d + 1]`` holds representative cycles as columns over
    those simplices; ``proj[d + 1]`` sends any cycle to the coordinates of its class.
    """

    field: int
    faces: tuple
    reps: tuple
    proj: tuple

    @property
    def top_degree(self) -> int:
        return len(self.faces) - 2

    def dim(self, d: int) -> int:
        if not -1 <= d <= self.top_degree:
            return 0
        return self.reps[d + 1].shape[1]

    def betti(self) -> dict:
        """Nonzero reduced Betti numbers keyed by degree."""
        return {d: self.dim(d) for d in range(-1, self.top_degree + 1) if self.dim(d)}

    def cycles(self, d: int) -> np.ndarray:
        if not -1 <= d <= self.top_degree:
            return zeros(0, 0)
        return self.reps[d + 1]

    def simplices(self, d: int) -> np.ndarray:
        if not -1 <= d <= self.top_degree:
            return np.zeros(0, dtype=np.int64)
        return self.faces[d + 1]

    def classify(self, d: int, chain: np.ndarray) -> np.ndarray:
        """Coordinates of the homology class of a cycle (or matrix of cycles)."""
        if self.dim(d) == 0:
            shape = (0,) if np.ndim(chain) == 1 else (0, np.shape(chain)[1])
            return np.zeros(shape, dtype=np.int64)
        return matmul(self.proj[d + 1], chain, self.field)


def boundary(K: SimplicialComplex, d: int, p: int = DEFAULT_FIELD) -> np.ndarray:
    """Matrix of the augmented boundary from degree ``d`` to ``d - 1``."""
    hi = K.faces(d)
    if d < 0:
        return zeros(0, hi.size)
    lo = K.faces(d - 1)
    if hi.size == 0:
        return zeros(lo.size, 0)
    return _kernels.boundary_matrix(hi, lo, p)


def reduced_homology(K: SimplicialComplex, p: int = DEFAULT_FIELD) -> HomologyBasis:
    """Reduced homology of ``K`` over F_p in every degree ``-1 .. dim K``."""
    top = K.dimension
    faces, reps, proj = [], [], []
    d_in = boundary(K, -1, p)
    for d in range(-1, top + 1):
        cur = K.faces(d)
        d_out = d_in
        d_in = boundary(K, d + 1, p)
        Z = identity(cur.size) if d == -1 else kernel_basis(d_out, p)
        r, pr = quotient_basis(Z, d_in, p, independent=True)
        faces.append(cur)
        reps.append(r)
        proj.append(pr)
    return HomologyBasis(p, tuple(faces), tuple(reps), tuple(proj))


def reduced_betti(K: SimplicialComplex, p: int = DEFAULT_FIELD) -> dict:
    """Nonzero reduced Betti numbers from ranks alone (no representatives)."""
    from .linalg import rank

    out = {}
    ranks = {d: rank(boundary(K, d, p), p) if K.faces(d).size else 0 for d in range(0, K.dimension + 2)}
    for d in range(-1, K.dimension + 1):
        n = K.faces(d).size
        dim = n - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if dim:
            out[d] = dim
    return out


def induced_map(bK: HomologyBasis, bL: HomologyBasis, d: int) -> np.ndarray:
    """Matrix of ``H_d(K) -> H_d(L)`` for a subcomplex ``K`` of ``L``.

    Each representative of ``K`` is pushed into the chains of ``L`` by matching
    simplices, then classified in the basis of ``L``.
    """
    if bK.field != bL.field:
        raise ValueError("homology bases over different fields")
    hK, hL = bK.dim(d), bL.dim(d)
    if bK is bL:
        return identity(hK)
    if hK == 0 or hL == 0:
        return zeros(hL, hK)
    src, dst = bK.simplices(d), bL.simplices(d)
    idx = np.searchsorted(dst, src)
    if np.any(idx >= dst.size) or np.any(dst[np.minimum(idx, dst.size - 1)] != src):
        raise ValueError("source complex is not a subcomplex of the target")
    pushed = zeros(dst.size, hK)
    pushed[idx] = bK.cycles(d)
    return bL.classify(d, pushed)


class HomologyCache:
    """Reduced homology keyed by face-set content, so equal complexes share one basis."""

    def __init__(self, p: int = DEFAULT_FIELD):
        self.field = p
        self._store = {}
        self.hits = 0
        self.misses = 0

    def __call__(self, K: SimplicialComplex) -> HomologyBasis:
        key = (K.vertex_mask, K.key)
        basis = self._store.get(key)
        if basis is None:
            self.misses += 1
            basis = reduced_homology(K, self.field)
            self._store[key] = basis
        else:
            self.hits += 1
        return basis

    def __len__(self):
        return len(self._store)


def homology_of(K: SimplicialComplex, p: int = DEFAULT_FIELD, cache: Optional[HomologyCache] = None) -> HomologyBasis:
    if cache is None:
        return reduced_homology(K, p)
    if cache.field != p:
        raise ValueError("cache was built for a different field")
    return cache(K)
