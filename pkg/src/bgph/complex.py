"""Simplicial complexes on labelled vertices, Vietoris-Rips (flag) complexes,
critical values, full subcomplexes, vertex doubling and simplex gluing.

Faces are stored as integer bitmasks over the vertex labels ``0..m-1``; a
face of dimension ``k`` is a mask with ``k + 1`` bits set.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .config import TOLERANCE, VERTEX_CAP, CapExceededError
from .metric import PseudoMetricSpace

EMPTY = np.zeros(0, dtype=np.int64)


def to_mask(vertices) -> int:
    if isinstance(vertices, (int, np.integer)):
        return int(vertices)
    mask = 0
    for v in vertices:
        mask |= 1 << int(v)
    return mask


def bits(mask: int) -> tuple:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(np.asarray(masks, dtype=np.int64)).astype(np.int64)


def _split_by_dim(masks: np.ndarray) -> dict:
    masks = np.unique(np.asarray(masks, dtype=np.int64))
    masks = masks[masks != 0]
    if masks.size == 0:
        return {}
    sizes = popcount(masks)
    return {int(s) - 1: masks[sizes == s] for s in np.unique(sizes)}


def _submasks(mask: int):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


class SimplicialComplex:
    """Abstract simplicial complex; the empty face is always present.

    ``m`` is the size of the label range. Every label in ``vertex_mask`` is a
    vertex; full subcomplexes keep the original labels, so their vertex set
    is the chosen subset rather than all of ``[m]``.
    """

    def __init__(self, m: int, faces: Iterable[int] = (), *, vertex_mask: Optional[int] = None, _by_dim=None):
        self.m = int(m)
        if _by_dim is None:
            _by_dim = _split_by_dim(np.fromiter((to_mask(f) for f in faces), dtype=np.int64))
            for k in sorted(_by_dim):
                if k == 0:
                    continue
                lower = set(_by_dim.get(k - 1, EMPTY).tolist())
                for f in _by_dim[k].tolist():
                    for v in bits(f):
                        if f & ~(1 << v) not in lower:
                            raise ValueError(f"face {bits(f)} is missing its facet {bits(f & ~(1 << v))}")
        self._by_dim = _by_dim
        verts = _by_dim.get(0, EMPTY)
        self.vertex_mask = int(np.bitwise_or.reduce(verts)) if verts.size else 0
        if vertex_mask is not None and vertex_mask != self.vertex_mask:
            raise ValueError("vertex set does not match the singleton faces")
        if self.vertex_mask >> self.m:
            raise ValueError(f"vertex label out of range for m={self.m}")

    @classmethod
    def from_simplices(cls, m: int, simplices: Iterable) -> "SimplicialComplex":
        """Smallest complex containing the given simplices (and all vertices ``0..m-1``)."""
        faces = set(1 << v for v in range(m))
        for s in simplices:
            faces.update(_submasks(to_mask(s)))
        return cls(m, faces)

    @classmethod
    def from_masks(cls, m: int, masks) -> "SimplicialComplex":
        """Build from an already closed collection of face masks (no closure check)."""
        return cls(m, _by_dim=_split_by_dim(masks))

    def faces(self, k: int) -> np.ndarray:
        """Sorted masks of the ``k``-dimensional faces; ``k = -1`` gives the empty face."""
        if k == -1:
            return np.zeros(1, dtype=np.int64)
        return self._by_dim.get(k, EMPTY)

    def simplices(self, k: Optional[int] = None) -> list:
        dims = range(self.dimension + 1) if k is None else [k]
        return [bits(int(f)) for d in dims for f in self.faces(d)]

    @property
    def dimension(self) -> int:
        return max(self._by_dim, default=-1)

    @property
    def vertices(self) -> tuple:
        return bits(self.vertex_mask)

    @property
    def n_vertices(self) -> int:
        return self.vertex_mask.bit_count()

    def __contains__(self, simplex) -> bool:
        mask = to_mask(simplex)
        if mask == 0:
            return True
        arr = self.faces(mask.bit_count() - 1)
        i = np.searchsorted(arr, mask)
        return bool(i < arr.size and arr[i] == mask)

    def face_count(self) -> int:
        return sum(self.faces(k).size for k in range(self.dimension + 1))

    def is_simplex(self) -> bool:
        """True when every subset of the vertex set is a face (the empty complex is not a simplex)."""
        return self.n_vertices > 0 and self.face_count() == (1 << self.n_vertices) - 1

    @cached_property
    def key(self) -> bytes:
        """Content hash input: identical face sets give identical keys."""
        return b"|".join(self.faces(k).tobytes() for k in range(self.dimension + 1))

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertex_mask == other.vertex_mask and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"{type(self).__name__}(m={self.m}, vertices={self.vertices}, faces={self.face_count()})"

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        for k in range(self.dimension + 1):
            mine = self.faces(k)
            if mine.size and not np.all(np.isin(mine, other.faces(k))):
                return False
        return True

    def full_subcomplex(self, subset) -> "SimplicialComplex":
        """Faces contained in ``subset``; labels are kept."""
        mask = to_mask(subset)
        if mask & ~self.vertex_mask:
            raise ValueError("subset contains labels that are not vertices")
        by_dim = {}
        for k, arr in self._by_dim.items():
            sel = arr[(arr & ~mask) == 0]
            if sel.size:
                by_dim[k] = sel
        return SimplicialComplex(self.m, _by_dim=by_dim)

    def restrict_dimension(self, top: int) -> "SimplicialComplex":
        return SimplicialComplex(self.m, _by_dim={k: a for k, a in self._by_dim.items() if k <= top})


class FlagComplex(SimplicialComplex):
    """Clique complex of a graph given by adjacency bitmasks.

    Faces are enumerated on demand, one dimension at a time, by extending each
    clique with common neighbours of larger label.
    """

    def __init__(self, m: int, adjacency, *, vertex_mask: Optional[int] = None, _by_dim=None):
        self.m = int(m)
        if np.ndim(adjacency) == 2:  # 0/1 matrix rather than bitmask rows
            adjacency = [sum(1 << int(w) for w in np.flatnonzero(row)) for row in np.asarray(adjacency)]
        adj = [int(a) for a in adjacency]
        if len(adj) != self.m:
            raise ValueError("one adjacency row per label is required")
        self.vertex_mask = (1 << self.m) - 1 if vertex_mask is None else int(vertex_mask)
        for v in range(self.m):
            if adj[v] >> v & 1:
                raise ValueError("adjacency must not contain loops")
            for w in bits(adj[v]):
                if not adj[w] >> v & 1:
                    raise ValueError("adjacency must be symmetric")
        self.adjacency = tuple(a & self.vertex_mask if self.vertex_mask >> v & 1 else 0 for v, a in enumerate(adj))
        if _by_dim is None:
            verts = np.array([1 << v for v in bits(self.vertex_mask)], dtype=np.int64)
            _by_dim = {0: verts} if verts.size else {}
            self._complete = False
        else:
            self._complete = True
        self._by_dim = dict(_by_dim)
        self._frontier = None

    @classmethod
    def from_edges(cls, m: int, edges) -> "FlagComplex":
        adj = [0] * m
        for a, b in edges:
            if a == b:
                continue
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(m, adj)

    def _grow(self, k: int) -> None:
        if self._complete:
            return
        while not self._complete and max(self._by_dim, default=-1) < k:
            top = max(self._by_dim, default=-1)
            if top < 0:
                self._complete = True
                return
            if self._frontier is None:
                self._frontier = [(1 << v, self.adjacency[v] & ~((2 << v) - 1)) for v in bits(self.vertex_mask)]
            nxt = []
            for clique, cand in self._frontier:
                c = cand
                while c:
                    low = c & -c
                    v = low.bit_length() - 1
                    c ^= low
                    nxt.append((clique | low, cand & self.adjacency[v] & ~((2 << v) - 1)))
            if not nxt:
                self._complete = True
                return
            self._frontier = nxt
            self._by_dim[top + 1] = np.array(sorted(c for c, _ in nxt), dtype=np.int64)

    def faces(self, k: int) -> np.ndarray:
        if k >= 0:
            self._grow(k)
        return super().faces(k)

    @property
    def dimension(self) -> int:
        self._grow(self.m)
        return max(self._by_dim, default=-1)

    @cached_property
    def key(self) -> bytes:
        self._grow(self.m)
        return super().key

    def edges(self) -> list:
        return [(a, b) for a in range(self.m) for b in bits(self.adjacency[a]) if a < b]

    def full_subcomplex(self, subset) -> "FlagComplex":
        mask = to_mask(subset)
        if mask & ~self.vertex_mask:
            raise ValueError("subset contains labels that are not vertices")
        adj = [a & mask if mask >> v & 1 else 0 for v, a in enumerate(self.adjacency)]
        by_dim = None
        if self._complete:
            by_dim = {}
            for k, arr in self._by_dim.items():
                sel = arr[(arr & ~mask) == 0]
                if sel.size:
                    by_dim[k] = sel
        return FlagComplex(self.m, adj, vertex_mask=mask, _by_dim=by_dim)


def empty_complex(m: int = 0) -> SimplicialComplex:
    return SimplicialComplex(m, _by_dim={})


def simplex(vertices, m: Optional[int] = None) -> SimplicialComplex:
    mask = to_mask(vertices)
    m = mask.bit_length() if m is None else m
    return SimplicialComplex(m, _by_dim=_split_by_dim(np.fromiter(_submasks(mask), dtype=np.int64)))


def critical_values(X: PseudoMetricSpace, tol: float = TOLERANCE) -> np.ndarray:
    """``{0}`` together with all pairwise distances, sorted, merged within ``tol``."""
    vals = np.sort(np.concatenate([[0.0], X.dist[np.triu_indices(X.n, 1)]]))
    keep = [vals[0]]
    for v in vals[1:]:
        if v - keep[-1] > tol:
            keep.append(v)
    return np.array(keep, dtype=np.float64)


def vietoris_rips(X: PseudoMetricSpace, t: float, tol: float = TOLERANCE) -> FlagComplex:
    """Clique complex of the graph with an edge ``{x, y}`` whenever ``d(x, y) <= t``."""
    if t < 0:
        raise ValueError("filtration parameter must be nonnegative")
    close = X.dist <= t + tol
    np.fill_diagonal(close, False)
    adj = [int(sum(1 << int(w) for w in np.flatnonzero(row))) for row in close]
    return FlagComplex(X.n, adj)


class RipsFiltration:
    """Vietoris-Rips filtration of ``X`` sampled at its critical values.

    Every pairwise distance is snapped to its grid index, so ``complex(k)`` is
    the Rips complex at ``grid[k]`` and grid comparisons are exact integers.
    Faces are read off a table of subset diameters instead of enumerating
    cliques: a subset is a face at level ``k`` iff its diameter level is ``<= k``.
    """

    def __init__(self, X: PseudoMetricSpace, tol: float = TOLERANCE, cap: int = VERTEX_CAP):
        if X.n > cap:
            raise CapExceededError(f"{X.n} points exceed the vertex cap of {cap}")
        self.space = X
        self.grid = critical_values(X, tol)
        n = X.n
        level = np.zeros((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(a + 1, n):
                k = int(np.searchsorted(self.grid, X.dist[a, b] - tol, side="left"))
                level[a, b] = level[b, a] = min(k, len(self.grid) - 1)
        self.level = level
        table = _kernels.subset_diameters(level.astype(np.float64)).astype(np.int64)
        self.masks = np.arange(1, 1 << n, dtype=np.int64)
        self.mask_level = table[1:]

    @property
    def n(self) -> int:
        return self.space.n

    def levels_of(self, subset) -> np.ndarray:
        """Grid indices at which the Rips complex of the subspace changes (always includes 0)."""
        pts = bits(to_mask(subset))
        lv = {0}
        for i, a in enumerate(pts):
            for b in pts[i + 1:]:
                lv.add(int(self.level[a, b]))
        return np.array(sorted(lv), dtype=np.int64)

    def complex(self, k: int, subset: Optional[int] = None) -> SimplicialComplex:
        """``R(X, grid[k])``, or its full subcomplex on ``subset``."""
        masks, levels = self.masks, self.mask_level
        if subset is not None:
            sel = (masks & ~int(subset)) == 0
            masks, levels = masks[sel], levels[sel]
        return SimplicialComplex.from_masks(self.n, masks[levels <= k])

    def subset_view(self, subset: int):
        """Masks and levels of the faces inside ``subset`` (for repeated slicing)."""
        sel = (self.masks & ~int(subset)) == 0
        return self.masks[sel], self.mask_level[sel]


def double_vertex(K: SimplicialComplex, i: int) -> SimplicialComplex:
    """Add a twin ``i'`` (label ``K.m``) of vertex ``i`` joined to everything ``i`` is.

    The result contains ``K`` and every ``sigma + {i'}`` with ``i`` in ``sigma``.
    """
    if not (0 <= i < K.m and K.vertex_mask >> i & 1):
        raise ValueError(f"{i} is not a vertex")
    twin = 1 << K.m
    if isinstance(K, FlagComplex):
        adj = list(K.adjacency) + [K.adjacency[i] | (1 << i)]
        adj = [a | twin if (a >> i & 1) or v == i else a for v, a in enumerate(adj[:-1])] + [adj[-1]]
        return FlagComplex(K.m + 1, adj, vertex_mask=K.vertex_mask | twin)
    faces = [int(f) for k in range(K.dimension + 1) for f in K.faces(k)]
    extra = []
    for f in faces:
        if f >> i & 1:
            extra.append(f | twin)
            extra.append((f & ~(1 << i)) | twin)
    return SimplicialComplex(K.m + 1, faces + extra)


def glue_simplex(K: SimplicialComplex, face, n: int) -> SimplicialComplex:
    """Attach an ``n``-simplex along ``face`` using fresh labels for the other vertices.

    ``face`` must be a face of ``K`` (possibly empty) and a proper face of the new simplex.
    """
    mask = to_mask(face)
    size = mask.bit_count()
    if n < 0:
        raise ValueError("simplex dimension must be nonnegative")
    if mask not in K:
        raise ValueError(f"{bits(mask)} is not a face of the complex")
    if size >= n + 1:
        raise ValueError("the gluing face must be a proper face of the new simplex")
    fresh = n + 1 - size
    top = mask | (((1 << fresh) - 1) << K.m)
    faces = [int(f) for k in range(K.dimension + 1) for f in K.faces(k)]
    faces.extend(_submasks(top))
    return SimplicialComplex(K.m + fresh, faces)
