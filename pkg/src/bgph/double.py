"""Double homology: the homology of the Hochster group under the second
differential that adds one vertex to the index subset.

On the summand ``H~_d(K_I)`` the differential is
``(-1)^(d+1) * sum over j not in I of eps(j, I) * phi``, where ``phi`` is
induced by ``K_I -> K_{I+j}`` and ``eps(j, I) = (-1)^#{i in I : i < j}``.
It sends bigrade ``(i, j)`` to ``(i + 1, j + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complex import bits
from .config import VERTEX_CAP
from .hochster import Bigrade, HochsterGroup, bigraded_homology, induced_bigraded_map
from .homology import HomologyCache, induced_map
from .linalg import DEFAULT_FIELD, kernel_basis, matmul, quotient_basis, zeros

# chain-map checks on filtration steps; cheap at the sizes handled here
VERIFY_CHAIN_MAPS = True


class ChainMapError(RuntimeError):
    """A block map failed to commute with the second differential."""


def sign_epsilon(j: int, subset) -> int:
    """``(-1)`` to the number of elements of ``subset`` below ``j``."""
    mask = subset if isinstance(subset, int) else sum(1 << v for v in subset)
    if mask >> j & 1:
        raise ValueError(f"{j} already lies in the subset")
    return -1 if (mask & ((1 << j) - 1)).bit_count() % 2 else 1


def _target(b) -> Bigrade:
    return Bigrade(b[0] + 1, b[1] + 1)


@dataclass(eq=False)
class DoubleChainComplex:
    """Hochster group together with the matrices of the second differential.

    ``differentials[b]`` is the matrix from bigrade ``b`` to ``(b.i + 1, b.j + 1)``.
    """

    hochster: HochsterGroup
    differentials: dict

    @property
    def field(self) -> int:
        return self.hochster.field

    def outgoing(self, b) -> np.ndarray:
        b = Bigrade(*b)
        D = self.differentials.get(b)
        return D if D is not None else zeros(self.hochster.dim(_target(b)), self.hochster.dim(b))

    def incoming(self, b) -> np.ndarray:
        b = Bigrade(*b)
        return self.outgoing(Bigrade(b.i - 1, b.j - 1)) if b.i and b.j else zeros(self.hochster.dim(b), 0)


def build_partial_prime(H: HochsterGroup) -> DoubleChainComplex:
    """Assemble the second differential block by block and check it squares to zero."""
    p = H.field
    verts = bits(H.complex.vertex_mask)
    diffs = {}
    for b, entries in H.layout.items():
        tb = _target(b)
        D = zeros(H.dim(tb), H.dim(b))
        if D.size:
            for s in entries:
                sign_d = -1 if (s.degree + 1) % 2 else 1
                for v in verts:
                    if s.subset >> v & 1:
                        continue
                    t = H.locate(tb, s.subset | (1 << v))
                    if t is None:
                        continue
                    phi = induced_map(H.summands[s.subset], H.summands[t.subset], s.degree)
                    coeff = (sign_d * sign_epsilon(v, s.subset)) % p
                    D[t.offset:t.offset + t.dim, s.offset:s.offset + s.dim] += coeff * phi
            D %= p
        diffs[b] = D
    chain = DoubleChainComplex(H, diffs)
    for b in diffs:
        nxt = chain.outgoing(_target(b))
        if nxt.size and diffs[b].size and np.any(matmul(nxt, diffs[b], p)):
            raise RuntimeError(f"second differential does not square to zero at {b.label()}")
    return chain


@dataclass(eq=False)
class DoubleHomology:
    """Double homology with class representatives in Hochster coordinates."""

    chain: DoubleChainComplex
    reps: dict
    proj: dict

    @property
    def field(self) -> int:
        return self.chain.field

    def dim(self, b) -> int:
        r = self.reps.get(Bigrade(*b))
        return 0 if r is None else r.shape[1]

    def dims(self) -> dict:
        return {b: r.shape[1] for b, r in sorted(self.reps.items()) if r.shape[1]}

    def classify(self, b, vectors: np.ndarray) -> np.ndarray:
        b = Bigrade(*b)
        if self.dim(b) == 0:
            return zeros(0, np.shape(vectors)[1])
        return matmul(self.proj[b], vectors, self.field)


def double_homology(K, p: int = DEFAULT_FIELD, cap: int = VERTEX_CAP,
                    cache: Optional[HomologyCache] = None) -> DoubleHomology:
    """``ker / im`` of the second differential in every bigrade.

    ``K`` may be a complex, a ``HochsterGroup`` or an assembled chain complex.
    """
    if isinstance(K, DoubleChainComplex):
        chain = K
    else:
        H = K if isinstance(K, HochsterGroup) else bigraded_homology(K, p, cap, cache)
        chain = build_partial_prime(H)
    q = chain.field
    reps, proj = {}, {}
    for b in chain.hochster.layout:
        Z = kernel_basis(chain.outgoing(b), q)
        r, pr = quotient_basis(Z, chain.incoming(b), q, independent=True)
        if r.shape[1]:
            reps[b], proj[b] = r, pr
    return DoubleHomology(chain, reps, proj)


def check_chain_map(F: dict, cK: DoubleChainComplex, cL: DoubleChainComplex) -> None:
    p = cK.field
    for b in set(cK.hochster.layout) | set(cL.hochster.layout):
        b = Bigrade(*b)
        tb = _target(b)
        Fb = F.get(b, zeros(cL.hochster.dim(b), cK.hochster.dim(b)))
        Ft = F.get(tb, zeros(cL.hochster.dim(tb), cK.hochster.dim(tb)))
        left = matmul(cL.outgoing(b), Fb, p) if Fb.size else zeros(Ft.shape[0], Fb.shape[1])
        right = matmul(Ft, cK.outgoing(b), p) if Ft.size else zeros(Ft.shape[0], Fb.shape[1])
        if left.shape == right.shape and np.any(left != right):
            raise ChainMapError(f"block map does not commute with the second differential at {b.label()}")


def induced_map_HH(hhK: DoubleHomology, hhL: DoubleHomology, check: Optional[bool] = None) -> dict:
    """Matrices of ``HH(Z_K) -> HH(Z_L)`` per bigrade for ``K`` inside ``L``."""
    F = induced_bigraded_map(hhK.chain.hochster, hhL.chain.hochster)
    if VERIFY_CHAIN_MAPS if check is None else check:
        check_chain_map(F, hhK.chain, hhL.chain)
    out = {}
    for b in sorted(set(hhK.reps) | set(hhL.reps)):
        dK, dL = hhK.dim(b), hhL.dim(b)
        if dK == 0 or dL == 0:
            out[b] = zeros(dL, dK)
            continue
        pushed = matmul(F[b], hhK.reps[b], hhK.field)
        out[b] = hhL.classify(b, pushed)
    return out
