"""Bigraded homology of the moment-angle complex via the Hochster decomposition.

``H_{-i,2j}(Z_K)`` is the direct sum of ``H~_{j-i-1}(K_I)`` over vertex subsets
``I`` with ``|I| = j``. A bigrade is stored as the pair ``(i, j)`` of
nonnegative integers; it stands for the bidegree ``(-i, 2j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional


from .complex import SimplicialComplex, bits
from .config import VERTEX_CAP, check_vertex_cap
from .homology import HomologyCache, homology_of, induced_map
from .linalg import DEFAULT_FIELD, identity, zeros


class Bigrade(NamedTuple):
    i: int
    j: int

    @property
    def degree(self) -> int:
        """Homological degree of the full subcomplexes contributing here."""
        return self.j - self.i - 1

    def label(self) -> str:
        return f"(-{self.i},{2 * self.j})" if self.i else f"(0,{2 * self.j})"


def bigrade_of(subset_size: int, degree: int) -> Bigrade:
    return Bigrade(subset_size - degree - 1, subset_size)


def in_trapezoid(b, m: int) -> bool:
    """Where a nonzero bigraded Betti number of a complex on ``m`` vertices may sit."""
    i, j = b
    if j == 0:
        return i == 0
    return 1 <= i <= j - 1 and j <= m and i <= max(m - 1, 0)


class Summand(NamedTuple):
    subset: int
    degree: int
    offset: int
    dim: int


def subsets_by_size(vertex_mask: int) -> list:
    """All subsets of ``vertex_mask``, by size then by mask value."""
    verts = bits(vertex_mask)
    subs = [0]
    for v in verts:
        subs += [s | (1 << v) for s in subs]
    return sorted(subs, key=lambda s: (s.bit_count(), s))


@dataclass(eq=False)
class HochsterGroup:
    """Reduced homology of every full subcomplex, indexed by bigrade.

    Within a bigrade the summands are ordered by subset mask; coordinates of
    a bigrade vector are the concatenated class coordinates of the summands.
    """

    complex: SimplicialComplex
    field: int
    summands: dict
    layout: dict = field(default_factory=dict)

    def __post_init__(self):
        layout = {}
        for I in sorted(self.summands, key=lambda s: (s.bit_count(), s)):
            basis = self.summands[I]
            for d, dim in basis.betti().items():
                b = bigrade_of(I.bit_count(), d)
                entries = layout.setdefault(b, [])
                offset = entries[-1].offset + entries[-1].dim if entries else 0
                entries.append(Summand(I, d, offset, dim))
        self.layout = dict(sorted(layout.items()))

    def dim(self, b) -> int:
        entries = self.layout.get(Bigrade(*b))
        return 0 if not entries else entries[-1].offset + entries[-1].dim

    def bigrades(self) -> list:
        return list(self.layout)

    def betti(self) -> dict:
        return {b: self.dim(b) for b in self.layout}

    def locate(self, b, subset: int) -> Optional[Summand]:
        for s in self.layout.get(Bigrade(*b), ()):
            if s.subset == subset:
                return s
        return None


def bigraded_homology(K: SimplicialComplex, p: int = DEFAULT_FIELD, cap: int = VERTEX_CAP,
                      cache: Optional[HomologyCache] = None) -> HochsterGroup:
    """Hochster decomposition of ``H_*(Z_K)``: homology of ``K_I`` for every vertex subset ``I``.

    The empty subset contributes ``H~_{-1}`` of the empty complex, one class at ``(0, 0)``.
    """
    check_vertex_cap(K.n_vertices, cap)
    summands = {}
    for I in subsets_by_size(K.vertex_mask):
        summands[I] = homology_of(K.full_subcomplex(I), p, cache)
    return HochsterGroup(K, p, summands)


def betti_table(K: SimplicialComplex, p: int = DEFAULT_FIELD, cap: int = VERTEX_CAP,
                cache: Optional[HomologyCache] = None) -> dict:
    """Nonzero ``beta_{-i,2j}(K)`` keyed by ``Bigrade(i, j)``."""
    table = bigraded_homology(K, p, cap, cache).betti()
    for b in table:
        if not in_trapezoid(b, K.n_vertices):
            raise RuntimeError(f"nonzero Betti number at {b.label()} outside the admissible region")
    return table


def betti_csv(table: dict) -> str:
    """Betti table as CSV: one row per ``-i``, one column per ``2j``."""
    if not table:
        return "-i\\2j\n"
    max_i = max(b[0] for b in table)
    max_j = max(b[1] for b in table)
    lines = ["-i\\2j," + ",".join(str(2 * j) for j in range(max_j + 1))]
    for i in range(max_i + 1):
        row = [str(table.get(Bigrade(i, j), 0)) for j in range(max_j + 1)]
        lines.append(f"{-i}," + ",".join(row))
    return "\n".join(lines) + "\n"


def induced_bigraded_map(hK: HochsterGroup, hL: HochsterGroup) -> dict:
    """Block-diagonal matrices of ``H_{-i,2j}(Z_K) -> H_{-i,2j}(Z_L)`` for ``K`` inside ``L``."""
    if hK.complex.vertex_mask != hL.complex.vertex_mask:
        raise ValueError("induced maps need complexes on the same vertex set")
    if hK.field != hL.field:
        raise ValueError("Hochster groups over different fields")
    out = {}
    for b in sorted(set(hK.layout) | set(hL.layout)):
        M = zeros(hL.dim(b), hK.dim(b))
        for s in hK.layout.get(b, ()):
            t = hL.locate(b, s.subset)
            if t is None:
                continue
            src, dst = hK.summands[s.subset], hL.summands[s.subset]
            block = identity(s.dim) if src is dst else induced_map(src, dst, s.degree)
            M[t.offset:t.offset + t.dim, s.offset:s.offset + s.dim] = block
        out[b] = M
    return out
