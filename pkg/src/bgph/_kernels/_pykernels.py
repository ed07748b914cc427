"""Pure numpy versions of the compiled kernels (same signatures and results)."""

import numpy as np


def rref(A, p):
    """Reduced row echelon form of ``A`` over F_p; returns ``(R, pivots)``."""
    R = np.mod(np.array(A, dtype=np.int64, copy=True), p)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-D array")
    nrows, ncols = R.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        lead = int(R[row, col])
        if lead != 1:
            R[row] = (R[row] * pow(lead, -1, p)) % p
        others = np.flatnonzero(R[:, col])
        others = others[others != row]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, col], R[row])) % p
        pivots.append(col)
        row += 1
    return R, np.asarray(pivots, dtype=np.intp)


def boundary_matrix(hi, lo, p):
    """Signed boundary matrix from face masks ``hi`` to ``lo`` (both sorted)."""
    hi = np.asarray(hi, dtype=np.int64)
    lo = np.asarray(lo, dtype=np.int64)
    D = np.zeros((lo.size, hi.size), dtype=np.int64)
    if hi.size == 0 or lo.size == 0:
        if hi.size and not lo.size:
            raise ValueError("face set is not closed under taking facets")
        return D
    neg = (p - 1) % p
    # position of each vertex within its face = number of set bits below it
    pos = np.zeros(hi.size, dtype=np.int64)
    cols = np.arange(hi.size)
    top = int(hi.max()).bit_length()
    for v in range(top):
        bit = np.int64(1) << v
        has = (hi & bit) != 0
        if not has.any():
            continue
        faces = hi[has] & ~bit
        rows = np.searchsorted(lo, faces)
        if np.any(rows >= lo.size) or np.any(lo[np.minimum(rows, lo.size - 1)] != faces):
            raise ValueError("face set is not closed under taking facets")
        D[rows, cols[has]] = np.where(pos[has] % 2 == 0, 1, neg)
        pos[has] += 1
    return D


def subset_diameters(dist):
    """Diameter of every vertex subset, indexed by bitmask (empty set -> 0)."""
    d = np.asarray(dist, dtype=np.float64)
    n = d.shape[0]
    if n > 30:
        raise ValueError("subset table limited to 30 points")
    out = np.zeros(1 << n, dtype=np.float64)
    for b in range(n):
        # masks whose highest vertex is b
        lower = np.arange(1 << b)
        reach = np.zeros(1 << b, dtype=np.float64)
        for v in range(b):
            sel = ((lower >> v) & 1).astype(bool)
            reach[sel] = np.maximum(reach[sel], d[b, v])
        out[(1 << b):(1 << (b + 1))] = np.maximum(out[: 1 << b], reach)
    return out
