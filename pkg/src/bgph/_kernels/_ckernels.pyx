# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: modular row reduction, boundary assembly, subset diameters."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline int64_t _inv_mod(int64_t a, int64_t p) noexcept nogil:
    # extended Euclid; a is a nonzero residue
    cdef int64_t t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


cdef Py_ssize_t _rref_inplace(int64_t[:, ::1] a, int64_t p, Py_ssize_t[::1] pivots) noexcept nogil:
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t row = 0, col, k, c, piv
    cdef int64_t inv, f, tmp
    for col in range(ncols):
        if row == nrows:
            break
        piv = -1
        for k in range(row, nrows):
            if a[k, col] != 0:
                piv = k
                break
        if piv < 0:
            continue
        if piv != row:
            for c in range(col, ncols):
                tmp = a[row, c]
                a[row, c] = a[piv, c]
                a[piv, c] = tmp
        if a[row, col] != 1:
            inv = _inv_mod(a[row, col], p)
            for c in range(col, ncols):
                a[row, c] = (a[row, c] * inv) % p
        for k in range(nrows):
            if k == row:
                continue
            f = a[k, col]
            if f == 0:
                continue
            for c in range(col, ncols):
                if a[row, c] != 0:
                    a[k, c] = (a[k, c] - f * a[row, c]) % p
                    if a[k, c] < 0:
                        a[k, c] += p
        pivots[row] = col
        row += 1
    return row


def rref(A, long long p):
    """Reduced row echelon form of ``A`` over F_p.

    Returns ``(R, pivots)`` where ``pivots[r]`` is the pivot column of row ``r``.
    The input is not modified.
    """
    cdef cnp.ndarray[int64_t, ndim=2] R = np.ascontiguousarray(np.mod(A, p), dtype=np.int64)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-D array")
    cdef int64_t[:, ::1] view = R
    cdef cnp.ndarray[Py_ssize_t, ndim=1] piv = np.empty(min(R.shape[0], R.shape[1]) + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] pview = piv
    cdef Py_ssize_t r
    cdef int64_t pp = p
    with nogil:
        r = _rref_inplace(view, pp, pview)
    return R, piv[:r].copy()


def boundary_matrix(hi, lo, long long p):
    """Matrix of the simplicial boundary from faces ``hi`` to faces ``lo``.

    Faces are vertex bitmasks, each array sorted ascending. Column ``c`` holds the
    boundary of ``hi[c]`` with the sign of a removed vertex given by its position
    in increasing vertex order.
    """
    cdef int64_t[::1] h = np.ascontiguousarray(hi, dtype=np.int64)
    cdef int64_t[::1] l = np.ascontiguousarray(lo, dtype=np.int64)
    cdef Py_ssize_t nh = h.shape[0], nl = l.shape[0]
    cdef cnp.ndarray[int64_t, ndim=2] D = np.zeros((nl, nh), dtype=np.int64)
    cdef int64_t[:, ::1] d = D
    cdef Py_ssize_t c, lo_i, hi_i, mid, pos
    cdef uint64_t sigma, bit, face
    cdef int v
    cdef int64_t neg = (p - 1) % p
    cdef bint missing = False
    with nogil:
        for c in range(nh):
            sigma = <uint64_t>h[c]
            pos = 0
            for v in range(63):
                bit = (<uint64_t>1) << v
                if bit > sigma:
                    break
                if sigma & bit:
                    face = sigma & ~bit
                    lo_i = 0
                    hi_i = nl
                    while lo_i < hi_i:
                        mid = (lo_i + hi_i) // 2
                        if <uint64_t>l[mid] < face:
                            lo_i = mid + 1
                        else:
                            hi_i = mid
                    if lo_i == nl or <uint64_t>l[lo_i] != face:
                        missing = True
                    else:
                        d[lo_i, c] = 1 if pos % 2 == 0 else neg
                    pos += 1
    if missing:
        raise ValueError("face set is not closed under taking facets")
    return D


def subset_diameters(dist):
    """Diameter of every vertex subset, indexed by bitmask (empty set -> 0)."""
    cdef double[:, ::1] d = np.ascontiguousarray(dist, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0]
    if n > 30:
        raise ValueError("subset table limited to 30 points")
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef cnp.ndarray[double, ndim=1] out = np.zeros(size, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t mask, rest, low, v
    cdef double best, x
    with nogil:
        for mask in range(1, size):
            low = 0
            while not (mask >> low) & 1:
                low += 1
            rest = mask & (mask - 1)
            best = o[rest]
            for v in range(low + 1, n):
                if (rest >> v) & 1:
                    x = d[low, v]
                    if x > best:
                        best = x
            o[mask] = best
    return out
