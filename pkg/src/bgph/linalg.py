"""Dense linear algebra over a prime field F_p.

Matrices are ``int64`` numpy arrays with entries reduced to ``[0, p)``.
Vectors are 1-D arrays; bases are returned as matrices whose columns are
the basis vectors. Pivoting always takes the first nonzero entry in column
order, so every basis produced here is reproducible.
"""

from __future__ import annotations

import numpy as np

from . import _kernels

DEFAULT_FIELD = 2


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def check_field(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"field characteristic must be prime, got {p!r}")
    return int(p)


def as_fmatrix(A, p: int = DEFAULT_FIELD, shape=None) -> np.ndarray:
    """Coerce ``A`` to a 2-D int64 matrix reduced mod ``p``."""
    M = np.mod(np.asarray(A, dtype=np.int64), p)
    if shape is not None:
        M = M.reshape(shape)
    if M.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {M.shape}")
    return M


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(A, B, p: int = DEFAULT_FIELD) -> np.ndarray:
    # entries < p and inner dimensions stay small, so int64 cannot overflow
    return np.mod(np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64), p)


def rref(A, p: int = DEFAULT_FIELD):
    """Reduced row echelon form and pivot columns of ``A`` over F_p."""
    A = as_fmatrix(A, p)
    if A.size == 0:
        return A.copy(), np.zeros(0, dtype=np.intp)
    return _kernels.rref(A, p)


def rank(A, p: int = DEFAULT_FIELD) -> int:
    """Rank of ``A`` over F_p.

    >>> rank([[1, 1], [1, 1]])
    1
    """
    return int(len(rref(A, p)[1]))


def kernel_basis(A, p: int = DEFAULT_FIELD) -> np.ndarray:
    """Columns spanning ``{x : A x = 0}``; there are ``cols - rank(A)`` of them."""
    A = as_fmatrix(A, p)
    n = A.shape[1]
    R, pivots = rref(A, p)
    free = np.setdiff1d(np.arange(n), pivots)
    K = zeros(n, free.size)
    for k, f in enumerate(free):
        K[f, k] = 1
        K[pivots, k] = np.mod(-R[: len(pivots), f], p)
    return K


def independent_columns(A, p: int = DEFAULT_FIELD) -> np.ndarray:
    """Indices of the first maximal linearly independent set of columns."""
    A = as_fmatrix(A, p)
    if A.shape[1] == 0:
        return np.zeros(0, dtype=np.intp)
    return rref(A, p)[1]


def left_inverse(M, p: int = DEFAULT_FIELD) -> np.ndarray:
    """A matrix ``P`` with ``P @ M = I`` for ``M`` of full column rank."""
    M = as_fmatrix(M, p)
    n, k = M.shape
    if k == 0:
        return zeros(0, n)
    R, pivots = rref(np.hstack([M, identity(n)]), p)
    if len(pivots) < k or np.any(pivots[:k] != np.arange(k)):
        raise ValueError("matrix does not have full column rank")
    return R[:k, k:].copy()


def solve_in_span(B, v, p: int = DEFAULT_FIELD):
    """Coefficients ``c`` with ``B @ c = v``, or ``None`` if ``v`` is not in the span.

    When the columns of ``B`` are dependent the solution with zero free
    coefficients is returned.
    """
    B = as_fmatrix(B, p)
    v = np.mod(np.asarray(v, dtype=np.int64).ravel(), p)
    if v.size != B.shape[0]:
        raise ValueError(f"dimension mismatch: B has {B.shape[0]} rows, v has {v.size} entries")
    k = B.shape[1]
    if k == 0:
        return np.zeros(0, dtype=np.int64) if not v.any() else None
    R, pivots = rref(np.hstack([B, v[:, None]]), p)
    if len(pivots) and pivots[-1] == k:
        return None
    c = np.zeros(k, dtype=np.int64)
    c[pivots] = R[: len(pivots), k]
    return c


def quotient_basis(Z, Bd, p: int = DEFAULT_FIELD, independent: bool = False):
    """Basis of ``span(Z) / span(Bd)``.

    Returns ``(reps, proj)``: the columns of ``reps`` are representatives whose
    classes form a basis of the quotient, and ``proj @ z`` gives the
    coordinates of the class of any ``z`` in ``span(Z)`` in that basis.
    Pass ``independent=True`` when the columns of ``Z`` are known to be
    linearly independent to skip one elimination.
    """
    Z = as_fmatrix(Z, p)
    n = Z.shape[0]
    Bd = zeros(n, 0) if np.size(Bd) == 0 else as_fmatrix(Bd, p)
    if Bd.shape[0] != n:
        raise ValueError(f"dimension mismatch: {Bd.shape[0]} vs {n} rows")
    b_idx = independent_columns(Bd, p)
    Bb = Bd[:, b_idx]
    nb = len(b_idx)
    cols = independent_columns(np.hstack([Bb, Z]), p)
    z_rank = Z.shape[1] if independent else rank(Z, p)
    if len(cols) != z_rank:
        raise ValueError("boundary not contained in cycles")
    rep_cols = cols[cols >= nb] - nb
    reps = Z[:, rep_cols]
    if rep_cols.size == 0:
        return reps, zeros(0, n)
    P = left_inverse(np.hstack([Bb, reps]), p)
    return reps, P[nb:, :].copy()
