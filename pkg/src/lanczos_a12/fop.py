"""Moment-based ground truth for the solvers.

Given the moments ``c_i = (y, A^i r0)`` of the linear functional driving a
Lanczos-type iteration, this module computes Hankel determinants and the
coefficients of the orthogonal polynomial of each degree by solving the
moment system directly. Evaluating that polynomial at the operator gives a
residual the recursive solvers can be checked against, coefficient by
coefficient, on desk-scale instances (k <= 12, n <= 64 in practice; the
moment matrices are catastrophically ill-conditioned beyond that).
"""

import numpy as np

from .errors import BreakdownDetected
from .linalg import dot

__all__ = [
    "PIVOT_FLOOR",
    "moments",
    "hankel_matrix",
    "hankel_det",
    "hankel_pivot_ratio",
    "fop_coefficients",
    "oracle_residual",
    "apply_functional",
]

# A pivot below PIVOT_FLOOR times the largest matrix entry magnitude marks
# the moment system as numerically singular.
PIVOT_FLOOR = 1e-13


def moments(A, y, r0, m):
    """Return ``c_0 .. c_m`` with ``c_i = (y, A^i r0)``.

    Powers of ``A`` are never formed; a running vector is multiplied
    through instead.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    c = np.empty(m + 1)
    w = r0.copy()
    for i in range(m + 1):
        c[i] = dot(y, w)
        if not np.isfinite(c[i]):
            raise OverflowError(f"moment c_{i} is not finite")
        if i < m:
            w = A.matvec(w)
    return c


def hankel_matrix(c, k):
    """The k-by-k moment matrix with entry (i, j) = c[i + j + 1]."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(c) < 2 * k:
        raise ValueError(f"need moments up to c_{2 * k - 1}, got {len(c) - 1}")
    i = np.arange(k)
    return np.asarray(c)[i[:, None] + i[None, :] + 1]


def hankel_det(c, k):
    """Determinant of the order-k Hankel moment matrix.

    Computed by LU with partial pivoting; an exactly singular matrix gives
    0.0 rather than an error.
    """
    lu, _, sign = _plu(hankel_matrix(c, k))
    return sign * float(np.prod(np.diag(lu)))


def hankel_pivot_ratio(c, k):
    """Smallest LU pivot of the order-k moment matrix, relative to its
    largest entry. A screening measure of how trustworthy the direct
    moment-system solve is at this order."""
    m = hankel_matrix(c, k)
    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        return 0.0
    lu, _, _ = _plu(m)
    return float(np.min(np.abs(np.diag(lu)))) / scale


def fop_coefficients(c, k, pivot_floor=PIVOT_FLOOR):
    """Coefficients of the degree-k orthogonal polynomial, constant term 1.

    Solves the k-by-k moment system whose matrix is the Hankel matrix of
    ``c`` and whose right-hand side is ``-c[0:k]``. The returned array has
    length ``k + 1``; entry ``j`` multiplies the j-th operator power and
    entry 0 is exactly 1.0.

    Raises BreakdownDetected when an LU pivot falls below ``pivot_floor``
    times the largest matrix entry magnitude.
    """
    if k == 0:
        return np.ones(1)
    m = hankel_matrix(c, k)
    scale = float(np.max(np.abs(m)))
    lu, perm, _ = _plu(m)
    small = np.abs(np.diag(lu)) < pivot_floor * scale
    if scale == 0.0 or np.any(small):
        raise BreakdownDetected(
            "hankel_pivot", k,
            value=float(np.min(np.abs(np.diag(lu)))), scale=scale,
        )
    beta = _lu_solve(lu, perm, -np.asarray(c)[:k])
    return np.concatenate(([1.0], beta))


def oracle_residual(A, r0, coeffs, transpose=False):
    """Evaluate the polynomial with the given coefficients at ``A`` on ``r0``.

    Returns ``coeffs[0]*r0 + coeffs[1]*A r0 + ... `` by iterated matvec.
    With ``transpose=True`` the transpose-matvec is used instead, which
    yields the left vector of the same polynomial.
    """
    apply = A.tmatvec if transpose else A.matvec
    acc = coeffs[0] * r0
    w = r0
    for j in range(1, len(coeffs)):
        w = apply(w)
        acc = acc + coeffs[j] * w
        if not np.all(np.isfinite(acc)):
            raise OverflowError(f"polynomial evaluation overflowed at power {j}")
    return acc


def apply_functional(c, coeffs, power=0):
    """The functional applied to x^power times the polynomial: sum of
    ``coeffs[j] * c[power + j]``."""
    if power + len(coeffs) - 1 >= len(c):
        raise ValueError("not enough moments for requested power")
    acc = 0.0
    for j, b in enumerate(coeffs):
        acc += b * c[power + j]
    return acc


# ---------------------------------------------------------------------------
# small dense LU with partial pivoting (desk scale only)
# ---------------------------------------------------------------------------

def _plu(m):
    lu = np.array(m, dtype=np.float64)
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1.0
    for j in range(n):
        p = j + int(np.argmax(np.abs(lu[j:, j])))
        if p != j:
            lu[[j, p]] = lu[[p, j]]
            perm[[j, p]] = perm[[p, j]]
            sign = -sign
        piv = lu[j, j]
        if piv != 0.0:
            lu[j + 1:, j] /= piv
            lu[j + 1:, j + 1:] -= np.outer(lu[j + 1:, j], lu[j, j + 1:])
    return lu, perm, sign


def _lu_solve(lu, perm, rhs):
    n = lu.shape[0]
    x = np.asarray(rhs, dtype=np.float64)[perm]
    for j in range(1, n):
        x[j] -= lu[j, :j] @ x[:j]
    for j in range(n - 1, -1, -1):
        x[j] = (x[j] - lu[j, j + 1:] @ x[j + 1:]) / lu[j, j]
    return x
