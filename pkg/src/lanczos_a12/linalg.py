"""Dense/CSR operators and the vector helpers shared by every other module.

Vectors are plain 1-D float64 numpy arrays. Operators are immutable once
constructed (their storage arrays are frozen) and safe to share between
threads; all operations here are pure functions returning fresh arrays.
"""

import math

import numpy as np

from . import kernels

__all__ = [
    "LinearOperator",
    "DenseOperator",
    "CsrOperator",
    "as_vector",
    "csr_from_coo",
    "csr_from_dense",
    "matvec",
    "transpose_matvec",
    "dot",
    "norm2",
    "axpy",
]


def as_vector(x):
    """Coerce ``x`` to a contiguous 1-D float64 array."""
    v = np.ascontiguousarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    return v


def _frozen(a):
    a.setflags(write=False)
    return a


def _safe_frobenius(values):
    m = float(np.max(np.abs(values))) if values.size else 0.0
    if m == 0.0 or not math.isfinite(m):
        return m
    w = values / m
    return m * float(math.sqrt(np.sum(w * w)))


class LinearOperator:
    """Square real operator supporting matvec and transpose-matvec.

    Subclasses hold either dense row-major or CSR storage. ``matvec`` and
    ``tmatvec`` accumulate in a fixed order over stored entries, so results
    are deterministic for a given backend.
    """

    n = 0

    def _check_dim(self, v):
        if v.shape[0] != self.n:
            raise ValueError(
                f"dimension mismatch: operator is {self.n}x{self.n}, "
                f"vector has length {v.shape[0]}"
            )

    def matvec(self, v):
        raise NotImplementedError

    def tmatvec(self, v):
        raise NotImplementedError

    def to_dense(self):
        raise NotImplementedError

    def frobenius_norm(self):
        raise NotImplementedError

    @property
    def shape(self):
        return (self.n, self.n)


class DenseOperator(LinearOperator):
    """Row-major dense square matrix."""

    def __init__(self, array):
        a = np.ascontiguousarray(array, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        self.array = _frozen(a.copy())
        self.n = a.shape[0]
        self._fro = _safe_frobenius(self.array)

    def matvec(self, v):
        self._check_dim(v)
        out = np.empty(self.n)
        return kernels.dense_matvec(self.array, v, out)

    def tmatvec(self, v):
        self._check_dim(v)
        out = np.empty(self.n)
        return kernels.dense_tmatvec(self.array, v, out)

    def to_dense(self):
        return self.array.copy()

    def frobenius_norm(self):
        return self._fro


class CsrOperator(LinearOperator):
    """Square matrix in compressed sparse row form.

    Row pointers must be monotone nondecreasing with ``indptr[0] == 0`` and
    ``indptr[-1] == nnz``; column indices must lie in ``[0, n)``. Explicitly
    stored zeros are kept as given. The transpose-matvec scatters over rows
    on the fly; no transposed copy is stored.
    """

    def __init__(self, indptr, indices, data):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        data = np.ascontiguousarray(data, dtype=np.float64)
        if indptr.ndim != 1 or indices.ndim != 1 or data.ndim != 1:
            raise ValueError("indptr, indices and data must be 1-D")
        n = indptr.shape[0] - 1
        if n < 1:
            raise ValueError("operator must have at least one row")
        if indptr[0] != 0:
            raise ValueError("indptr must start at 0")
        if np.any(np.diff(indptr) < 0):
            raise ValueError("indptr must be monotone nondecreasing")
        if indices.shape[0] != data.shape[0]:
            raise ValueError("indices and data length mismatch")
        if indptr[-1] != data.shape[0]:
            raise ValueError(
                f"indptr[-1]={indptr[-1]} disagrees with nnz={data.shape[0]}"
            )
        if data.shape[0] and (indices.min() < 0 or indices.max() >= n):
            raise ValueError(f"column indices must lie in [0, {n})")
        self.indptr = _frozen(indptr)
        self.indices = _frozen(indices)
        self.data = _frozen(data)
        self.n = n
        self._fro = _safe_frobenius(data)

    @property
    def nnz(self):
        return self.data.shape[0]

    def matvec(self, v):
        self._check_dim(v)
        out = np.empty(self.n)
        return kernels.csr_matvec(self.indptr, self.indices, self.data, v, out)

    def tmatvec(self, v):
        self._check_dim(v)
        out = np.empty(self.n)
        return kernels.csr_tmatvec(self.indptr, self.indices, self.data, v, out)

    def to_dense(self):
        a = np.zeros((self.n, self.n))
        for i in range(self.n):
            for p in range(self.indptr[i], self.indptr[i + 1]):
                a[i, self.indices[p]] += self.data[p]
        return a

    def frobenius_norm(self):
        return self._fro


def csr_from_coo(n, rows, cols, values):
    """Build a CsrOperator from coordinate triples, summing duplicates.

    Entries are sorted by (row, col); duplicate coordinates are combined in
    that deterministic order.
    """
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    values = np.asarray(values, dtype=np.float64)
    if not (rows.shape == cols.shape == values.shape):
        raise ValueError("rows, cols, values must have equal length")
    if rows.shape[0]:
        if rows.min() < 0 or rows.max() >= n:
            raise ValueError(f"row indices must lie in [0, {n})")
        order = np.lexsort((cols, rows))
        rows, cols, values = rows[order], cols[order], values[order]
        keep = np.ones(rows.shape[0], dtype=bool)
        keep[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
        group = np.cumsum(keep) - 1
        data = np.zeros(int(group[-1]) + 1)
        np.add.at(data, group, values)
        rows, cols = rows[keep], cols[keep]
    else:
        data = values
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, rows + 1, 1)
    np.cumsum(indptr, out=indptr)
    return CsrOperator(indptr, cols, data)


def csr_from_dense(array):
    """CsrOperator holding the nonzero entries of a dense square matrix."""
    a = np.asarray(array, dtype=np.float64)
    rows, cols = np.nonzero(a)
    return csr_from_coo(a.shape[0], rows, cols, a[rows, cols])


# ---------------------------------------------------------------------------
# vector operations
# ---------------------------------------------------------------------------

def matvec(A, v):
    """Return ``A @ v``."""
    return A.matvec(as_vector(v))


def transpose_matvec(A, v):
    """Return ``A.T @ v`` without materializing the transpose."""
    return A.tmatvec(as_vector(v))


def dot(u, v):
    """Standard inner product of two equal-length vectors."""
    if u.shape[0] != v.shape[0]:
        raise ValueError(
            f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}"
        )
    return kernels.vdot(u, v)


def norm2(v):
    """Euclidean norm, computed as sqrt(dot(v, v))."""
    return math.sqrt(kernels.vdot(v, v))


def scaled_norm2(v):
    """Overflow-safe Euclidean norm, for use in relative-threshold guards."""
    m = float(np.max(np.abs(v))) if v.shape[0] else 0.0
    if m == 0.0 or not math.isfinite(m):
        return m
    w = v / m
    return m * math.sqrt(kernels.vdot(w, w))


def axpy(a, x, y):
    """Return ``a * x + y``."""
    if x.shape[0] != y.shape[0]:
        raise ValueError(
            f"dimension mismatch: {x.shape[0]} vs {y.shape[0]}"
        )
    return a * x + y
