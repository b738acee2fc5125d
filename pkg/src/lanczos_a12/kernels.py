"""Hot numeric kernels: numba-compiled loops with a pure-numpy fallback.

The backend is chosen once at import time from the environment variable
``LANCZOS_A12_BACKEND``:

* unset or ``"numba"`` -- use numba ``@njit`` kernels when numba imports,
  otherwise fall back to the vectorized numpy implementations;
* ``"numpy"`` -- force the numpy implementations.

Both backends are deterministic run-to-run; they are not guaranteed to be
bit-identical to each other because accumulation order differs.
"""

import os

import numpy as np

__all__ = [
    "BACKEND",
    "NUMBA_AVAILABLE",
    "csr_matvec",
    "csr_tmatvec",
    "dense_matvec",
    "dense_tmatvec",
    "vdot",
    "lincomb5",
]


# ---------------------------------------------------------------------------
# numpy implementations (always available)
# ---------------------------------------------------------------------------

def _np_csr_matvec(indptr, indices, data, v, out):
    nnz = data.shape[0]
    if nnz == 0:
        out[:] = 0.0
        return out
    # trailing zero pad keeps every row-start a valid reduceat index without
    # disturbing the preceding segment's end
    prod = np.empty(nnz + 1)
    prod[:nnz] = data * v[indices]
    prod[nnz] = 0.0
    out[:] = np.add.reduceat(prod, indptr[:-1])
    out[np.diff(indptr) == 0] = 0.0
    return out


def _np_csr_tmatvec(indptr, indices, data, v, out):
    n_rows = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n_rows), np.diff(indptr))
    out[:] = np.bincount(indices, weights=data * v[rows], minlength=out.shape[0])
    return out


def _np_dense_matvec(a, v, out):
    out[:] = a @ v
    return out


def _np_dense_tmatvec(a, v, out):
    out[:] = a.T @ v
    return out


def _np_vdot(u, v):
    return float(np.dot(u, v))


def _np_lincomb5(a1, v1, a2, v2, a3, v3, a4, v4, a5, v5, out):
    out[:] = a1 * v1 + a2 * v2 + a3 * v3 + a4 * v4 + a5 * v5
    return out


# ---------------------------------------------------------------------------
# loop bodies compiled by numba
# ---------------------------------------------------------------------------

def _loop_csr_matvec(indptr, indices, data, v, out):
    for i in range(indptr.shape[0] - 1):
        acc = 0.0
        for p in range(indptr[i], indptr[i + 1]):
            acc += data[p] * v[indices[p]]
        out[i] = acc
    return out


def _loop_csr_tmatvec(indptr, indices, data, v, out):
    out[:] = 0.0
    for i in range(indptr.shape[0] - 1):
        vi = v[i]
        for p in range(indptr[i], indptr[i + 1]):
            out[indices[p]] += data[p] * vi
    return out


def _loop_dense_matvec(a, v, out):
    n = a.shape[0]
    for i in range(n):
        acc = 0.0
        for j in range(a.shape[1]):
            acc += a[i, j] * v[j]
        out[i] = acc
    return out


def _loop_dense_tmatvec(a, v, out):
    out[:] = 0.0
    for i in range(a.shape[0]):
        vi = v[i]
        for j in range(a.shape[1]):
            out[j] += a[i, j] * vi
    return out


def _loop_vdot(u, v):
    acc = 0.0
    for i in range(u.shape[0]):
        acc += u[i] * v[i]
    return acc


def _loop_lincomb5(a1, v1, a2, v2, a3, v3, a4, v4, a5, v5, out):
    for i in range(out.shape[0]):
        out[i] = a1 * v1[i] + a2 * v2[i] + a3 * v3[i] + a4 * v4[i] + a5 * v5[i]
    return out


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

_env = os.environ.get("LANCZOS_A12_BACKEND", "").strip().lower()
if _env not in ("", "numba", "numpy"):
    raise ValueError(
        f"LANCZOS_A12_BACKEND={_env!r}: expected 'numba' or 'numpy'"
    )

NUMBA_AVAILABLE = False
if _env != "numpy":
    try:
        from numba import njit as _njit

        NUMBA_AVAILABLE = True
    except ImportError:
        if _env == "numba":
            raise ImportError(
                "LANCZOS_A12_BACKEND=numba but numba is not installed"
            ) from None

if NUMBA_AVAILABLE:
    BACKEND = "numba"
    csr_matvec = _njit(cache=True)(_loop_csr_matvec)
    csr_tmatvec = _njit(cache=True)(_loop_csr_tmatvec)
    dense_matvec = _njit(cache=True)(_loop_dense_matvec)
    dense_tmatvec = _njit(cache=True)(_loop_dense_tmatvec)
    vdot = _njit(cache=True)(_loop_vdot)
    lincomb5 = _njit(cache=True)(_loop_lincomb5)
else:
    BACKEND = "numpy"
    csr_matvec = _np_csr_matvec
    csr_tmatvec = _np_csr_tmatvec
    dense_matvec = _np_dense_matvec
    dense_tmatvec = _np_dense_tmatvec
    vdot = _np_vdot
    lincomb5 = _np_lincomb5
