"""Test-problem construction and Matrix Market I/O.

The generated family is the block-tridiagonal matrix of a 5-point
convection-diffusion discretization: 10x10 tridiagonal blocks with 4 on the
diagonal, ``alpha = -1 + delta`` above and ``beta = -1 - delta`` below, and
``-I`` coupling blocks on either side. The right-hand side is built as
``A @ ones`` through the same matvec path the solvers use, so the exact
solution is the all-ones vector.
"""

import numpy as np

from .errors import MatrixMarketError
from .linalg import CsrOperator, csr_from_coo

__all__ = [
    "generate_problem",
    "load_matrix_market",
    "load_vector",
    "save_matrix_market",
]

BLOCK_SIZE = 10


def generate_problem(n, delta=0.0, block_size=BLOCK_SIZE):
    """Build the convection-diffusion test system of dimension ``n``.

    ``n`` must be a positive multiple of ``block_size`` (fixed at 10 for
    the standard family; override only for exploration). Returns
    ``(A, rhs, exact)`` with ``A`` in CSR form, ``rhs = A @ ones`` and
    ``exact`` the all-ones solution.
    """
    if block_size < 1:
        raise ValueError("block_size must be positive")
    if n < block_size or n % block_size != 0:
        raise ValueError(
            f"n must be a positive multiple of {block_size}, got {n}"
        )
    alpha = -1.0 + delta
    beta = -1.0 - delta
    nb = n // block_size

    indptr = np.zeros(n + 1, dtype=np.int64)
    cols = []
    vals = []
    for g in range(n):
        blk, j = divmod(g, block_size)
        if blk > 0:
            cols.append(g - block_size)
            vals.append(-1.0)
        if j > 0:
            cols.append(g - 1)
            vals.append(beta)
        cols.append(g)
        vals.append(4.0)
        if j < block_size - 1:
            cols.append(g + 1)
            vals.append(alpha)
        if blk < nb - 1:
            cols.append(g + block_size)
            vals.append(-1.0)
        indptr[g + 1] = len(cols)
    A = CsrOperator(indptr, np.array(cols, dtype=np.int64), np.array(vals))
    exact = np.ones(n)
    rhs = A.matvec(exact)
    return A, rhs, exact


# ---------------------------------------------------------------------------
# Matrix Market
# ---------------------------------------------------------------------------

def _mm_lines(path):
    with open(path, "r", encoding="ascii") as fh:
        for line_no, raw in enumerate(fh, start=1):
            yield line_no, raw.rstrip("\n")


def load_matrix_market(path):
    """Read a real square matrix in Matrix Market format as a CsrOperator.

    Coordinate and array formats are supported, with general or symmetric
    symmetry. Duplicate coordinate entries are summed; symmetric storage is
    expanded. Malformed input raises MatrixMarketError carrying the line
    number.
    """
    lines = _mm_lines(path)
    try:
        line_no, banner = next(lines)
    except StopIteration:
        raise MatrixMarketError(path, 1, "empty file") from None
    parts = banner.lower().split()
    if len(parts) != 5 or parts[0] != "%%matrixmarket":
        raise MatrixMarketError(path, line_no, f"bad header line: {banner!r}")
    _, obj, fmt, fieldtype, symmetry = parts
    if obj != "matrix":
        raise MatrixMarketError(path, line_no, f"unsupported object {obj!r}")
    if fmt not in ("coordinate", "array"):
        raise MatrixMarketError(path, line_no, f"unsupported format {fmt!r}")
    if fieldtype not in ("real", "integer"):
        raise MatrixMarketError(path, line_no, f"unsupported field {fieldtype!r}")
    if symmetry not in ("general", "symmetric"):
        raise MatrixMarketError(path, line_no, f"unsupported symmetry {symmetry!r}")

    size_line = None
    for line_no, line in lines:
        stripped = line.strip()
        if stripped and not stripped.startswith("%"):
            size_line = (line_no, stripped)
            break
    if size_line is None:
        raise MatrixMarketError(path, line_no, "missing size line")

    line_no, stripped = size_line
    tokens = stripped.split()
    want = 3 if fmt == "coordinate" else 2
    if len(tokens) != want:
        raise MatrixMarketError(
            path, line_no, f"size line needs {want} integers: {stripped!r}"
        )
    try:
        dims = [int(t) for t in tokens]
    except ValueError:
        raise MatrixMarketError(
            path, line_no, f"size line is not integral: {stripped!r}"
        ) from None
    nrows, ncols = dims[0], dims[1]
    if nrows != ncols:
        raise ValueError(
            f"{path}: matrix is {nrows}x{ncols}; only square operators are supported"
        )

    if fmt == "coordinate":
        nnz = dims[2]
        rows, cols, vals = [], [], []
        entries_read = 0
        for line_no, line in lines:
            stripped = line.strip()
            if not stripped or stripped.startswith("%"):
                continue
            tokens = stripped.split()
            if len(tokens) != 3:
                raise MatrixMarketError(
                    path, line_no, f"entry needs 'row col value': {stripped!r}"
                )
            try:
                i, j, v = int(tokens[0]), int(tokens[1]), float(tokens[2])
            except ValueError:
                raise MatrixMarketError(
                    path, line_no, f"unparseable entry: {stripped!r}"
                ) from None
            if not (1 <= i <= nrows and 1 <= j <= ncols):
                raise MatrixMarketError(
                    path, line_no, f"index ({i}, {j}) outside {nrows}x{ncols}"
                )
            entries_read += 1
            rows.append(i - 1)
            cols.append(j - 1)
            vals.append(v)
            if symmetry == "symmetric" and i != j:
                rows.append(j - 1)
                cols.append(i - 1)
                vals.append(v)
        if entries_read != nnz:
            raise MatrixMarketError(
                path, line_no, f"expected {nnz} entries, found {entries_read}"
            )
        return csr_from_coo(nrows, rows, cols, vals)

    # array format: dense column-major listing
    values = []
    for line_no, line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        try:
            values.append(float(stripped.split()[0]))
        except ValueError:
            raise MatrixMarketError(
                path, line_no, f"unparseable value: {stripped!r}"
            ) from None
    if symmetry == "general":
        if len(values) != nrows * ncols:
            raise MatrixMarketError(
                path, line_no,
                f"expected {nrows * ncols} values, found {len(values)}",
            )
        dense = np.array(values).reshape((ncols, nrows)).T
    else:
        expect = nrows * (nrows + 1) // 2
        if len(values) != expect:
            raise MatrixMarketError(
                path, line_no,
                f"expected {expect} lower-triangle values, found {len(values)}",
            )
        dense = np.zeros((nrows, nrows))
        it = iter(values)
        for j in range(ncols):
            for i in range(j, nrows):
                v = next(it)
                dense[i, j] = v
                dense[j, i] = v
    rows, cols = np.nonzero(dense)
    return csr_from_coo(nrows, rows, cols, dense[rows, cols])


def load_vector(path):
    """Read a vector: Matrix Market array n-by-1, or plain one-value-per-line."""
    with open(path, "r", encoding="ascii") as fh:
        first = fh.readline()
    if first.lower().startswith("%%matrixmarket"):
        values = []
        lines = _mm_lines(path)
        next(lines)
        size_seen = False
        for line_no, line in lines:
            stripped = line.strip()
            if not stripped or stripped.startswith("%"):
                continue
            if not size_seen:
                tokens = stripped.split()
                if len(tokens) != 2 or tokens[1] != "1":
                    raise MatrixMarketError(
                        path, line_no, f"expected 'n 1' vector size: {stripped!r}"
                    )
                size_seen = True
                continue
            try:
                values.append(float(stripped))
            except ValueError:
                raise MatrixMarketError(
                    path, line_no, f"unparseable value: {stripped!r}"
                ) from None
        return np.array(values)
    values = []
    for line_no, line in _mm_lines(path):
        stripped = line.strip()
        if not stripped or stripped.startswith(("%", "#")):
            continue
        try:
            values.append(float(stripped.split()[0]))
        except ValueError:
            raise MatrixMarketError(
                path, line_no, f"unparseable value: {stripped!r}"
            ) from None
    return np.array(values)


def save_matrix_market(path, A):
    """Write a CsrOperator as coordinate real general, full precision."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("%%MatrixMarket matrix coordinate real general\n")
        fh.write(f"{A.n} {A.n} {A.nnz}\n")
        for i in range(A.n):
            for p in range(A.indptr[i], A.indptr[i + 1]):
                fh.write(f"{i + 1} {A.indices[p] + 1} {A.data[p]:.17g}\n")
