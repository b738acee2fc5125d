"""Lanczos-type solvers for square unsymmetric systems, with a
formal-orthogonal-polynomial oracle, a convection-diffusion problem
generator and a benchmark CLI."""

from .errors import BreakdownDetected, MatrixMarketError
from .fop import (
    apply_functional,
    fop_coefficients,
    hankel_det,
    hankel_matrix,
    hankel_pivot_ratio,
    moments,
    oracle_residual,
)
from .kernels import BACKEND
from .linalg import (
    CsrOperator,
    DenseOperator,
    LinearOperator,
    as_vector,
    axpy,
    csr_from_coo,
    csr_from_dense,
    dot,
    matvec,
    norm2,
    transpose_matvec,
)
from .problems import (
    generate_problem,
    load_matrix_market,
    load_vector,
    save_matrix_market,
)
from .solvers import (
    A12NewState,
    ConvergenceReport,
    RecurrenceCoefficients,
    SolverConfig,
    a12new_coefficients,
    a12new_step,
    init_a12new,
    solve_a12,
    solve_a12new,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BreakdownDetected",
    "MatrixMarketError",
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
    "moments",
    "hankel_matrix",
    "hankel_det",
    "hankel_pivot_ratio",
    "fop_coefficients",
    "oracle_residual",
    "apply_functional",
    "SolverConfig",
    "ConvergenceReport",
    "RecurrenceCoefficients",
    "A12NewState",
    "solve_a12",
    "solve_a12new",
    "init_a12new",
    "a12new_coefficients",
    "a12new_step",
    "generate_problem",
    "load_matrix_market",
    "load_vector",
    "save_matrix_market",
]
