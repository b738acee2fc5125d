import numpy as np
import pytest

import lanczos_a12 as la
from lanczos_a12.fop import fop_coefficients, moments, oracle_residual
from lanczos_a12.linalg import DenseOperator, dot, norm2
from lanczos_a12.solvers import (
    SolverConfig,
    a12new_coefficients,
    a12new_step,
    init_a12new,
    solve_a12,
    solve_a12new,
)
from conftest import (
    collect_iterates,
    dense_block_matrix,
    oracle_instance,
    separated_spectrum_instance,
)

SOLVERS = (solve_a12, solve_a12new)


# ---------------------------------------------------------------------------
# termination basics
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("solver", SOLVERS)
def test_already_solved_converges_at_zero(solver):
    rng = np.random.default_rng(1)
    A, _ = oracle_instance(rng)
    x0 = rng.normal(size=8)
    b = A.matvec(x0)
    rep = solver(A, b, x0, np.ones(8))
    assert rep.converged
    assert rep.iterations == 0
    assert rep.final_residual == 0.0
    assert rep.residual_history == [0.0]


@pytest.mark.parametrize("solver", SOLVERS)
def test_identity_system_converges_first_step(solver):
    n = 6
    A = DenseOperator(np.eye(n))
    b = np.ones(n)
    rep = solver(A, b, np.zeros(n), b)
    assert rep.converged
    assert rep.iterations <= 1
    np.testing.assert_allclose(rep.solution, np.ones(n), atol=1e-12)


@pytest.mark.parametrize("solver", SOLVERS)
def test_matches_dense_lu_solution(solver):
    rng = np.random.default_rng(23)
    A, b = oracle_instance(rng)
    rep = solver(A, b, np.zeros(8), b, SolverConfig(eps=1e-9))
    assert rep.converged
    want = np.linalg.solve(A.to_dense(), b)
    assert norm2(rep.solution - want) <= 1e-6 * norm2(want)


@pytest.mark.parametrize("solver", SOLVERS)
def test_max_iterations_status(solver):
    A, b, _ = la.generate_problem(30, 0.0)
    cfg = SolverConfig(eps=1e-30, max_iterations=6)
    rep = solver(A, b, np.zeros(30), b, cfg)
    assert rep.status == "max_iterations"
    assert rep.status_token == "max_iters"
    assert rep.iterations == 6
    assert len(rep.residual_history) == 7


@pytest.mark.parametrize("solver", SOLVERS)
def test_residual_history_contract(solver):
    A, b, _ = la.generate_problem(20, 0.0)
    rep = solver(A, b, np.zeros(20), b)
    assert rep.converged
    assert len(rep.residual_history) == rep.iterations + 1
    assert rep.residual_history[0] == norm2(b)
    assert rep.residual_history[-1] <= 1e-5


@pytest.mark.parametrize("solver", SOLVERS)
def test_true_residual_check_off_reports_recursive_norm(solver):
    A, b, _ = la.generate_problem(20, 0.0)
    rep = solver(A, b, np.zeros(20), b, SolverConfig(true_residual_check=False))
    assert rep.converged
    assert rep.final_residual == rep.residual_history[-1]


@pytest.mark.parametrize("solver", SOLVERS)
def test_input_validation(solver):
    A = DenseOperator(np.eye(3))
    with pytest.raises(ValueError):
        solver(A, np.ones(3), np.zeros(3), np.zeros(3))  # y = 0
    with pytest.raises(ValueError):
        solver(A, np.ones(4), np.zeros(3), np.ones(3))  # dim mismatch


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(eps=0.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=3)
    with pytest.raises(ValueError):
        SolverConfig(breakdown_threshold=1e-5)
    with pytest.raises(ValueError):
        SolverConfig(breakdown_threshold=0.0)
    with pytest.raises(ValueError):
        SolverConfig(bk_sign=2)


@pytest.mark.parametrize("solver", SOLVERS)
def test_deterministic_reports(solver):
    A, b, _ = la.generate_problem(40, 0.0)
    r1 = solver(A, b, np.zeros(40), b)
    r2 = solver(A, b, np.zeros(40), b)
    assert r1.status == r2.status
    assert r1.iterations == r2.iterations
    assert r1.residual_history == r2.residual_history
    assert r1.final_residual == r2.final_residual
    np.testing.assert_array_equal(r1.solution, r2.solution)


# ---------------------------------------------------------------------------
# breakdown and overflow reporting
# ---------------------------------------------------------------------------

def test_breakdown_c1_exact():
    # y is exactly orthogonal to A r0
    A = DenseOperator(np.array([[0.0, -1.0], [1.0, 0.0]]))
    b = np.array([1.0, 0.0])
    for solver in SOLVERS:
        rep = solver(A, b, np.zeros(2), b)
        assert rep.status == "breakdown"
        assert rep.breakdown_denominator == "c1"
        assert rep.breakdown_at == 1
        assert rep.iterations == 0


def test_breakdown_delta_exact():
    # moment weights (3, 2, -1/4) on the spectrum (1, 2, 3) zero out
    # c1*c3 - c2^2 exactly in float arithmetic
    A = DenseOperator(np.diag([1.0, 2.0, 3.0]))
    b = np.ones(3)
    y = np.array([3.0, 2.0, -0.25])
    for solver in SOLVERS:
        rep = solver(A, b, np.zeros(3), y)
        assert rep.status == "breakdown"
        assert rep.breakdown_denominator == "delta"
        assert rep.breakdown_at == 2
        assert rep.iterations == 1


def test_breakdown_order3_determinant_exact():
    # y hides one eigencomponent: moments have numerical rank 2, so the
    # order-3 determinant in the init of the new variant is exactly zero
    A = DenseOperator(np.diag([1.0, 2.0, 4.0]))
    b = np.ones(3)
    y = np.array([1.0, 1.0, 0.0])
    rep = solve_a12new(A, b, np.zeros(3), y)
    assert rep.status == "breakdown"
    assert rep.breakdown_denominator == "Delta"
    assert rep.breakdown_at == 3
    assert rep.iterations == 2


def test_breakdown_a13_exact():
    # c0 = (y, r0) sums to exactly zero; first hit as a13 at k = 3
    A = DenseOperator(np.diag([1.0, 2.0, 3.0, 4.0]))
    b = np.ones(4)
    y = np.array([1.0, 1.0, 1.0, -3.0])
    rep = solve_a12(A, b, np.zeros(4), y)
    assert rep.status == "breakdown"
    assert rep.breakdown_denominator == "a13"
    assert rep.breakdown_at == 3
    assert rep.iterations == 2


def test_breakdown_with_strict_threshold():
    # near-zero (not exact) denominators are caught once the floor is raised
    A, b, _ = la.generate_problem(90, 0.0)
    cfg = SolverConfig(breakdown_threshold=1e-13)
    rep = solve_a12(A, b, np.zeros(90), b, cfg)
    assert rep.status == "breakdown"
    assert rep.breakdown_denominator in ("a13", "a22", "Delta_k")


@pytest.mark.parametrize("solver", SOLVERS)
def test_overflow_status(solver):
    A = DenseOperator(np.diag([1e200, 2e200]))
    b = np.ones(2)
    with np.errstate(over="ignore", invalid="ignore"):
        rep = solver(A, b, np.zeros(2), b)
    assert rep.status == "overflow"
    assert rep.iterations == 1
    assert len(rep.residual_history) == 2


# ---------------------------------------------------------------------------
# initialization window of the new variant
# ---------------------------------------------------------------------------

def test_init_consistency_random_10x10():
    rng = np.random.default_rng(31)
    a = np.diag(rng.uniform(1.0, 3.0, 10)) + 0.2 * rng.normal(size=(10, 10))
    A = DenseOperator(a)
    b = rng.normal(size=10)
    st = init_a12new(A, b, np.zeros(10), b, SolverConfig(eps=1e-30))
    assert st.k == 3
    r3, x3 = st.rs[0], st.xs[0]
    scale = norm2(b) + A.frobenius_norm() * norm2(x3)
    assert norm2(b - A.matvec(x3) - r3) <= 1e-12 * scale


def test_init_r3_matches_oracle():
    rng = np.random.default_rng(37)
    A, b = oracle_instance(rng)
    st = init_a12new(A, b, np.zeros(8), b, SolverConfig(eps=1e-30))
    c = moments(A, b, b, 6)
    want = oracle_residual(A, b, fop_coefficients(c, 3))
    assert norm2(st.rs[0] - want) <= 1e-9 * norm2(want)


def test_init_z3_matches_transposed_oracle():
    rng = np.random.default_rng(41)
    A, b = oracle_instance(rng)
    st = init_a12new(A, b, np.zeros(8), b, SolverConfig(eps=1e-30))
    c = moments(A, b, b, 6)
    want = oracle_residual(A, b, fop_coefficients(c, 3), transpose=True)
    assert norm2(st.zs[0] - want) <= 1e-9 * norm2(want)


def test_init_stops_early_when_converged():
    A = DenseOperator(np.eye(4))
    b = np.ones(4)
    st = init_a12new(A, b, np.zeros(4), b)
    assert st.converged_at == 1
    assert st.early_report is not None
    assert st.early_report.converged


def test_step_requires_coefficients():
    rng = np.random.default_rng(43)
    A, b = oracle_instance(rng)
    st = init_a12new(A, b, np.zeros(8), b, SolverConfig(eps=1e-30))
    with pytest.raises(ValueError):
        a12new_step(st, None, A)


def test_coefficients_require_populated_window():
    A = DenseOperator(np.eye(4))
    b = np.ones(4)
    st = init_a12new(A, b, np.zeros(4), b)  # stops at k = 1
    with pytest.raises(ValueError):
        a12new_coefficients(st, A)


# ---------------------------------------------------------------------------
# recurrence coefficients against the moment oracle
# ---------------------------------------------------------------------------

def _poly_functional(c, pm, pn, power):
    # c(x^power * P_m * P_n) expanded in the monomial basis
    acc = 0.0
    for i, ai in enumerate(pm):
        for j, bj in enumerate(pn):
            acc += ai * bj * c[power + i + j]
    return acc


def test_normalization_identity_at_k4():
    rng = np.random.default_rng(47)
    A, b = oracle_instance(rng)
    cfg = SolverConfig(eps=1e-30)
    st = init_a12new(A, b, np.zeros(8), b, cfg)
    coeffs = a12new_coefficients(st, A, cfg)
    assert coeffs.A_k * (coeffs.C_k + coeffs.G_k) == pytest.approx(1.0, rel=1e-12)
    assert coeffs.D_k == 0.0
    assert coeffs.E_k == 0.0


def test_step_r4_matches_oracle():
    rng = np.random.default_rng(53)
    A, b = oracle_instance(rng)
    cfg = SolverConfig(eps=1e-30)
    st = init_a12new(A, b, np.zeros(8), b, cfg)
    coeffs = a12new_coefficients(st, A, cfg)
    a12new_step(st, coeffs, A)
    c = moments(A, b, b, 8)
    want = oracle_residual(A, b, fop_coefficients(c, 4))
    assert norm2(st.rs[0] - want) <= 1e-8 * norm2(want)


def test_fk_matches_moment_expansion():
    rng = np.random.default_rng(59)
    A, b = oracle_instance(rng)
    c = moments(A, b, b, 14)
    got = collect_iterates(solve_a12new, A, b, b, 6)
    polys = {k: fop_coefficients(c, k) for k in range(0, 6)}
    for k in (4, 5, 6):
        coeffs = got[k][2]["coeffs"]
        num = _poly_functional(c, polys[k - 4], polys[k - 2], 2)
        den = _poly_functional(c, polys[k - 4], polys[k - 3], 1)
        want = -num / den
        assert coeffs.F_k == pytest.approx(want, rel=1e-9)


def test_bk_sign_pinned_by_oracle():
    # flipping the sign of B_k must destroy the oracle agreement at k = 4
    rng = np.random.default_rng(61)
    A, b = oracle_instance(rng)
    c = moments(A, b, b, 8)
    want = oracle_residual(A, b, fop_coefficients(c, 4))
    good = collect_iterates(solve_a12new, A, b, b, 5)
    bad = collect_iterates(solve_a12new, A, b, b, 5, bk_sign=-1)
    assert norm2(good[4][0] - want) <= 1e-8 * norm2(want)
    assert 4 not in bad or norm2(bad[4][0] - want) > 1e-3 * norm2(want)


# ---------------------------------------------------------------------------
# per-iteration invariants
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("solver", SOLVERS)
def test_consistency_every_iteration(solver):
    A, b, _ = la.generate_problem(30, 0.0)
    fro = A.frobenius_norm()
    bad = []

    def check(k, r, x, extras):
        gap = norm2(b - A.matvec(x) - r)
        if gap > 1e-10 * (norm2(b) + fro * norm2(x)):
            bad.append((k, gap))

    rep = solver(A, b, np.zeros(30), b, on_iterate=check)
    assert rep.converged
    assert bad == []


@pytest.mark.parametrize("solver", SOLVERS)
def test_normalization_every_iteration(solver):
    A, b, _ = la.generate_problem(30, 0.0)
    bad = []

    def check(k, r, x, extras):
        co = extras.get("coeffs")
        if co is not None and abs(co.A_k * (co.C_k + co.G_k) - 1.0) > 1e-12:
            bad.append(k)

    rep = solver(A, b, np.zeros(30), b, on_iterate=check)
    assert rep.converged
    assert bad == []


def test_residual_orthogonal_to_left_krylov():
    rng = np.random.default_rng(67)
    A, b = oracle_instance(rng)
    y = b
    fro = A.frobenius_norm()
    got = collect_iterates(solve_a12new, A, b, y, 6)
    for k in range(1, 7):
        if k not in got:
            continue
        r = got[k][0]
        w = y.copy()
        for i in range(k):
            assert abs(dot(w, r)) <= 1e-7 * norm2(y) * norm2(b) * fro ** i
            w = A.tmatvec(w)


def test_left_vector_tracks_transposed_polynomial():
    rng = np.random.default_rng(71)
    A, b = oracle_instance(rng)
    c = moments(A, b, b, 14)
    got = collect_iterates(solve_a12new, A, b, b, 6)
    for k in range(1, 7):
        if k not in got:
            continue
        want = oracle_residual(A, b, fop_coefficients(c, k), transpose=True)
        z = got[k][2]["z"]
        assert norm2(z - want) <= 1e-7 * norm2(want)


def test_finite_termination_integer_matrix():
    n = 8
    a = 4.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
    A = DenseOperator(a)
    x_star = np.arange(1.0, n + 1.0)
    b = A.matvec(x_star)
    assert norm2(np.linalg.solve(a, b) - x_star) <= 1e-12 * norm2(x_star)
    r0n = norm2(b)
    cfg = SolverConfig(eps=1e-8 * r0n, max_iterations=n)
    for solver in SOLVERS:
        rep = solver(A, b, np.zeros(n), b, cfg)
        assert rep.converged
        assert rep.iterations <= n
        assert rep.residual_history[-1] <= 1e-8 * r0n


def test_solvers_agree_on_block_problem():
    A, b, exact = la.generate_problem(50, 0.0)
    r1 = solve_a12(A, b, np.zeros(50), b)
    r2 = solve_a12new(A, b, np.zeros(50), b)
    assert r1.converged and r2.converged
    assert norm2(r1.solution - exact) <= 1e-4
    assert norm2(r2.solution - exact) <= 1e-4


def test_nonsymmetric_generated_problem_converges():
    A, b, exact = la.generate_problem(40, 0.5)
    for solver in SOLVERS:
        rep = solver(A, b, np.zeros(40), b)
        assert rep.converged
        assert norm2(rep.solution - exact) <= 1e-4 * norm2(exact)
