"""Lanczos-type solvers built on the order-(2,3) residual recurrence.

Two variants are provided:

* ``solve_a12`` -- the baseline that realizes the recurrence coefficients
  through the power sequence ``y_j = (A^T)^j y``;
* ``solve_a12new`` -- the variant that carries left vectors
  ``z_k = P_k(A^T) y`` instead, so every coefficient is an inner product of
  bounded quantities.

Both iterate a sliding three-deep window of residuals and iterates, stop on
the recursive residual norm, and report breakdown (a denominator falling
under a relative floor) or overflow instead of dividing through garbage.
All arithmetic is fixed-order float64, so a given configuration always
produces the same report (modulo wall time).
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import BreakdownDetected
from .kernels import lincomb5
from .linalg import as_vector, dot, norm2, scaled_norm2

__all__ = [
    "SolverConfig",
    "ConvergenceReport",
    "RecurrenceCoefficients",
    "A12NewState",
    "solve_a12",
    "solve_a12new",
    "init_a12new",
    "a12new_coefficients",
    "a12new_step",
]


@dataclass(frozen=True)
class SolverConfig:
    """Iteration controls shared by both solvers.

    Parameters
    ----------
    eps : float
        Residual-norm tolerance tested against the recursive residual.
    max_iterations : int or None
        Iteration cap; ``None`` resolves to ``10 * n`` at solve time
        (finite termination in at most ``n`` steps holds only in exact
        arithmetic).
    breakdown_threshold : float
        Relative floor for every denominator: a value is declared dead when
        its magnitude falls below ``breakdown_threshold`` times the product
        of the norms of its factors. The default is deliberately tiny: the
        power-sequence variant routinely drives its moment quantities into
        rounding-noise territory (relative sizes below 1e-17 were measured
        on the generated family) and still recovers, so only genuinely zero
        denominators should halt a run by default. Raise it (1e-13 is a
        reasonable strict setting) to refuse dividing by noise.
    true_residual_check : bool
        Recompute ``b - A x_k`` once at termination and report it as the
        final residual; a disagreement with the recursive norm beyond
        ``10 * eps`` sets the mismatch flag on the report.
    bk_sign : int
        Sign applied to the ``B_k = b3 / (z_{k-1}, A r_{k-2})`` coefficient
        of the new variant. ``+1`` is the form the reduced normal equation
        gives and is pinned by the oracle-equivalence suite; ``-1`` is kept
        selectable for comparison.
    """

    eps: float = 1.0e-5
    max_iterations: int | None = None
    breakdown_threshold: float = 1.0e-18
    true_residual_check: bool = True
    bk_sign: int = 1

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.max_iterations is not None and self.max_iterations < 4:
            raise ValueError("max_iterations must be >= 4")
        if not 0 < self.breakdown_threshold < 1.0e-6:
            raise ValueError("breakdown_threshold must lie in (0, 1e-6)")
        if self.bk_sign not in (1, -1):
            raise ValueError("bk_sign must be +1 or -1")


@dataclass
class ConvergenceReport:
    """Outcome of one solve.

    ``residual_history[k]`` is the recursive residual norm of iterate k,
    starting at k = 0; ``iterations`` is the index of the last accepted
    iterate and ``solution`` that iterate itself. ``final_residual`` is the
    recomputed true residual when the check is enabled, the last recursive
    norm otherwise.
    """

    status: str  # converged | breakdown | max_iterations | overflow
    iterations: int
    residual_history: list
    final_residual: float
    wall_time: float
    solution: np.ndarray | None = None
    breakdown_at: int | None = None
    breakdown_denominator: str | None = None
    residual_mismatch: bool = False

    @property
    def converged(self):
        return self.status == "converged"

    @property
    def status_token(self):
        if self.status == "breakdown":
            return f"breakdown({self.breakdown_denominator})"
        if self.status == "max_iterations":
            return "max_iters"
        return self.status


@dataclass
class RecurrenceCoefficients:
    """Per-iteration scalars of the residual recurrence.

    The cubic/quadratic terms of the general three-term relation vanish
    identically for both variants, so ``D_k`` and ``E_k`` are fixed at 0.
    ``A_k * (C_k + G_k) == 1`` up to rounding (the constant-term-one
    normalization of the residual polynomials).
    """

    A_k: float
    B_k: float
    C_k: float
    F_k: float
    G_k: float
    b1: float
    b2: float
    b3: float
    Delta_k: float
    D_k: float = 0.0
    E_k: float = 0.0


@dataclass
class A12NewState:
    """Sliding window of the new variant, newest first.

    ``rs``, ``xs`` and ``zs`` hold at most the last three residuals,
    iterates and left vectors (``rs[0]`` is ``r_k`` for ``k`` the value of
    the ``k`` field). ``ar_back`` carries ``A r_{k-3}`` into the next
    iteration, where it is needed as ``A r_{k-4}``. The ``q*``/``s*``
    scratch vectors are populated by :func:`a12new_coefficients` and
    consumed by :func:`a12new_step`.
    """

    k: int
    rs: list
    xs: list
    zs: list
    ar_back: np.ndarray | None = None
    q1: np.ndarray | None = None
    q2: np.ndarray | None = None
    q3: np.ndarray | None = None
    s1: np.ndarray | None = None
    s2: np.ndarray | None = None
    s3: np.ndarray | None = None
    converged_at: int | None = None
    early_report: ConvergenceReport | None = field(default=None, repr=False)


# ---------------------------------------------------------------------------
# shared bookkeeping
# ---------------------------------------------------------------------------

def _guard(value, scale, name, k, threshold):
    """Denominator floor test: overflow beats breakdown beats use."""
    if not math.isfinite(value):
        raise OverflowError(f"{name} overflowed at k={k}")
    if abs(value) <= threshold * scale:
        raise BreakdownDetected(name, k, value=value, scale=scale)
    return value


def _finite_vector(v, name, k):
    if not np.all(np.isfinite(v)):
        raise OverflowError(f"{name} overflowed at k={k}")
    return v


def _finite_scalar(value, name, k):
    if not math.isfinite(value):
        raise OverflowError(f"{name} overflowed at k={k}")
    return value


class _Tracker:
    """Accepted-iterate log plus termination/report construction."""

    def __init__(self, A, b, cfg, t0):
        self.A = A
        self.b = b
        self.cfg = cfg
        self.t0 = t0
        self.history = []
        self.mismatch = False
        self.k = 0
        self.x = None

    def accept(self, k, x, r):
        rn = norm2(r)
        if not math.isfinite(rn):
            raise OverflowError(f"residual norm overflowed at k={k}")
        self.history.append(rn)
        self.k = k
        self.x = x

    def try_converged(self):
        """Report if the last accepted iterate satisfies the tolerance.

        With the true-residual check enabled, a recursive norm under eps
        whose recomputed residual is still above eps does not terminate:
        the mismatch flag is set and iteration continues.
        """
        rn = self.history[-1]
        if rn > self.cfg.eps:
            return None
        if not self.cfg.true_residual_check:
            return self._report("converged", rn)
        true_rn = norm2(self.b - self.A.matvec(self.x))
        if abs(true_rn - rn) > 10.0 * self.cfg.eps:
            self.mismatch = True
        if true_rn <= self.cfg.eps:
            return self._report("converged", true_rn)
        return None

    def finish(self, status, breakdown=None):
        rn = self.history[-1] if self.history else float("inf")
        final = rn
        if self.cfg.true_residual_check and self.x is not None and self.history:
            true_rn = norm2(self.b - self.A.matvec(self.x))
            if abs(true_rn - rn) > 10.0 * self.cfg.eps:
                self.mismatch = True
            final = true_rn
        return self._report(status, final, breakdown)

    def _report(self, status, final, breakdown=None):
        return ConvergenceReport(
            status=status,
            iterations=self.k,
            residual_history=list(self.history),
            final_residual=final,
            wall_time=time.perf_counter() - self.t0,
            solution=self.x,
            breakdown_at=None if breakdown is None else breakdown.k,
            breakdown_denominator=None if breakdown is None else breakdown.denominator,
            residual_mismatch=self.mismatch,
        )


def _notify(on_iterate, k, r, x, extras):
    if on_iterate is not None:
        on_iterate(k, r, x, extras)


def _validate_inputs(A, b, x0, y):
    b = as_vector(b)
    x0 = as_vector(x0)
    y = as_vector(y)
    for name, v in (("b", b), ("x0", x0), ("y", y)):
        if v.shape[0] != A.n:
            raise ValueError(
                f"{name} has length {v.shape[0]}, operator is {A.n}x{A.n}"
            )
    if not np.any(y):
        raise ValueError("y must be nonzero")
    return b, x0, y


def _lc5(n, a1, v1, a2, v2, a3, v3, a4, v4, a5, v5):
    return lincomb5(a1, v1, a2, v2, a3, v3, a4, v4, a5, v5, np.empty(n))


# ---------------------------------------------------------------------------
# baseline solver
# ---------------------------------------------------------------------------

def solve_a12(A, b, x0, y, cfg=None, on_iterate=None):
    """Run the baseline power-sequence variant until the residual norm
    drops under ``cfg.eps``.

    Parameters
    ----------
    A : LinearOperator
    b, x0, y : array_like
        Right-hand side, starting iterate and left seed vector (``y`` must
        be nonzero).
    cfg : SolverConfig, optional
    on_iterate : callable, optional
        Called as ``on_iterate(k, r_k, x_k, extras)`` after every accepted
        iterate with ``k >= 1``; ``extras['coeffs']`` carries the
        recurrence coefficients once the main loop is reached.

    Returns
    -------
    ConvergenceReport
    """
    cfg = SolverConfig() if cfg is None else cfg
    b, x0, y = _validate_inputs(A, b, x0, y)
    t0 = time.perf_counter()
    trk = _Tracker(A, b, cfg, t0)
    try:
        return _a12_body(A, b, x0, y, cfg, trk, on_iterate)
    except BreakdownDetected as e:
        return trk.finish("breakdown", breakdown=e)
    except OverflowError:
        return trk.finish("overflow")


def _a12_body(A, b, x0, y, cfg, trk, on_iterate):
    n = A.n
    th = cfg.breakdown_threshold
    maxit = 10 * n if cfg.max_iterations is None else cfg.max_iterations

    r0 = _finite_vector(b - A.matvec(x0), "r_0", 0)
    trk.accept(0, x0, r0)
    rep = trk.try_converged()
    if rep:
        return rep

    # degree-1 iterate
    p = A.matvec(r0)
    c0 = _finite_scalar(dot(y, r0), "c_0", 1)
    c1 = _guard(dot(y, p), scaled_norm2(y) * scaled_norm2(p), "c1", 1, th)
    step1 = c0 / c1
    r1 = _finite_vector(r0 - step1 * p, "r_1", 1)
    x1 = x0 + step1 * r0
    trk.accept(1, x1, r1)
    _notify(on_iterate, 1, r1, x1, {})
    rep = trk.try_converged()
    if rep:
        return rep

    # degree-2 iterate
    p1 = A.matvec(p)
    p2 = A.matvec(p1)
    c2 = _finite_scalar(dot(y, p1), "c_2", 2)
    c3 = _finite_scalar(dot(y, p2), "c_3", 2)
    delta = _guard(c1 * c3 - c2 * c2, abs(c1 * c3) + c2 * c2, "delta", 2, th)
    alpha = (c0 * c3 - c1 * c2) / delta
    beta = (c0 * c2 - c1 * c1) / delta
    r2 = _finite_vector(r0 - alpha * p + beta * p1, "r_2", 2)
    x2 = x0 + alpha * r0 - beta * p
    trk.accept(2, x2, r2)
    _notify(on_iterate, 2, r2, x2, {})
    rep = trk.try_converged()
    if rep:
        return rep

    # (y_{k-3}, y_{k-2}, y_{k-1}, y_k) at k = 3; extended each iteration
    y1 = A.tmatvec(y)
    y2 = A.tmatvec(y1)
    y3 = A.tmatvec(y2)
    ys = (y, y1, y2, y3)
    rwin = (r2, r1, r0)  # (r_{k-1}, r_{k-2}, r_{k-3})
    xwin = (x2, x1, x0)

    for k in range(3, maxit + 1):
        ynew = _finite_vector(A.tmatvec(ys[3]), "y_power", k)  # y_{k+1}
        q1 = A.matvec(rwin[1])
        q2 = A.matvec(q1)
        q3 = A.matvec(rwin[2])
        a11 = dot(ys[1], rwin[1])
        a13 = dot(ys[0], rwin[2])
        a21 = dot(ys[2], rwin[1])
        a22 = a11
        a23 = dot(ys[1], rwin[2])
        a31 = dot(ys[3], rwin[1])
        a32 = a21
        a33 = dot(ys[2], rwin[2])
        s = dot(ynew, rwin[1])
        t = dot(ys[3], rwin[2])
        _guard(a13, scaled_norm2(ys[0]) * scaled_norm2(rwin[2]), "a13", k, th)
        fk = -a11 / a13
        b1 = -a21 - a23 * fk
        b2 = -a31 - a33 * fk
        b3 = -s - t * fk
        minor1 = a22 * a33 - a32 * a23
        minor2 = a21 * a32 - a31 * a22
        dk = a11 * minor1 + a13 * minor2
        dk_scale = (
            abs(a11 * a22 * a33) + abs(a11 * a32 * a23)
            + abs(a13 * a21 * a32) + abs(a13 * a31 * a22)
        )
        _guard(dk, dk_scale, "Delta_k", k, th)
        bk = (b1 * minor1 + a13 * (b2 * a32 - b3 * a22)) / dk
        gk = (b1 - a11 * bk) / a13
        _guard(a22, scaled_norm2(ys[1]) * scaled_norm2(rwin[1]), "a22", k, th)
        ck = (b2 - a21 * bk - a23 * gk) / a22
        _guard(ck + gk, abs(ck) + abs(gk), "Ck_plus_Gk", k, th)
        ak = 1.0 / (ck + gk)
        for name, v in (("F_k", fk), ("B_k", bk), ("G_k", gk), ("C_k", ck), ("A_k", ak)):
            _finite_scalar(v, name, k)

        rk = _lc5(n, ak, q2, ak * bk, q1, ak * ck, rwin[1], ak * fk, q3, ak * gk, rwin[2])
        xk = _lc5(n, ak * ck, xwin[1], ak * gk, xwin[2], -ak, q1, -ak * bk, rwin[1], -ak * fk, rwin[2])
        _finite_vector(rk, "r_k", k)
        _finite_vector(xk, "x_k", k)
        trk.accept(k, xk, rk)
        coeffs = RecurrenceCoefficients(
            A_k=ak, B_k=bk, C_k=ck, F_k=fk, G_k=gk,
            b1=b1, b2=b2, b3=b3, Delta_k=dk,
        )
        _notify(on_iterate, k, rk, xk, {"coeffs": coeffs})
        rwin = (rk, rwin[0], rwin[1])
        xwin = (xk, xwin[0], xwin[1])
        ys = (ys[1], ys[2], ys[3], ynew)
        rep = trk.try_converged()
        if rep:
            return rep

    return trk.finish("max_iterations")


# ---------------------------------------------------------------------------
# new variant: left vectors z_k instead of the y power sequence
# ---------------------------------------------------------------------------

def init_a12new(A, b, x0, y, cfg=None, on_iterate=None):
    """Build the starting window (iterates 0..3) of the new variant.

    Returns an :class:`A12NewState`. If some ``r_j`` with ``j <= 3``
    already meets the tolerance the state stops there, with
    ``converged_at`` set. Raises :class:`BreakdownDetected` when ``c1``,
    ``delta`` or the order-3 moment determinant dies, and
    :class:`OverflowError` on non-finite intermediates.
    """
    cfg = SolverConfig() if cfg is None else cfg
    b, x0, y = _validate_inputs(A, b, x0, y)
    trk = _Tracker(A, b, cfg, time.perf_counter())
    return _a12new_init(A, b, x0, y, cfg, trk, on_iterate)


def _a12new_init(A, b, x0, y, cfg, trk, on_iterate):
    th = cfg.breakdown_threshold

    r0 = _finite_vector(b - A.matvec(x0), "r_0", 0)
    trk.accept(0, x0, r0)
    st = A12NewState(k=0, rs=[r0], xs=[x0], zs=[y])
    rep = trk.try_converged()
    if rep:
        st.converged_at = 0
        st.early_report = rep
        return st

    p = A.matvec(r0)
    c0 = _finite_scalar(dot(y, r0), "c_0", 1)
    c1 = _guard(dot(y, p), scaled_norm2(y) * scaled_norm2(p), "c1", 1, th)
    y1 = A.tmatvec(y)
    step1 = c0 / c1
    r1 = _finite_vector(r0 - step1 * p, "r_1", 1)
    x1 = x0 + step1 * r0
    z1 = _finite_vector(y - step1 * y1, "z_1", 1)
    trk.accept(1, x1, r1)
    st.k, st.rs, st.xs, st.zs = 1, [r1, r0], [x1, x0], [z1, y]
    _notify(on_iterate, 1, r1, x1, {"z": z1})
    rep = trk.try_converged()
    if rep:
        st.converged_at = 1
        st.early_report = rep
        return st

    p1 = A.matvec(p)
    p2 = A.matvec(p1)
    c2 = _finite_scalar(dot(y, p1), "c_2", 2)
    c3 = _finite_scalar(dot(y, p2), "c_3", 2)
    delta = _guard(c1 * c3 - c2 * c2, abs(c1 * c3) + c2 * c2, "delta", 2, th)
    alpha = (c0 * c3 - c1 * c2) / delta
    beta = (c0 * c2 - c1 * c1) / delta
    y2 = A.tmatvec(y1)
    r2 = _finite_vector(r0 - alpha * p + beta * p1, "r_2", 2)
    x2 = x0 + alpha * r0 - beta * p
    z2 = _finite_vector(y - alpha * y1 + beta * y2, "z_2", 2)
    trk.accept(2, x2, r2)
    st.k, st.rs, st.xs, st.zs = 2, [r2, r1, r0], [x2, x1, x0], [z2, z1, y]
    _notify(on_iterate, 2, r2, x2, {"z": z2})
    rep = trk.try_converged()
    if rep:
        st.converged_at = 2
        st.early_report = rep
        return st

    p3 = A.matvec(p2)
    p4 = A.matvec(p3)
    c4 = _finite_scalar(dot(y, p3), "c_4", 3)
    c5 = _finite_scalar(dot(y, p4), "c_5", 3)
    det3 = (
        c1 * (c3 * c5 - c4 * c4)
        - c2 * (c2 * c5 - c3 * c4)
        + c3 * (c2 * c4 - c3 * c3)
    )
    det3_scale = (
        abs(c1 * c3 * c5) + abs(c1 * c4 * c4)
        + abs(c2 * c2 * c5) + 2.0 * abs(c2 * c3 * c4)
        + abs(c3 * c3 * c3)
    )
    det3 = _guard(det3, det3_scale, "Delta", 3, th)
    num_a = (
        c0 * (c3 * c5 - c4 * c4)
        - c2 * (c1 * c5 - c2 * c4)
        + c3 * (c1 * c4 - c3 * c2)
    )
    num_b = (
        c0 * (c2 * c5 - c4 * c3)
        - c1 * (c1 * c5 - c2 * c4)
        + c3 * (c1 * c3 - c2 * c2)
    )
    num_g = (
        c0 * (c2 * c4 - c3 * c3)
        - c1 * (c1 * c4 - c2 * c3)
        + c2 * (c1 * c3 - c2 * c2)
    )
    wa, wb, wg = num_a / det3, num_b / det3, num_g / det3
    y3 = A.tmatvec(y2)
    r3 = _finite_vector(r0 - wa * p + wb * p1 - wg * p2, "r_3", 3)
    z3 = _finite_vector(y - wa * y1 + wb * y2 - wg * y3, "z_3", 3)
    x3 = x0 + wa * r0 - wb * p + wg * p1
    trk.accept(3, x3, r3)
    st.k, st.rs, st.xs, st.zs = 3, [r3, r2, r1], [x3, x2, x1], [z3, z2, z1]
    st.ar_back = p
    _notify(on_iterate, 3, r3, x3, {"z": z3})
    rep = trk.try_converged()
    if rep:
        st.converged_at = 3
        st.early_report = rep
    return st


def a12new_coefficients(state, A, cfg=None):
    """Compute the recurrence coefficients for the next iterate.

    Populates the ``q*``/``s*`` scratch of ``state`` (three matvecs and
    three transpose-matvecs) and returns the scalars. Raises
    :class:`BreakdownDetected` naming the denominator that died.
    """
    cfg = SolverConfig() if cfg is None else cfg
    if state.k < 3 or len(state.rs) < 3 or state.ar_back is None:
        raise ValueError("state window is not populated up to iterate 3")
    th = cfg.breakdown_threshold
    k = state.k + 1
    r_km2, r_km3 = state.rs[1], state.rs[2]
    z_km1, z_km2, z_km3 = state.zs

    q1 = A.matvec(r_km2)
    q2 = A.matvec(q1)
    q3 = A.matvec(r_km3)
    s1 = A.tmatvec(z_km2)
    s2 = A.tmatvec(s1)
    s3 = A.tmatvec(z_km3)

    fden = _guard(
        dot(z_km3, state.ar_back),
        scaled_norm2(z_km3) * scaled_norm2(state.ar_back),
        "z_Ar_km4", k, th,
    )
    fk = -dot(s1, state.ar_back) / fden
    b1 = -dot(s3, q1) - fk * dot(z_km3, q3)
    b2 = -dot(s1, q1) - fk * dot(z_km2, q3)
    b3 = -dot(z_km1, q2) - fk * dot(z_km1, q3)
    z_ar = dot(z_km1, q1)
    zr_km2 = dot(z_km2, r_km2)
    zr_km3 = dot(z_km3, r_km3)
    delta_k = -zr_km3 * zr_km2 * z_ar

    _guard(z_ar, scaled_norm2(z_km1) * scaled_norm2(q1), "z_Ar_km2", k, th)
    bk = cfg.bk_sign * b3 / z_ar
    _guard(zr_km3, scaled_norm2(z_km3) * scaled_norm2(r_km3), "z_r_km3", k, th)
    gk = (b1 - dot(z_km3, q1) * bk) / zr_km3
    _guard(zr_km2, scaled_norm2(z_km2) * scaled_norm2(r_km2), "z_r_km2", k, th)
    ck = (b2 - dot(z_km2, q1) * bk) / zr_km2
    _guard(ck + gk, abs(ck) + abs(gk), "Ck_plus_Gk", k, th)
    ak = 1.0 / (ck + gk)
    for name, v in (("F_k", fk), ("B_k", bk), ("G_k", gk), ("C_k", ck), ("A_k", ak)):
        _finite_scalar(v, name, k)

    state.q1, state.q2, state.q3 = q1, q2, q3
    state.s1, state.s2, state.s3 = s1, s2, s3
    return RecurrenceCoefficients(
        A_k=ak, B_k=bk, C_k=ck, F_k=fk, G_k=gk,
        b1=b1, b2=b2, b3=b3, Delta_k=delta_k,
    )


def a12new_step(state, coeffs, A):
    """Advance the window by one iterate using precomputed coefficients.

    Mutates ``state`` in place (and returns it): new residual, iterate and
    left vector are formed from the scratch filled by
    :func:`a12new_coefficients`, the windows rotate and ``ar_back`` takes
    this iteration's ``A r_{k-3}``. Raises :class:`OverflowError` if any
    component comes out non-finite; the window is untouched in that case.
    """
    if state.q1 is None:
        raise ValueError("a12new_coefficients must run before a12new_step")
    k = state.k + 1
    n = state.rs[0].shape[0]
    ak, bk, ck, fk, gk = coeffs.A_k, coeffs.B_k, coeffs.C_k, coeffs.F_k, coeffs.G_k

    rk = _lc5(n, ak, state.q2, ak * bk, state.q1, ak * ck, state.rs[1],
              ak * fk, state.q3, ak * gk, state.rs[2])
    xk = _lc5(n, ak * ck, state.xs[1], ak * gk, state.xs[2], -ak, state.q1,
              -ak * bk, state.rs[1], -ak * fk, state.rs[2])
    zk = _lc5(n, ak, state.s2, ak * bk, state.s1, ak * ck, state.zs[1],
              ak * fk, state.s3, ak * gk, state.zs[2])
    _finite_vector(rk, "r_k", k)
    _finite_vector(xk, "x_k", k)
    _finite_vector(zk, "z_k", k)

    state.rs = [rk, state.rs[0], state.rs[1]]
    state.xs = [xk, state.xs[0], state.xs[1]]
    state.zs = [zk, state.zs[0], state.zs[1]]
    state.ar_back = state.q3
    state.q1 = state.q2 = state.q3 = None
    state.s1 = state.s2 = state.s3 = None
    state.k = k
    return state


def solve_a12new(A, b, x0, y, cfg=None, on_iterate=None):
    """Run the left-vector variant until the residual norm drops under
    ``cfg.eps``.

    The residual norm is also checked for iterates 1..3 built during
    initialization, so systems solved by a low-degree polynomial terminate
    before the main recurrence starts. See :func:`solve_a12` for the
    parameter and callback conventions; ``extras['z']`` carries the left
    vector of each iterate.

    Returns
    -------
    ConvergenceReport
    """
    cfg = SolverConfig() if cfg is None else cfg
    b, x0, y = _validate_inputs(A, b, x0, y)
    t0 = time.perf_counter()
    trk = _Tracker(A, b, cfg, t0)
    maxit = 10 * A.n if cfg.max_iterations is None else cfg.max_iterations
    try:
        st = _a12new_init(A, b, x0, y, cfg, trk, on_iterate)
        if st.early_report is not None:
            return st.early_report
        for k in range(4, maxit + 1):
            coeffs = a12new_coefficients(st, A, cfg)
            a12new_step(st, coeffs, A)
            trk.accept(k, st.xs[0], st.rs[0])
            _notify(on_iterate, k, st.rs[0], st.xs[0],
                    {"z": st.zs[0], "coeffs": coeffs})
            rep = trk.try_converged()
            if rep:
                return rep
        return trk.finish("max_iterations")
    except BreakdownDetected as e:
        return trk.finish("breakdown", breakdown=e)
    except OverflowError:
        return trk.finish("overflow")
