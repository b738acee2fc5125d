import numpy as np
import pytest

import lanczos_a12 as la
from lanczos_a12.linalg import DenseOperator


def dense_block_matrix(n, delta):
    """Brute-force dense build of the generated test family, independent of
    the CSR generator."""
    assert n % 10 == 0
    alpha = -1.0 + delta
    beta = -1.0 - delta
    a = np.zeros((n, n))
    for g in range(n):
        a[g, g] = 4.0
        if g % 10 != 0:
            a[g, g - 1] = beta
        if g % 10 != 9:
            a[g, g + 1] = alpha
        if g >= 10:
            a[g, g - 10] = -1.0
        if g < n - 10:
            a[g, g + 10] = -1.0
    return a


def oracle_instance(rng, n=8, skew=0.03):
    """Well-conditioned unsymmetric system for oracle comparisons.

    Chebyshev-distributed spectrum over [0.3, 5] keeps the residual from
    collapsing through degree 6 while the moment matrices stay solvable.
    """
    theta = (2 * np.arange(n) + 1) * np.pi / (2 * n)
    vals = 2.65 + 2.35 * np.cos(theta) + rng.uniform(-0.02, 0.02, n)
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    s = rng.normal(size=(n, n))
    s = (s - s.T) / 2
    A = DenseOperator(q @ np.diag(vals) @ q.T + skew * s / np.sqrt(n))
    b = rng.normal(size=n)
    return A, b


def accepted_oracle_instances(count, seed=20240501, pivot_cut=1e-10,
                              max_order=7, max_attempts=500):
    """Fixed-seed oracle instances whose moment-matrix pivots are healthy
    through ``max_order``."""
    rng = np.random.default_rng(seed)
    kept = []
    for _ in range(max_attempts):
        if len(kept) >= count:
            break
        A, b = oracle_instance(rng)
        c = la.moments(A, b, b, 2 * max_order + 1)
        if min(la.hankel_pivot_ratio(c, k) for k in range(1, max_order + 1)) >= pivot_cut:
            kept.append((A, b))
    assert len(kept) >= count, f"only {len(kept)} instances accepted"
    return kept


def separated_spectrum_instance(rng, n=8):
    """Symmetric system with well-separated eigenvalues (gap >= 0.5)."""
    vals = np.sort(rng.uniform(1.0, 10.0, n))
    while np.min(np.diff(vals)) < 0.5:
        vals = np.sort(rng.uniform(1.0, 10.0, n))
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    A = DenseOperator(q @ np.diag(vals) @ q.T)
    b = rng.normal(size=n)
    return A, b


def collect_iterates(solver, A, b, y, kmax, **cfg_kw):
    """Run a solver far past convergence checks and capture r_k by index."""
    got = {}
    cfg = la.SolverConfig(eps=1e-30, max_iterations=max(kmax, 4), **cfg_kw)
    solver(A, b, np.zeros(A.n), y, cfg,
           on_iterate=lambda k, r, x, e: got.__setitem__(k, (r.copy(), x.copy(), e)))
    return got


@pytest.fixture(scope="session")
def oracle_suite():
    return accepted_oracle_instances(50)
