#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Per-kernel timings run in-process on the generated block matrix; the
end-to-end solve comparison spawns one subprocess per backend so each gets
a clean import under its LANCZOS_A12_BACKEND setting.

Usage: python benchmarks/bench_kernels.py [--dims 500,2000] [--skip-e2e]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from lanczos_a12 import generate_problem, kernels

E2E_SNIPPET = """
import time
import numpy as np
import lanczos_a12 as la

n = {n}
A, b, _ = la.generate_problem(n, 0.0)
x0 = np.zeros(n)
la.solve_a12new(A, b, x0, b)  # warm-up (jit compile / cache load)
t0 = time.perf_counter()
rep = la.solve_a12new(A, b, x0, b)
print(time.perf_counter() - t0, rep.iterations, rep.status)
"""


def best_time(fn, repeat=5, number=20):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def kernel_table(n):
    A, b, _ = generate_problem(n, 0.0)
    v = np.linspace(-1.0, 1.0, n)
    out = np.empty(n)
    ws = np.linspace(0.1, 0.5, 5)
    vs = [np.sin(np.arange(n) + i) for i in range(5)]
    lin_args = []
    for w, vec in zip(ws, vs):
        lin_args.extend([w, vec])

    numpy_impls = {
        "csr_matvec": lambda: kernels._np_csr_matvec(
            A.indptr, A.indices, A.data, v, out),
        "csr_tmatvec": lambda: kernels._np_csr_tmatvec(
            A.indptr, A.indices, A.data, v, out),
        "vdot": lambda: kernels._np_vdot(vs[0], vs[1]),
        "lincomb5": lambda: kernels._np_lincomb5(*lin_args, out),
    }

    numba_impls = None
    if kernels.NUMBA_AVAILABLE:
        from numba import njit

        jit = {
            "csr_matvec": njit(cache=True)(kernels._loop_csr_matvec),
            "csr_tmatvec": njit(cache=True)(kernels._loop_csr_tmatvec),
            "vdot": njit(cache=True)(kernels._loop_vdot),
            "lincomb5": njit(cache=True)(kernels._loop_lincomb5),
        }
        numba_impls = {
            "csr_matvec": lambda: jit["csr_matvec"](
                A.indptr, A.indices, A.data, v, out),
            "csr_tmatvec": lambda: jit["csr_tmatvec"](
                A.indptr, A.indices, A.data, v, out),
            "vdot": lambda: jit["vdot"](vs[0], vs[1]),
            "lincomb5": lambda: jit["lincomb5"](*lin_args, out),
        }
        for fn in numba_impls.values():
            fn()  # compile before timing

    print(f"\nkernel timings, n={n} (seconds per call, best of 5x20)")
    header = f"{'kernel':<12} {'numpy':>12}"
    if numba_impls:
        header += f" {'numba':>12} {'speedup':>9}"
    print(header)
    for name, np_fn in numpy_impls.items():
        t_np = best_time(np_fn)
        line = f"{name:<12} {t_np:12.3e}"
        if numba_impls:
            t_nb = best_time(numba_impls[name])
            line += f" {t_nb:12.3e} {t_np / t_nb:8.1f}x"
        print(line)


def end_to_end(n):
    print(f"\nend-to-end solve (a12new, generated problem, n={n})")
    backends = ["numpy"] + (["numba"] if kernels.NUMBA_AVAILABLE else [])
    for backend in backends:
        env = dict(os.environ, LANCZOS_A12_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-c", E2E_SNIPPET.format(n=n)],
            capture_output=True, text=True, env=env, check=True,
        )
        secs, iters, status = proc.stdout.split()
        print(f"{backend:<8} {float(secs):10.4f}s  "
              f"iterations={iters} status={status}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", default="500,2000",
                        help="comma list of problem sizes (default 500,2000)")
    parser.add_argument("--skip-e2e", action="store_true",
                        help="skip the subprocess end-to-end comparison")
    args = parser.parse_args()

    print(f"selected backend: {kernels.BACKEND} "
          f"(numba available: {kernels.NUMBA_AVAILABLE})")
    dims = [int(d) for d in args.dims.split(",")]
    for n in dims:
        kernel_table(n)
    if not args.skip_e2e:
        end_to_end(dims[0])


if __name__ == "__main__":
    main()
