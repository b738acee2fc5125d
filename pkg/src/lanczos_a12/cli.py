"""Benchmark harness: solver x problem sweeps with Table-style reports.

Example
-------
Reproduce the delta=0 sweep over n = 10..100 with both solvers::

    lanczos-a12 --alg all --dims 10:100:10 --delta 0.0 --eps 1e-5 --out table

Exit code is 0 when every run converged, 1 when any run failed, 2 on usage
errors.
"""

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .problems import generate_problem, load_matrix_market, load_vector
from .solvers import SolverConfig, solve_a12, solve_a12new

__all__ = ["RunConfig", "SweepRecord", "run_sweep", "emit_records",
           "emit_history", "main"]

ALGORITHMS = ("a12", "a12new")
CSV_HEADER = ("algorithm", "n", "delta", "status", "iterations",
              "final_residual", "time_sec")

_SOLVERS = {"a12": solve_a12, "a12new": solve_a12new}


@dataclass
class RunConfig:
    """One sweep: which solvers, which problems, how to report."""

    algorithms: list
    dims: list
    delta: float = 0.0
    eps: float = 1.0e-5
    max_iterations: int | None = None
    y_choice: str = "r0"  # r0 | ones | <path>
    out_format: str = "table"  # table | csv | jsonl
    history_dir: str | None = None
    matrix_path: str | None = None
    rhs_path: str | None = None

    def validate(self):
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {alg!r}")
        if self.matrix_path is None and not self.dims:
            raise ValueError("at least one dimension is required")
        if self.out_format not in ("table", "csv", "jsonl"):
            raise ValueError(f"unknown output format {self.out_format!r}")


@dataclass
class SweepRecord:
    algorithm: str
    n: int
    delta: float
    status: str
    iterations: int
    final_residual: float
    time_sec: float
    message: str = field(default="", repr=False)

    def fields(self):
        return (self.algorithm, str(self.n), repr(self.delta), self.status,
                str(self.iterations), repr(self.final_residual),
                f"{self.time_sec:.6f}")

    def table_fields(self):
        return (self.algorithm, str(self.n), repr(self.delta), self.status,
                str(self.iterations), f"{self.final_residual:.4e}",
                f"{self.time_sec:.6f}")


def parse_dims(text):
    """Parse '10:100:10' (inclusive range) or '10,20,30' or '50'."""
    text = text.strip()
    if not text:
        raise ValueError("empty dimension list")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (int(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad range {text!r}")
        dims = list(range(start, stop + 1, step))
    else:
        dims = [int(p) for p in text.split(",") if p.strip()]
    if not dims or any(d <= 0 for d in dims):
        raise ValueError(f"dimensions must be positive: {text!r}")
    return sorted(set(dims))


def _resolve_y(choice, rhs, A, x0):
    if choice == "r0":
        return rhs - A.matvec(x0)
    if choice == "ones":
        return np.ones(A.n)
    y = load_vector(choice)
    if y.shape[0] != A.n:
        raise ValueError(
            f"y vector {choice!r} has length {y.shape[0]}, matrix is {A.n}x{A.n}"
        )
    return y


def run_sweep(cfg, err=sys.stderr):
    """Execute every (algorithm, n) pair of the sweep.

    Returns ``(exit_code, records)``; records are ordered by algorithm then
    dimension, regardless of how the runs executed. Per-run file problems
    are reported on ``err`` and recorded with status ``error`` without
    aborting the rest of the sweep.
    """
    cfg.validate()

    problems = []
    if cfg.matrix_path is not None:
        try:
            A = load_matrix_market(cfg.matrix_path)
            if cfg.rhs_path is not None:
                rhs = load_vector(cfg.rhs_path)
                if rhs.shape[0] != A.n:
                    raise ValueError(
                        f"rhs has length {rhs.shape[0]}, matrix is {A.n}x{A.n}"
                    )
            else:
                rhs = A.matvec(np.ones(A.n))
            problems.append((A.n, A, rhs))
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=err)
            records = [
                SweepRecord(alg, 0, cfg.delta, "error", 0, float("nan"), 0.0,
                            message=str(exc))
                for alg in sorted(cfg.algorithms)
            ]
            return 1, records
    else:
        for n in sorted(cfg.dims):
            A, rhs, _ = generate_problem(n, cfg.delta)
            problems.append((n, A, rhs))

    solver_cfg = SolverConfig(eps=cfg.eps, max_iterations=cfg.max_iterations)
    records = []
    all_ok = True
    for alg in sorted(cfg.algorithms):
        solver = _SOLVERS[alg]
        for n, A, rhs in problems:
            x0 = np.zeros(A.n)
            try:
                y = _resolve_y(cfg.y_choice, rhs, A, x0)
            except (OSError, ValueError) as exc:
                print(f"error: {alg} n={n}: {exc}", file=err)
                records.append(SweepRecord(alg, n, cfg.delta, "error", 0,
                                           float("nan"), 0.0, message=str(exc)))
                all_ok = False
                continue
            report = solver(A, rhs, x0, y, solver_cfg)
            records.append(SweepRecord(
                alg, n, cfg.delta, report.status_token, report.iterations,
                report.final_residual, report.wall_time,
            ))
            if not report.converged:
                all_ok = False
            if cfg.history_dir is not None:
                path = Path(cfg.history_dir) / f"{alg}_n{n}.txt"
                try:
                    emit_history(report, path)
                except OSError as exc:
                    print(f"error: could not write {path}: {exc}", file=err)
    return (0 if all_ok else 1), records


def emit_history(report, path):
    """Write one 'k residual_norm' line per iterate (k = 0 included)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii") as fh:
        for k, rn in enumerate(report.residual_history):
            fh.write(f"{k} {rn:.17g}\n")


def emit_records(records, out_format, stream):
    if out_format == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(rec.fields())
    elif out_format == "jsonl":
        for rec in records:
            stream.write(json.dumps({
                "algorithm": rec.algorithm,
                "n": rec.n,
                "delta": rec.delta,
                "status": rec.status,
                "iterations": rec.iterations,
                "final_residual": rec.final_residual,
                "time_sec": round(rec.time_sec, 6),
            }) + "\n")
    else:
        rows = [r.table_fields() for r in records]
        widths = [max(len(h), max((len(row[i]) for row in rows), default=0))
                  for i, h in enumerate(CSV_HEADER)]
        header = "  ".join(h.ljust(w) for h, w in zip(CSV_HEADER, widths))
        stream.write(header.rstrip() + "\n")
        for row in rows:
            line = "  ".join(f.ljust(w) for f, w in zip(row, widths))
            stream.write(line.rstrip() + "\n")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lanczos-a12",
        description="Benchmark the a12 / a12new Lanczos-type solvers on "
                    "generated convection-diffusion systems or Matrix Market "
                    "input.",
    )
    parser.add_argument("--alg", default="all", metavar="a12|a12new|all",
                        help="solver(s) to run (default: all)")
    parser.add_argument("--dims", default="10:100:10", metavar="SPEC",
                        help="dimensions as start:stop:step or comma list "
                             "(default: 10:100:10); ignored with --matrix")
    parser.add_argument("--delta", type=float, default=0.0,
                        help="generator asymmetry parameter (default: 0)")
    parser.add_argument("--eps", type=float, default=1.0e-5,
                        help="residual tolerance (default: 1e-5)")
    parser.add_argument("--max-iters", type=int, default=None,
                        help="iteration cap (default: 10*n)")
    parser.add_argument("--y", default="r0", metavar="r0|ones|PATH",
                        help="left seed vector choice (default: r0)")
    parser.add_argument("--matrix", default=None, metavar="PATH.mtx",
                        help="Matrix Market operator instead of the generator")
    parser.add_argument("--rhs", default=None, metavar="PATH",
                        help="right-hand side file (with --matrix; "
                             "default: A @ ones)")
    parser.add_argument("--out", default="table", choices=("table", "csv", "jsonl"),
                        help="output format (default: table)")
    parser.add_argument("--history", default=None, metavar="DIR",
                        help="write per-run residual history files here")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        algorithms = list(ALGORITHMS) if args.alg == "all" else [args.alg]
        cfg = RunConfig(
            algorithms=algorithms,
            dims=parse_dims(args.dims) if args.matrix is None else [],
            delta=args.delta,
            eps=args.eps,
            max_iterations=args.max_iters,
            y_choice=args.y,
            out_format=args.out,
            history_dir=args.history,
            matrix_path=args.matrix,
            rhs_path=args.rhs,
        )
        cfg.validate()
        SolverConfig(eps=cfg.eps, max_iterations=cfg.max_iterations)
    except ValueError as exc:
        parser.error(str(exc))  # exits with status 2
    try:
        code, records = run_sweep(cfg)
    except ValueError as exc:
        # reachable for config-level problems only (e.g. a dimension the
        # generator rejects); per-run file errors are handled inside
        parser.error(str(exc))
    emit_records(records, cfg.out_format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
