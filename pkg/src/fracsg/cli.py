"""Command-line entry point: ``fracsg {ml,lognorm,sweep,fracheat}``.

Exit codes: 0 success, 1 a verified bound failed, 2 evaluator or solver
error, 3 unreadable matrix file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import FracsgError
from .fracode import contraction_demo
from .normcore import NormSpec, log_norm
from .specfun import MLParams, ml_eval
from .sweep import ENSEMBLES, SweepConfig, run_sweep

REPORT_FIELDS = ("case", "alpha", "beta", "t", "norm", "mu", "lhs", "rhs", "margin", "holds", "status")


class MatrixParseError(ValueError):
    pass


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return repr(float(x))


def _json_value(x):
    if isinstance(x, (bool, str, int)):
        return x
    x = float(x)
    return x if math.isfinite(x) else None


def _floats(text: str) -> tuple:
    return tuple(float(v) for v in text.split(",") if v.strip())


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def read_matrix(path: str) -> np.ndarray:
    """Matrix file: a line ``n=<N>`` followed by N comma-separated rows."""
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise MatrixParseError(str(exc)) from exc
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise MatrixParseError("first line must be n=<N>")
    try:
        n = int(lines[0].replace(" ", "")[2:])
    except ValueError as exc:
        raise MatrixParseError(f"bad size line {lines[0]!r}") from exc
    if n < 1 or len(lines) - 1 != n:
        raise MatrixParseError(f"expected {n} rows, found {len(lines) - 1}")
    try:
        rows = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
    except ValueError as exc:
        raise MatrixParseError(str(exc)) from exc
    if any(len(r) != n for r in rows):
        raise MatrixParseError(f"every row needs {n} entries")
    a = np.array(rows)
    if not np.all(np.isfinite(a)):
        raise MatrixParseError("matrix entries must be finite")
    return a


# ---------------------------------------------------------------------------
# commands


def cmd_ml(args) -> int:
    try:
        value = ml_eval(MLParams(args.alpha, args.beta), complex(args.z, args.z_im))
    except (FracsgError, ArithmeticError) as exc:
        print(f"ml: {exc}", file=sys.stderr)
        return 2
    if args.z_im == 0:
        print(f"{value.real:.16g}")
    else:
        print(f"{value.real:.16g}{value.imag:+.16g}j")
    return 0


def cmd_lognorm(args) -> int:
    try:
        a = read_matrix(args.matrix_file)
        spec = NormSpec.parse(args.p)
    except (MatrixParseError, ValueError) as exc:
        print(f"lognorm: {exc}", file=sys.stderr)
        return 3
    try:
        mu = log_norm(a, spec)
    except (FracsgError, ArithmeticError) as exc:
        print(f"lognorm: {exc}", file=sys.stderr)
        return 2
    print(f"{mu:.15g}")
    return 0


def sweep_report(result, fmt: str) -> str:
    if fmt == "json":
        rows = []
        for i, r in enumerate(result.rows):
            rec = {"case": i}
            for key in REPORT_FIELDS[1:]:
                rec[key] = _json_value(getattr(r, key))
            rows.append(rec)
        meta = {"seed": result.config.seed, "version": __version__, "config": result.config.echo()}
        return json.dumps({"meta": meta, "rows": rows}, indent=1, sort_keys=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for i, r in enumerate(result.rows):
        writer.writerow([_fmt(i)] + [_fmt(getattr(r, key)) for key in REPORT_FIELDS[1:]])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    try:
        config = SweepConfig(
            seed=args.seed, cases=args.cases, dim_max=args.dim_max,
            alphas=_floats(args.alphas), betas=_floats(args.betas), times=_floats(args.times),
            norms=tuple(p for p in args.norms.split(",") if p.strip()),
            ensemble=args.ensemble, method=args.method, tol=args.tol, rtol=args.rtol,
            output_path=args.output, format=args.format,
        )
    except ValueError as exc:
        print(f"sweep: {exc}", file=sys.stderr)
        return 2
    result = run_sweep(config)
    _emit(sweep_report(result, config.format), config.output_path)
    summary = result.summary()
    if config.output_path in (None, "-"):
        print(summary, file=sys.stderr)
    else:
        print(summary)
    if result.errors:
        print(f"sweep: {result.errors} case(s) failed to evaluate", file=sys.stderr)
    return 1 if result.violations else 0


def trajectory_report(traj, fmt: str, dump_states: bool, meta: dict) -> str:
    n = traj.states.shape[1]
    if fmt == "json":
        rows = []
        for k, (t, nrm) in enumerate(zip(traj.times, traj.norm_history)):
            rec = {"k": k, "t": float(t), "norm2": float(nrm)}
            if dump_states:
                rec["state"] = [float(v) for v in traj.states[k]]
            rows.append(rec)
        return json.dumps({"meta": meta, "rows": rows}, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["k", "t", "norm2"] + ([f"u{i}" for i in range(n)] if dump_states else [])
    writer.writerow(header)
    for k, (t, nrm) in enumerate(zip(traj.times, traj.norm_history)):
        row = [str(k), _fmt(t), _fmt(nrm)]
        if dump_states:
            row += [_fmt(v) for v in traj.states[k]]
        writer.writerow(row)
    return buf.getvalue()


def cmd_fracheat(args) -> int:
    try:
        traj, contraction, _ = contraction_demo(args.N, args.alpha, args.T, args.steps,
                                                perturbation=args.perturbation, seed=args.seed)
    except (FracsgError, ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"fracheat: {exc}", file=sys.stderr)
        return 2
    n0 = traj.norm_history[0]
    ratio = float(np.max(traj.norm_history) / n0) if n0 > 0 else 1.0
    ok = all(r.holds for r in contraction)
    meta = {"version": __version__, "N": args.N, "alpha": args.alpha, "T": args.T,
            "steps": args.steps, "perturbation": args.perturbation, "seed": args.seed}
    _emit(trajectory_report(traj, args.format, args.dump_states, meta), args.output)
    summary = f"fracheat: contraction={'pass' if ok else 'fail'} max_norm_ratio={ratio:.6e}"
    print(summary, file=sys.stderr if args.output in (None, "-") else sys.stdout)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracsg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fracsg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ml", help="evaluate E_{alpha,beta}(z)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--z", type=float, required=True, help="real part of z")
    p.add_argument("--z-im", type=float, default=0.0, help="imaginary part of z")
    p.set_defaults(func=cmd_ml)

    p = sub.add_parser("lognorm", help="logarithmic norm of a matrix file")
    p.add_argument("matrix_file")
    p.add_argument("--p", default="2", help="1, 2 or inf")
    p.set_defaults(func=cmd_lognorm)

    p = sub.add_parser("sweep", help="random sweep of the fractional growth bound")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--dim-max", type=int, default=8)
    p.add_argument("--alphas", default="0.3,0.5,0.7,0.9,1.0")
    p.add_argument("--betas", default="0.5,1")
    p.add_argument("--times", default="0.1,1,10")
    p.add_argument("--norms", default="1,2,inf")
    p.add_argument("--ensemble", choices=ENSEMBLES, default="Mixed")
    p.add_argument("--method", choices=("auto", "spectral", "subordination"), default="auto")
    p.add_argument("--tol", type=float, default=1e-8, help="quadrature tolerance")
    p.add_argument("--rtol", type=float, default=1e-8, help="relative slack of the bound")
    p.add_argument("--output", "-o", default=None, help="report path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fracheat", help="fractional heat equation contraction demo")
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=512)
    p.add_argument("--perturbation", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--dump-states", action="store_true")
    p.set_defaults(func=cmd_fracheat)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
