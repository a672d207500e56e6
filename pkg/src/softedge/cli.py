"""Command-line front end: ``softedge <command> [options]``.

Artifacts are written to ``--output`` or, by default, into the directory named
by ``$SOFTEDGE_OUTPUT_DIR`` (current directory if unset).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io
from .ensembles import DensityCurve, EnsembleSpec, ScalingKind, gue_density_raw, scaling_map
from .expansion import compute_series
from .laplace import laplace_numeric, recursion_residual
from .mc import edge_histogram, estimate_moment, sample_dense, sample_tridiagonal
from .moments import MomentSource, MomentValue, moment_closed_form, moment_quadrature
from .verify import verify_suite

OUTPUT_DIR_ENV = "SOFTEDGE_OUTPUT_DIR"
_SCALINGS = {"raw": ScalingKind.RAW, "global": ScalingKind.GLOBAL, "soft": ScalingKind.SOFT_EDGE,
             "softEdge": ScalingKind.SOFT_EDGE}
# options whose values may start with a minus sign
_SIGNED_OPTIONS = ("--grid", "--window")


class UsageError(ValueError):
    pass


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:count``, endpoints included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None
    if count < 2 or not start < stop:
        raise UsageError("grid needs start < stop and count >= 2")
    return np.linspace(start, stop, count)


def parse_window(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"window must be lo:hi, got {text!r}") from None
    return lo, hi


def _beta(text: str) -> Fraction:
    try:
        b = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid beta {text!r}")
    if b <= 0:
        raise argparse.ArgumentTypeError("beta must be positive")
    return b


def _out_path(args, default_name: str) -> Path:
    if args.output:
        return Path(args.output)
    base = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
    base.mkdir(parents=True, exist_ok=True)
    return base / default_name


def _num(b: Fraction):
    return int(b) if b.denominator == 1 else float(b)


# -- commands --------------------------------------------------------------------

def cmd_density(args) -> str:
    if args.beta != 2:
        raise UsageError("analytic densities are available for beta = 2 only")
    kind = _SCALINGS[args.scaling]
    grid = parse_grid(args.grid)
    spec = EnsembleSpec(2, args.n)
    smap = scaling_map(spec, kind)
    values = smap.jacobian * gue_density_raw(args.n, smap.inverse(grid))
    curve = DensityCurve(grid, values, spec, smap)
    path = _out_path(args, f"density_beta2_n{args.n}_{kind.value}.{args.format}")
    if args.format == "csv":
        io.write_density_csv(curve, path)
    else:
        io.write_density_json(curve, path)
    return f"density: {grid.size} points, scaling {kind.value}, max {values.max():.6g} -> {path}"


def cmd_expansion(args) -> str:
    if args.order < 0:
        raise UsageError("order must be >= 0")
    series = compute_series(args.order)
    ext = "json" if args.format == "json" else "txt"
    path = _out_path(args, f"expansion_order{args.order}.{ext}")
    if args.format == "json":
        io.write_series_json(series, path)
    else:
        path.write_text(io.series_report(series) + "\n")
    degrees = ", ".join(str(t.degrees) for t in series.terms)
    return f"expansion: r_0..r_{args.order}, degrees {degrees} -> {path}"


def cmd_moments(args) -> str:
    rows = []
    for n in args.n:
        for k in args.k:
            if args.source in ("closed", "both"):
                rows.append(MomentValue(k, args.beta, n, moment_closed_form(k, args.beta, n), MomentSource.CLOSED_FORM))
            if args.source in ("quadrature", "both"):
                if args.beta != 2:
                    raise UsageError("quadrature moments need beta = 2")
                rows.append(MomentValue(k, args.beta, n, moment_quadrature(k, n), MomentSource.QUADRATURE))
    path = _out_path(args, f"moments_beta{str(args.beta).replace('/', '_')}.{args.format}")
    if args.format == "csv":
        io.write_moments_csv(rows, path)
    else:
        path.write_text(json.dumps(io.moments_to_json(rows), indent=1) + "\n")
    return f"moments: {len(rows)} rows -> {path}"


def cmd_laplace(args) -> str:
    series = compute_series(max(args.order, 0))
    rows = []
    for g in args.gamma:
        if g <= 0:
            raise UsageError("gamma must be positive")
        term = series.terms[args.order]
        u = laplace_numeric(term, g, 0)
        up = laplace_numeric(term, g, 1)
        rows.append((args.order, g, u, up, recursion_residual(args.order, g, series)))
    path = _out_path(args, f"laplace_j{args.order}.csv")
    io.write_laplace_csv(rows, path)
    worst = max(abs(r[4]) for r in rows)
    return f"laplace: j={args.order}, {len(rows)} gamma values, max |residual| {worst:.2e} -> {path}"


def cmd_sample(args) -> str:
    if args.seed is None:
        raise UsageError("--seed is required for sample")
    spec = EnsembleSpec(_num(args.beta), args.n)
    if args.sampler == "tridiagonal":
        batch = sample_tridiagonal(spec, args.reps, args.seed, workers=args.workers)
    else:
        if args.beta not in (1, 2):
            raise UsageError("dense sampler supports beta 1 and 2")
        batch = sample_dense(int(args.beta), args.n, args.reps, args.seed, workers=args.workers)
    lines = []
    m2, se = estimate_moment(batch, 1)
    lines.append(f"sample: beta={args.beta} n={args.n} reps={args.reps} seed={args.seed} sampler={batch.sampler.value}")
    lines.append(f"  m2 = {m2:.6f} +- {se:.6f}")
    tag = f"beta{str(args.beta).replace('/', '_')}_n{args.n}_seed{args.seed}"
    if args.edge_histogram:
        hist = edge_histogram(batch, use_nprime=args.edge_histogram == "nprime",
                              window=parse_window(args.window), bins=args.bins)
        path = _out_path(args, f"edge_hist_{tag}_{args.edge_histogram}.csv")
        io.write_histogram_csv(hist, path)
        lines.append(f"  edge histogram ({hist.scaling_used}, {int(hist.counts.sum())} eigenvalues in window) -> {path}")
    if args.dump:
        base = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
        base.mkdir(parents=True, exist_ok=True)
        data, side = io.save_batch(batch, base / f"batch_{tag}", fmt=args.dump)
        lines.append(f"  eigenvalues -> {data} (+ {side.name})")
    return "\n".join(lines)


def cmd_verify(args) -> str:
    if args.selection and args.suite and args.selection != args.suite:
        raise UsageError("conflicting suite selections")
    args.suite = args.selection or args.suite or "fast"
    results, status = verify_suite(args.suite, echo=print)
    failed = [r.cid for r in results if not r.passed]
    summary = f"verify ({args.suite}): {len(results) - len(failed)}/{len(results)} passed"
    if failed:
        summary += "; failing: " + ", ".join(failed)
    args._status = status
    return summary


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="softedge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", help="finite-N GUE density on a grid")
    d.add_argument("--beta", type=_beta, default=Fraction(2))
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--scaling", choices=sorted(_SCALINGS), default="raw")
    d.add_argument("--grid", required=True, help="start:stop:count (inclusive)")
    d.add_argument("--format", choices=["csv", "json"], default="csv")
    d.add_argument("--output")
    d.set_defaults(func=cmd_density)

    e = sub.add_parser("expansion", help="exact soft-edge expansion terms r_0..r_J")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--format", choices=["json", "report"], default="json")
    e.add_argument("--output")
    e.set_defaults(func=cmd_expansion)

    m = sub.add_parser("moments", help="spectral moment table")
    m.add_argument("--beta", type=_beta, default=Fraction(2))
    m.add_argument("--n", type=int, nargs="+", required=True)
    m.add_argument("--k", type=int, nargs="+", default=[1, 2])
    m.add_argument("--source", choices=["closed", "quadrature", "both"], default="closed")
    m.add_argument("--format", choices=["csv", "json"], default="csv")
    m.add_argument("--output")
    m.set_defaults(func=cmd_moments)

    la = sub.add_parser("laplace", help="Laplace transforms of r_j and recursion residuals")
    la.add_argument("--order", type=int, default=0)
    la.add_argument("--gamma", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    la.add_argument("--output")
    la.set_defaults(func=cmd_laplace)

    s = sub.add_parser("sample", help="Monte Carlo beta-ensemble eigenvalues")
    s.add_argument("--beta", type=_beta, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--reps", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--sampler", choices=["tridiagonal", "dense"], default="tridiagonal")
    s.add_argument("--edge-histogram", choices=["n", "nprime"])
    s.add_argument("--window", default="-6:3")
    s.add_argument("--bins", type=int, default=45)
    s.add_argument("--dump", choices=["npy", "csv"])
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--output")
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("selection", nargs="?", choices=["fast", "full"])
    v.add_argument("--suite", choices=["fast", "full"])
    v.set_defaults(func=cmd_verify)
    return p


def _join_signed(argv):
    out, it = [], iter(argv)
    for a in it:
        if a in _SIGNED_OPTIONS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = _join_signed(sys.argv[1:] if argv is None else list(argv))
    args = build_parser().parse_args(argv)
    try:
        summary = args.func(args)
    except UsageError as exc:
        print(f"error: invalid-argument: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(summary)
    return getattr(args, "_status", 0)


if __name__ == "__main__":
    sys.exit(main())
