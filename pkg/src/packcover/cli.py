"""Command-line entry point: ``packcover {check,transform,bounds,render,refine}``.

Exit codes: 0 success or property holds, 1 property fails or a bound is
not met, 2 usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys

from . import bounds, io
from ._numeric import ArithmeticModeError
from .bounds import BoundDomainError
from .convex import GeometryError
from .greedy import (
    COVER_TO_PACK,
    PACK_TO_COVER,
    PreconditionError,
    ProofClaimError,
    theorem_pipeline,
)
from .render import render_svg
from .torus import EXACT2D, GRID, ParameterError, is_packing, refine_lattice, uncovered_volume

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _method(args, A):
    if args.grid_h is not None:
        if not args.grid_h > 0:
            raise UsageError("--grid-h must be positive")
        return GRID, args.grid_h
    if A.d != 2:
        raise UsageError("dimension 3 needs the grid method: pass --grid-h")
    return EXACT2D, None


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args):
    A = io.load_arrangement(args.input, args.arithmetic)
    method, h = _method(args, A)
    packing, pw = is_packing(A)
    cov = uncovered_volume(A, method, h)
    if args.assert_:
        kinds = [args.assert_]
    else:
        kinds = [k for k, holds in ((bounds.PACKING, packing), (bounds.COVERING, cov.is_covering))
                 if holds]
        if not kinds:
            kinds = [bounds.PACKING if A.density() <= 1 else bounds.COVERING]
    report = {
        "points": len(A.points),
        "is_packing": packing,
        "packing_witness": None if pw is None else {
            "i": pw.i, "j": pw.j, "lattice_vector": io._point_out(pw.lattice_vector)},
        "is_covering": cov.is_covering,
        "uncovered_volume": io._num_out(cov.uncovered_volume),
        "uncovered_witness": None if cov.witness_uncovered is None
        else io._point_out(cov.witness_uncovered),
        "coverage_method": cov.method,
        "coverage_certified": cov.certified,
        "reports": [io.density_report_to_dict(
            bounds.density_report(A, k, c=args.schmidt_c)) for k in kinds],
    }
    _emit(io.dumps(report), args.output)
    if args.assert_ == bounds.PACKING:
        return EXIT_OK if packing else EXIT_FAIL
    if args.assert_ == bounds.COVERING:
        return EXIT_OK if cov.is_covering else EXIT_FAIL
    return EXIT_OK


def cmd_transform(args):
    A = io.load_arrangement(args.input, args.arithmetic)
    method, h = _method(args, A)
    if args.alpha is not None:
        if not 0 < args.alpha < 1:
            raise UsageError("--alpha must lie in (0, 1)")
        if (args.direction == PACK_TO_COVER and not A.body.symmetric
                and args.alpha > 1.0 / A.d):
            raise UsageError(f"--alpha must not exceed 1/d = {1.0 / A.d:g} for a body that is "
                             "not centrally symmetric")
    try:
        res = theorem_pipeline(A, args.direction, method, h, alpha=args.alpha)
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ProofClaimError as exc:
        print(f"per-step check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.output:
        io.save_arrangement(res.output, args.output)
    if args.trace:
        io.save_trace(res.trace, args.trace)
    if args.svg:
        if res.output.d != 2:
            raise UsageError("SVG rendering needs a planar arrangement")
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(res.output, res.trace))
    sys.stdout.write(io.dumps(io.transform_report(res)))
    good = res.ok and (res.theorem_bound_satisfied is not False)
    return EXIT_OK if good else EXIT_FAIL


def _sweep_values(spec):
    try:
        lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"--sweep expects LO:HI:N, got {spec!r}") from None
    if n < 1 or not 0 < lo <= hi < 1:
        raise UsageError("--sweep needs 0 < LO <= HI < 1 and N >= 1")
    if n == 1:
        return [lo]
    a, b = math.log10(lo), math.log10(hi)
    return [10 ** (a + (b - a) * k / (n - 1)) for k in range(n)]


def cmd_bounds(args):
    eps_list = list(args.eps or [])
    if args.sweep:
        eps_list += _sweep_values(args.sweep)
    for e in eps_list:
        if not 0 < e < 1:
            raise UsageError(f"epsilon must lie in (0, 1), got {e!r}")
    d = args.d
    if d < 2:
        raise UsageError("--d must be at least 2")
    rows = []
    for e in eps_list:
        cov, branch = bounds.thm_cover_bound(e, d, args.symmetric, with_branch=True)
        rows.append({"d": d, "epsilon": e, "cover_bound": cov, "cover_branch": branch,
                     "pack_bound": bounds.thm_pack_bound(e, d)})
    crossovers = []
    dims = range(args.crossover_range[0], args.crossover_range[1] + 1) if args.crossover_range \
        else ([d] if d >= 3 else [])
    for dd in dims:
        if dd < 3:
            raise UsageError("crossovers need d >= 3")
        W = args.w if args.w is not None else 2.0
        for t in bounds.crossover_report(dd, args.schmidt_c, args.symmetric, W):
            crossovers.append({"d": dd, "name": t.name, "value": t.value, "inner": t.inner,
                               "applicable": t.applicable, "condition": t.condition})
    _emit(io.dumps({"bounds": rows, "crossovers": crossovers}), args.output)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            if rows:
                w = csv.DictWriter(fh, fieldnames=list(rows[0]))
                w.writeheader()
                w.writerows(rows)
            if crossovers:
                if rows:
                    fh.write("\n")
                w = csv.DictWriter(fh, fieldnames=list(crossovers[0]))
                w.writeheader()
                w.writerows(crossovers)
    return EXIT_OK


def cmd_render(args):
    A = io.load_arrangement(args.input, args.arithmetic)
    if A.d != 2:
        raise UsageError("only planar arrangements can be rendered")
    if not args.svg:
        raise UsageError("render needs --svg PATH")
    trace = io.load_trace(args.trace) if args.trace else None
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(render_svg(A, trace))
    return EXIT_OK


def cmd_refine(args):
    A = io.load_arrangement(args.input, args.arithmetic)
    m = refine_lattice(A.body, A.lattice, cap=args.cap)
    _emit(io.dumps({"m": m}), args.output)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="packcover", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", required=True, help="arrangement JSON")
        sp.add_argument("--arithmetic", choices=["rational", "float"], default=None)
        sp.add_argument("--output", help="write the main result here instead of stdout")

    sp = sub.add_parser("check", help="verify packing/covering and report densities")
    common(sp)
    sp.add_argument("--assert", dest="assert_", choices=[bounds.PACKING, bounds.COVERING])
    sp.add_argument("--grid-h", type=float, default=None)
    sp.add_argument("--schmidt-c", type=float, default=1.0)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("transform", help="run the greedy packing/covering conversion")
    common(sp)
    sp.add_argument("--direction", required=True, choices=[PACK_TO_COVER, COVER_TO_PACK])
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--grid-h", type=float, default=None)
    sp.add_argument("--trace")
    sp.add_argument("--svg")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("bounds", help="tabulate the closed-form bounds")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--eps", type=float, nargs="*")
    sp.add_argument("--sweep", help="log-spaced epsilons LO:HI:N")
    sp.add_argument("--symmetric", action="store_true")
    sp.add_argument("--schmidt-c", type=float, default=1.0)
    sp.add_argument("--w", type=float, default=None, help="W(C) for the Minkowski crossover")
    sp.add_argument("--crossover-range", type=int, nargs=2, metavar=("DMIN", "DMAX"))
    sp.add_argument("--csv")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("render", help="draw a planar arrangement as SVG")
    common(sp)
    sp.add_argument("--svg")
    sp.add_argument("--trace")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("refine", help="smallest m separating the translates by mL")
    common(sp)
    sp.add_argument("--cap", type=int, default=64)
    sp.set_defaults(func=cmd_refine)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, io.FormatError, ParameterError, BoundDomainError,
            ArithmeticModeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeometryError as exc:
        print(f"geometry error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
