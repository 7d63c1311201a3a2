"""Command-line front end.

Coefficient lists are highest degree first, e.g. ``--f 1,0,3`` is X^2 + 3.
Pass negative leading values as ``--f=-1,2``. Moduli are limited to
3 <= p < 2^62.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import bounds
from .errors import DomainError
from .field_core import make_context, primes_in, subgroup_of_order
from .polynomials import PolySpec, RationalSpec, build_q_lambda, format_poly
from .quadrics import IntConic, centered_lift, classify, classify_mod_p, count_points_box
from .small_residues import ReductionProblem, solve_reduction
from .value_sets import (IntervalSpec, count_intersection, product_set_cardinality,
                         t_f, DEFAULT_WORK_CAP)


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _int_range(text: str) -> list[int]:
    """'a:b' (half-open) or a comma list."""
    if ":" in text:
        lo, _, hi = text.partition(":")
        try:
            return list(range(int(lo), int(hi)))
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
    return _ints(text)


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for {args.cmd}")


def _function(args):
    p = args.p
    f = PolySpec.from_coeffs(_ints(args.f), p)
    if args.g is None:
        return f
    return RationalSpec(f, PolySpec.from_coeffs(_ints(args.g), p))


def _fname(r) -> str:
    if isinstance(r, RationalSpec):
        return f"({format_poly(r.numerator)}) / ({format_poly(r.denominator)})"
    return format_poly(r)


def _interval(args, p) -> IntervalSpec:
    I = IntervalSpec(args.u, args.H)
    if I.wraps(p):
        print(f"warning: interval {args.u + 1}..{args.u + args.H} wraps past p - 1 = {p - 1}",
              file=sys.stderr)
    return I


def _emit(rec: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rec) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(rec.keys())
        w.writerow(";".join(map(str, v)) if isinstance(v, (list, tuple)) else v
                   for v in rec.values())


def cmd_count(args, out):
    _need(args, "p", "f", "H", "T")
    ctx = make_context(args.p)
    r = _function(args)
    I = _interval(args, args.p)
    G = subgroup_of_order(ctx, args.T)
    _emit({"p": args.p, "f": _fname(r), "u": I.u, "H": I.H, "T": G.order,
           "count": count_intersection(r, I, G)}, args.format, out)


def cmd_tf(args, out):
    _need(args, "p", "f", "H")
    ctx = make_context(args.p)
    r = _function(args)
    res = t_f(r, args.H, ctx)
    _emit({"p": args.p, "f": _fname(r), "u": res.u, "H": args.H, "T": res.T,
           "generator": res.subgroup.generator}, args.format, out)


def cmd_prodset(args, out):
    _need(args, "p", "f", "H", "nu")
    make_context(args.p)
    f = PolySpec.from_coeffs(_ints(args.f), args.p)
    I = _interval(args, args.p)
    res = product_set_cardinality(f, I, args.nu, work_cap=args.work_cap)
    _emit({"p": args.p, "f": format_poly(f), "u": I.u, "H": I.H, "nu": args.nu,
           "cardinality": res.cardinality, "growth_ratio": f"{res.cardinality / I.H ** args.nu:.6g}"},
          args.format, out)


def cmd_lred(args, out):
    _need(args, "p", "b", "V")
    make_context(args.p)
    b = _ints(args.b)
    try:
        V = [Fraction(s) for s in args.V.split(",")]
    except ValueError:
        raise UsageError(f"bad bound list {args.V!r}") from None
    prob, met = ReductionProblem.from_reals(args.p, b, V)
    if not met:
        print("warning: prod V_i <= p^(m-1); a solution is not guaranteed", file=sys.stderr)
    sol = solve_reduction(prob, condition_met=met)
    _emit({"v": sol.v, "residues": list(sol.residues), "condition_met": sol.condition_met},
          args.format, out)


def cmd_conic(args, out):
    _need(args, "coeffs", "box")
    c = IntConic.parse(args.coeffs)
    _emit({"coeffs": str(c), "classification": classify(c).value, "delta": c.delta,
           "det3": c.det3, "box": args.box, "count": count_points_box(c, args.box, cross_check=True)},
          args.format, out)


def cmd_qlambda(args, out):
    _need(args, "p", "f", "lam")
    make_context(args.p)
    f = PolySpec.from_coeffs(_ints(args.f), args.p)
    q = build_q_lambda(f, args.lam)
    rec = {"p": args.p, "f": format_poly(f), "lambda": args.lam % args.p,
           "coeffs": list(q.coefficients), "det3_mod_p": q.det3(),
           "classification_mod_p": classify_mod_p(q).value}
    if args.v is not None:
        _need(args, "H")
        lift = centered_lift(f, args.lam, args.v, args.H)
        rec.update({"v": args.v, "H": args.H, "lift": list(lift.conic.coefficients),
                    "z_range": lift.z_range})
    _emit(rec, args.format, out)


def cmd_pigeonhole(args, out):
    _need(args, "p", "f", "H", "T")
    ctx = make_context(args.p)
    f = PolySpec.from_coeffs(_ints(args.f), args.p)
    I = _interval(args, args.p)
    res = bounds.pigeonhole_check(f, I, subgroup_of_order(ctx, args.T))
    _emit({"p": args.p, "f": format_poly(f), "u": I.u, "H": I.H, "T": args.T, "k": res.k,
           "lambda": res.lam, "pairs": res.pairs, "threshold": str(res.threshold),
           "pass": res.passed}, args.format, out)


def cmd_sweep(args, out):
    if ":" in args.primes:
        lo, hi = _int_range(args.primes)[0], _int_range(args.primes)[-1] + 1
        prime_list = primes_in(max(lo, 3), hi)
    else:
        prime_list = _ints(args.primes)
    grid = bounds.SweepGrid(
        primes=tuple(prime_list),
        H_values=tuple(_int_range(args.H_values)),
        degree=args.degree, polys_per_prime=args.polys,
        u_values=tuple(_int_range(args.u_values)), bound=args.bound,
        min_T=args.min_T, seed=args.seed)
    rows = bounds.ratio_sweep(grid, workers=args.workers)
    summary = bounds.sweep_summary(rows, grid.bound)
    if args.format == "csv":
        bounds.write_csv(rows, out)
    else:
        for r in rows:
            out.write(json.dumps(dict(zip(bounds.CSV_HEADER, r.csv_row()))) + "\n")
    print(json.dumps(summary), file=sys.stderr)


COMMANDS = {
    "count": cmd_count, "tf": cmd_tf, "prodset": cmd_prodset, "lred": cmd_lred,
    "conic": cmd_conic, "qlambda": cmd_qlambda, "pigeonhole": cmd_pigeonhole,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polyvals",
        description="Polynomial values in multiplicative subgroups of F_p (3 <= p < 2^62).")
    sub = ap.add_subparsers(dest="cmd", required=True)
    helps = {
        "count": "size of f(I) intersected with the subgroup of order T",
        "tf": "smallest subgroup order containing H consecutive values",
        "prodset": "size of the nu-fold product set of f(I)",
        "lred": "least v with every <b_i v>_p <= V_i",
        "conic": "classify an integer conic and count its points in [0, box]^2",
        "qlambda": "build f(X) - lambda f(Y), optionally its centered lift",
        "pigeonhole": "pair count of the best lambda against (k^2 - 2k)/T",
        "sweep": "exact counts against the reference bounds over a grid",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        sp.add_argument("--format", choices=("csv", "json"),
                        default="csv" if name == "sweep" else "json")
        if name == "sweep":
            sp.add_argument("--primes", "--p", dest="primes", required=True,
                            help="prime list or half-open range lo:hi")
            sp.add_argument("--H-values", "--H", dest="H_values", default="1:65")
            sp.add_argument("--u-values", "--u", dest="u_values", default="0")
            sp.add_argument("--degree", type=int, default=2)
            sp.add_argument("--polys", type=int, default=1)
            sp.add_argument("--bound", choices=sorted(bounds.BOUNDS), default="nfig")
            sp.add_argument("--min-T", dest="min_T", type=int, default=1)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--workers", type=int, default=1)
            continue
        sp.add_argument("--p", type=int)
        sp.add_argument("--f")
        sp.add_argument("--g")
        sp.add_argument("--u", type=int, default=0)
        sp.add_argument("--H", type=int)
        sp.add_argument("--T", type=int)
        sp.add_argument("--nu", type=int)
        sp.add_argument("--b")
        sp.add_argument("--V")
        sp.add_argument("--coeffs")
        sp.add_argument("--box", type=int)
        sp.add_argument("--lambda", dest="lam", type=int)
        sp.add_argument("--v", type=int)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--work-cap", dest="work_cap", type=int, default=DEFAULT_WORK_CAP)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        COMMANDS[args.cmd](args, out)
    except (UsageError, ValueError) as e:
        print(f"polyvals {args.cmd}: usage error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"polyvals {args.cmd}: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())
