"""Command-line front end.

Data goes to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 when ``verify`` finds a failing check and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import checks
from . import classify as C
from .abgroup import DEFAULT_ORDER_BOUND, EmbedsIn, FgAbGroup, OrderAtMost, TensorIsomorphic, solve_torsion_constraints
from .formats import FORMATS, render
from .msq import genus_polynomial
from .series import DEFAULT_ORDER, a_hat_series, coefficient_list, l_genus_series


class UsageError(Exception):
    pass


def _tensor_iso(text: str) -> TensorIsomorphic:
    n, sep, h = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected n:H, got {text!r}")
    try:
        return TensorIsomorphic(int(n), FgAbGroup.parse(h))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="projplane", description="Invariants of projective-plane-like manifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="coefficients of a genus series")
    p.add_argument("--which", choices=tuple(checks.SERIES_TABLE), required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = sub.add_parser("genus", help="multiplicative-sequence polynomial")
    p.add_argument("--which", choices=("L", "Ahat"), required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--zero", default="", help="comma-separated symbols to set to zero, e.g. p4,p12")

    p = sub.add_parser("classify", help="invariants of one model")
    p.add_argument("--m", type=int, choices=C.tables.DIMENSIONS, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--chern", action="store_true", help="the Chern manifold (m = 2 only)")
    p.add_argument("--format", choices=FORMATS, default="json")

    p = sub.add_parser("enumerate", help="table of models over a range of r")
    p.add_argument("--m", type=int, choices=C.tables.DIMENSIONS, required=True)
    p.add_argument("--r-min", type=int)
    p.add_argument("--r-max", type=int)
    p.add_argument("--format", choices=FORMATS, default="csv")

    p = sub.add_parser("homotopy-count", help="number of homotopy types of models")
    p.add_argument("--m", type=int, choices=C.tables.DIMENSIONS, required=True)

    p = sub.add_parser("abelian", help="finite abelian group tools")
    abelian = p.add_subparsers(dest="action", required=True)
    p = abelian.add_parser("solve", help="finite abelian groups satisfying constraints")
    p.add_argument("--embeds-in", type=int, action="append", default=[])
    p.add_argument("--tensor-iso", type=_tensor_iso, action="append", default=[])
    p.add_argument("--max-order", type=int, default=DEFAULT_ORDER_BOUND)

    sub.add_parser("verify", help="run the reproduction checks")
    return parser


def cmd_series(args) -> str:
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    return coefficient_list(checks.named_series(args.which, args.order))


def cmd_genus(args) -> str:
    if args.weight < 0:
        raise UsageError("--weight must be non-negative")
    series = l_genus_series if args.which == "L" else a_hat_series
    f = series(max(args.weight, DEFAULT_ORDER))
    poly = genus_polynomial(f, args.weight)
    zero = [z for z in args.zero.split(",") if z.strip()]
    return str(poly.substitute_zero(*zero))


def cmd_classify(args) -> str:
    if args.chern:
        if args.m != 2:
            raise UsageError("--chern requires --m 2")
        d = C.ModelDescriptor.chern()
    else:
        d = C.ModelDescriptor(args.m, args.r, args.s)
    return render(C.model_invariants(d), args.format)


def cmd_enumerate(args) -> str:
    if args.m == 2:
        r_values: range = range(0)
    else:
        if args.r_min is None or args.r_max is None:
            raise UsageError("--r-min and --r-max are required for m = 4, 8")
        if args.r_min > args.r_max:
            raise UsageError("--r-min exceeds --r-max")
        r_values = range(args.r_min, args.r_max + 1)
    table = C.enumerate_models(args.m, r_values)
    for _, reason in table.rejected:
        print(reason, file=sys.stderr)
    return render(table.rows, args.format)


def cmd_homotopy_count(args) -> str:
    return str(C.count_homotopy_types(args.m))


def cmd_abelian(args) -> str:
    constraints = [EmbedsIn(a) for a in args.embeds_in] + list(args.tensor_iso) + [OrderAtMost(args.max_order)]
    return "\n".join(str(g) for g in solve_torsion_constraints(constraints))


COMMANDS = {
    "series": cmd_series,
    "genus": cmd_genus,
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
    "homotopy-count": cmd_homotopy_count,
    "abelian": cmd_abelian,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        outcomes = checks.run_checks()
        print(checks.format_table(outcomes))
        failed = sum(not o.passed for o in outcomes)
        print(f"{len(outcomes) - failed}/{len(outcomes)} checks passed")
        return 1 if failed else 0
    try:
        out = COMMANDS[args.command](args)
    except (UsageError, ValueError, KeyError) as exc:
        parser.error(str(exc).strip("'\""))
    if out:
        print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
