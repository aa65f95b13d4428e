"""Command-line front end.

    qcalc normalize EXPR [--generic | -n N]
    qcalc bracket A B [--generic | -n N]
    qcalc limit -n N EXPR
    qcalc rep [-n N] --op NAME [--cutoff M] [--numeric] [--k K] [--product]
    qcalc verify --suite {eq15,lemmas,expfact,confluence,leibniz,structure,fsusy,repr,product,defcr,translate,all}

Exit status: 0 success, 1 verification failure or pole at the root, 2 usage,
parse or evaluation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .evaluate import EvalError, evaluate, scalar_ratio
from .limits import limit_at_root
from .parser import Bracket, ParseError, parse
from .representation import KET_OPS, PRODUCT_OPS, matrix_json
from .scalar import PoleAtRoot
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _odd_n(text: str) -> int:
    n = int(text)
    if n < 3 or n % 2 == 0:
        raise argparse.ArgumentTypeError("n must be an odd integer >= 3")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON lines")

    mode = argparse.ArgumentParser(add_help=False)
    group = mode.add_mutually_exclusive_group()
    group.add_argument("--generic", action="store_true", help="generic q (default)")
    group.add_argument("-n", type=_odd_n, help="work at q = exp(2 pi i/n), n odd")

    p = _ArgumentParser(prog="qcalc", description="Exact algebra of q-derivatives, divided powers and their limits at odd roots of unity.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    s = sub.add_parser("normalize", parents=[common, mode], help="normal-order an expression")
    s.add_argument("expr")

    s = sub.add_parser("bracket", parents=[common, mode], help="graded bracket [A, B]")
    s.add_argument("a")
    s.add_argument("b")

    s = sub.add_parser("limit", parents=[common], help="exact limit q -> zeta_n of a scalar expression")
    s.add_argument("-n", type=_odd_n, required=True)
    s.add_argument("expr")

    s = sub.add_parser("rep", parents=[common], help="operator matrix as JSON")
    s.add_argument("-n", type=_odd_n)
    s.add_argument("--op", required=True,
                   choices=sorted(set(KET_OPS) | set(PRODUCT_OPS) | {"a", "adag"}))
    s.add_argument("--cutoff", type=int)
    s.add_argument("--numeric", action="store_true")
    s.add_argument("--k", type=int, help="order of theta_bm")
    s.add_argument("--product", action="store_true", help="act through the |r, p> product labels")

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    s.add_argument("--rmax", type=int, help="r range for eq15 / lemmas")
    return p


def _emit(args, record: dict, text: str) -> None:
    print(json.dumps(record) if args.json else text)


def _error(args, record: dict) -> None:
    if args.json:
        print(json.dumps(record))
    else:
        print(f"error: {record['message']}", file=sys.stderr)


def _cmd_normalize(args) -> int:
    value = evaluate(parse(args.expr), args.n)
    _emit(args, {"mode": "generic" if args.n is None else f"n={args.n}", "result": str(value)}, str(value))
    return EXIT_OK


def _cmd_bracket(args) -> int:
    value = evaluate(Bracket(parse(args.a), parse(args.b)), args.n)
    _emit(args, {"mode": "generic" if args.n is None else f"n={args.n}", "result": str(value)}, str(value))
    return EXIT_OK


def _cmd_limit(args) -> int:
    res = limit_at_root(scalar_ratio(parse(args.expr)), args.n)
    value = res.value
    shown = str(value.rational_value()) if value.is_rational() else str(value)
    _emit(args, {"n": args.n, "value": str(value), "rational": shown if value.is_rational() else None,
                 "cancelled_order": res.cancelled_order},
          f"{shown}, cancelled_order = {res.cancelled_order}")
    return EXIT_OK


def _cmd_rep(args) -> int:
    try:
        payload = matrix_json(args.op, n=args.n, cutoff=args.cutoff, numeric=args.numeric,
                              k=args.k, product=args.product)
    except ValueError as exc:
        _error(args, {"error": "UsageError", "message": str(exc)})
        return EXIT_USAGE
    print(json.dumps(payload))
    return EXIT_OK


def _cmd_verify(args) -> int:
    checks = run_suite(args.suite, args.rmax)
    for c in checks:
        mark = "PASS" if c.passed else "FAIL"
        _emit(args, c.as_dict(), f"{mark}  {c.suite}: {c.name}  ({c.seconds:.2f}s)  {c.detail}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


COMMANDS = {
    "normalize": _cmd_normalize,
    "bracket": _cmd_bracket,
    "limit": _cmd_limit,
    "rep": _cmd_rep,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        _error(args, exc.record())
        return EXIT_USAGE
    except EvalError as exc:
        _error(args, exc.record())
        return EXIT_USAGE
    except PoleAtRoot as exc:
        _error(args, exc.record())
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
