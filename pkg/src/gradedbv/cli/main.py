"""Command-line entry point.

Exit codes: 0 success, 1 parse or usage error, 2 type or degree error,
3 identity violation reported by ``suite``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

from .._core import Chart, ChartMismatchError
from ..brackets import gsn_leibniz, ks_bracket
from ..bv import Divergence, GeneratingOperator, delta_extend, divergence_apply
from ..calculus import (
    DegreeError,
    GradedForm,
    Multivector,
    Operator,
    ReconstructionError,
    as_multivector,
    d,
    d_operator,
    iota_exact,
    iota_form,
    iota_operator,
    lie,
    lie_operator,
    mul_operator,
)
from ..grassmann import Superfunction
from ..koszul import partial_operator, phi
from .parser import ExprTypeError, ParseError, parse
from .printer import format_bidegree, format_value, to_json_dict
from .suites import SUITES, SuiteConfig, SuiteError, run_suite

EXIT_OK, EXIT_USAGE, EXIT_TYPE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _chart(text: str) -> Chart:
    try:
        return Chart.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--chart", type=_chart, required=True, help="chart dimensions m,n")
    common.add_argument("--json", action="store_true", help="emit JSON")

    parser = _Parser(prog="gradedbv", description="Graded multivector calculus on R^(m|n).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="GSN or KS bracket of two multivectors")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--gsn", action="store_true")
    which.add_argument("--ks", action="store_true")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("wedge", parents=[common], help="graded product")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("d", parents=[common], help="exterior differential")
    p.add_argument("expr")

    p = sub.add_parser("insert", parents=[common],
                       help="insertion of a multivector into a form, or of d(a) into a multivector with --exact")
    p.add_argument("--exact", action="store_true", help="first operand is a superfunction a; insert d(a)")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("lie", parents=[common], help="Lie derivative of a form along a multivector")
    p.add_argument("multivector")
    p.add_argument("form")

    p = sub.add_parser("div", parents=[common], help="divergence of a vector field")
    p.add_argument("--twist", default=None, help="even superfunction w")
    p.add_argument("expr")

    p = sub.add_parser("delta", parents=[common], help="generating operator of the GSN bracket")
    p.add_argument("--twist", default=None, help="even superfunction w")
    p.add_argument("expr")

    p = sub.add_parser("phi", parents=[common], help="Koszul form of an operator")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--op", required=True,
                   help="composition of factors joined by '.', e.g. 'dx1.dx1', 'delta', 'mu[x1]'")
    p.add_argument("args", nargs="*")

    p = sub.add_parser("suite", help="run a named property suite")
    p.add_argument("name", help=", ".join(SUITES))
    p.add_argument("--chart", type=_chart, default=Chart(2, 2))
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--max-degree", type=int, default=2, help="coefficient degree bound")
    p.add_argument("--max-cohom", type=int, default=None, help="cohomological degree bound")
    p.add_argument("--probe-degree", type=int, default=3)
    return parser


_FACTOR = re.compile(r"^(delta|d|dx(\d+)|dth(\d+)|(mu|iota|lie|ins)\[(.*)\])$")


def parse_operator(text: str, chart: Chart) -> Operator:
    """Operator from factors joined by '.', applied right to left."""
    op = None
    for factor in reversed([f.strip() for f in _split_factors(text)]):
        m = _FACTOR.match(factor)
        if not m:
            raise ParseError(f"unknown operator factor {factor!r}", text.find(factor))
        if factor == "delta":
            current = GeneratingOperator().operator()
        elif factor == "d":
            current = d_operator()
        elif m.group(2):
            chart.check_index("x", int(m.group(2)))
            current = partial_operator("x", int(m.group(2)))
        elif m.group(3):
            chart.check_index("th", int(m.group(3)))
            current = partial_operator("th", int(m.group(3)))
        else:
            head, body = m.group(4), parse(m.group(5), chart)
            if head == "mu":
                current = mul_operator("function", body)
            elif head == "iota":
                current = iota_operator(body)
            elif head == "lie":
                current = lie_operator(body)
            else:
                a = body
                deg = (-1, a.ghost_degree())
                current = Operator("multivector", deg, lambda C, a=a: iota_exact(a, C), f"ins[{a}]")
        op = current if op is None else op.then(current)
    if op is None:
        raise ParseError("empty operator", 0)
    return op


def _split_factors(text: str) -> List[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "." and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _emit(value, as_json: bool) -> None:
    if as_json:
        print(json.dumps(to_json_dict(value), sort_keys=True))
    else:
        print(format_value(value))
        print(f"bidegree {format_bidegree(value)}")


def _twist(args, chart) -> Divergence:
    if args.twist is None:
        return Divergence()
    return Divergence(parse(args.twist, chart))


def _evaluate(args) -> object:
    chart = args.chart
    P = lambda text: parse(text, chart)
    if args.command == "bracket":
        A, B = as_multivector(P(args.left)), as_multivector(P(args.right))
        return ks_bracket(A, B) if args.ks else gsn_leibniz(A, B)
    if args.command == "wedge":
        return P(args.left) * P(args.right)
    if args.command == "d":
        value = P(args.expr)
        if isinstance(value, Multivector):
            raise ExprTypeError("d applies to functions and forms, not multivectors")
        return d(value)
    if args.command == "insert":
        left, right = P(args.left), P(args.right)
        if args.exact:
            if not isinstance(left, Superfunction):
                raise ExprTypeError(f"{args.left!r} is not a superfunction")
            return iota_exact(left, right)
        if isinstance(left, GradedForm) or isinstance(right, Multivector):
            raise ExprTypeError("insert takes a multivector and then a form")
        return iota_form(left, right)
    if args.command == "lie":
        A, lam = P(args.multivector), P(args.form)
        if isinstance(A, GradedForm) or isinstance(lam, Multivector):
            raise ExprTypeError("lie takes a multivector and then a form")
        return lie(A, lam)
    if args.command == "div":
        return divergence_apply(_twist(args, chart), P(args.expr))
    if args.command == "delta":
        return delta_extend(GeneratingOperator(_twist(args, chart)), P(args.expr))
    if args.command == "phi":
        if args.arity < 1 or len(args.args) != args.arity:
            raise UsageError(f"--arity {args.arity} needs exactly that many arguments")
        return phi(parse_operator(args.op, chart), *(P(a) for a in args.args))
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "suite":
            config = SuiteConfig(chart=args.chart, max_cohom=args.max_cohom,
                                 max_coeff_degree=args.max_degree, samples=args.samples,
                                 probe_degree=args.probe_degree)
            report = run_suite(args.name, args.seed, config)
            sys.stdout.write(report.to_json() + "\n" if args.json else report.text())
            return EXIT_OK if report.passed else EXIT_VIOLATION
        _emit(_evaluate(args), args.json)
        return EXIT_OK
    except (UsageError, SuiteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, IndexError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ExprTypeError, DegreeError, ChartMismatchError, TypeError, ValueError) as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_TYPE
    except ReconstructionError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
