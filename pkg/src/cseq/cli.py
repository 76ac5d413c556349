"""Command-line interface.

Subcommands: gen, oracle, verify, crosscheck, gould, eval. Values are
always emitted as decimal strings (in JSON too) so integers beyond 2**53
survive serialization; stdout carries only data and diagnostics go to
stderr. Exit codes: 0 success/pass, 1 verification or cross-check
failure, 2 usage or expression parse error, 3 uncertified result.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .engine import (
    UncertifiedError,
    crosscheck,
    generate_records,
    gould_compare,
    verify_hypothesis,
)
from .evaluation import Determined, DomainError, EvalConfig, certified_floor, eval_interval
from .expr import Add, Var
from .formulas import (
    ComplementFormula,
    cubes_formula,
    fibonacci_formula,
    powers_of_formula,
    rth_powers_formula,
    squares_formula,
    triangular_formula,
)
from .parser import ParseError, parse
from .sequences import (
    Custom,
    FibonacciShifted,
    PowersOf,
    RthPowers,
    SequenceFamily,
    Triangular,
    load_custom_terms,
    oracle_complement,
    term,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNCERTIFIED = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class OutputRecord:
    n: int
    value: int
    certified: bool
    bits_used: int

    def render(self, fmt: str) -> str:
        if fmt == "plain":
            return str(self.value)
        if fmt == "csv":
            return f"{self.n},{self.value}"
        return json.dumps(
            {"n": self.n, "value": str(self.value), "certified": self.certified, "bits_used": self.bits_used},
            sort_keys=True,
        )


def _family_from_args(args: argparse.Namespace) -> SequenceFamily | None:
    name = args.family
    if name is None:
        return None
    if name == "squares":
        return RthPowers(2)
    if name == "cubes":
        return RthPowers(3)
    if name == "rth-power":
        if args.r is None:
            raise CliError("--family rth-power requires --r")
        return RthPowers(args.r)
    if name == "powers":
        if args.base is None:
            raise CliError("--family powers requires --base")
        return PowersOf(args.base)
    if name == "triangular":
        return Triangular()
    if name == "fibonacci":
        return FibonacciShifted()
    if name == "custom":
        if args.u_file is None:
            raise CliError("--family custom requires --u-file")
        return load_custom_terms(args.u_file)
    raise CliError(f"unknown family {name!r}")


def _formula_from_args(args: argparse.Namespace) -> ComplementFormula:
    family = _family_from_args(args)
    if args.psi is not None:
        if args.n0 is None:
            raise CliError("--psi requires --n0")
        return ComplementFormula(parse(args.psi), n0=args.n0, family=family)
    builders = {
        "squares": squares_formula,
        "cubes": cubes_formula,
        "rth-power": lambda: rth_powers_formula(args.r),
        "powers": lambda: powers_of_formula(args.base),
        "triangular": triangular_formula,
        "fibonacci": fibonacci_formula,
    }
    if args.family is None:
        raise CliError("need --family or --psi")
    if args.family == "custom":
        raise CliError("custom families have no built-in formula; give --psi and --n0")
    formula = builders[args.family]()
    if args.n0 is not None:
        formula = dataclasses.replace(formula, n0=args.n0)
    return formula


def _config_from_args(args: argparse.Namespace) -> EvalConfig:
    try:
        return EvalConfig(initial_bits=args.initial_bits, max_bits=args.max_bits)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _emit(lines, out) -> None:
    for line in lines:
        out.write(line + "\n")


def cmd_gen(args: argparse.Namespace, out) -> int:
    formula = _formula_from_args(args)
    cfg = _config_from_args(args)
    if args.count < 1:
        raise CliError(f"--count must be >= 1, got {args.count}")
    n_from = args.from_index if args.from_index is not None else formula.n0
    try:
        records = generate_records(formula, n_from, n_from + args.count - 1, cfg)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit((OutputRecord(n, v, True, bits).render(args.format) for n, v, bits in records), out)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, out) -> int:
    family = _family_from_args(args)
    if family is None:
        raise CliError("oracle requires --family")
    if args.limit < term(family, 0):
        raise CliError(f"--limit must be >= the first term {term(family, 0)}")
    values = oracle_complement(family, args.limit)
    _emit((OutputRecord(i, v, True, 0).render(args.format) for i, v in enumerate(values, start=1)), out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out) -> int:
    formula = _formula_from_args(args)
    if args.hypothesis_start is not None:
        if args.hypothesis_start < 0:
            raise CliError("--hypothesis-start must be >= 0")
        formula = dataclasses.replace(formula, hypothesis_start=args.hypothesis_start)
    cfg = _config_from_args(args)
    try:
        report = verify_hypothesis(formula, args.n_max, cfg)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    out.write(
        json.dumps(
            {
                "family": report.family,
                "n_lo": report.n_lo,
                "n_hi": report.n_hi,
                "failures": [
                    {"n": f.n, "inequality": f.inequality, "direction": f.direction}
                    for f in report.failures
                ],
                "uncertified": report.uncertified,
                "pass": report.passed,
            },
            sort_keys=True,
        )
        + "\n"
    )
    if report.failures:
        return EXIT_FAILED
    if report.uncertified:
        return EXIT_UNCERTIFIED
    return EXIT_OK


def cmd_crosscheck(args: argparse.Namespace, out) -> int:
    formula = _formula_from_args(args)
    cfg = _config_from_args(args)
    try:
        report = crosscheck(formula, args.count, cfg)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    out.write(
        json.dumps(
            {
                "family": report.family,
                "n_from": report.n_from,
                "n_to": report.n_to,
                "mismatches": [
                    {"n": m.n, "formula": str(m.formula_value), "oracle": str(m.oracle_value)}
                    for m in report.mismatches
                ],
                "pass": report.passed,
            },
            sort_keys=True,
        )
        + "\n"
    )
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_gould(args: argparse.Namespace, out) -> int:
    cfg = _config_from_args(args)
    rows = gould_compare(args.count, cfg)
    lines = []
    for r in rows:
        if args.format == "plain":
            lines.append(f"{r.n} {r.gould_value} {r.oracle_value} {'=' if r.equal else '!'}")
        elif args.format == "csv":
            lines.append(f"{r.n},{r.gould_value},{r.oracle_value},{str(r.equal).lower()}")
        else:
            lines.append(
                json.dumps(
                    {"n": r.n, "gould": str(r.gould_value), "oracle": str(r.oracle_value), "equal": r.equal},
                    sort_keys=True,
                )
            )
    _emit(lines, out)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, out) -> int:
    if args.psi is None:
        raise CliError("eval requires --psi")
    psi = parse(args.psi)
    try:
        at = Fraction(args.at)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"--at must be an exact rational: {exc}") from exc
    cfg = _config_from_args(args)
    if args.floor:
        generator = Add(Var(), psi)
        outcome = certified_floor(generator, at, cfg)
        if not isinstance(outcome, Determined):
            raise CliError(f"floor uncertified at {cfg.max_bits} bits", EXIT_UNCERTIFIED)
        if args.format == "csv":
            out.write(f"{args.at},{outcome.value}\n")
        elif args.format == "json":
            out.write(
                json.dumps(
                    {
                        "at": str(at),
                        "value": str(outcome.value),
                        "certified": True,
                        "bits_used": outcome.bits_used,
                    },
                    sort_keys=True,
                )
                + "\n"
            )
        else:
            out.write(f"{outcome.value}\n")
        return EXIT_OK
    enclosure = eval_interval(psi, at, cfg.initial_bits)
    if args.format == "json":
        out.write(
            json.dumps(
                {"at": str(at), "lo": str(enclosure.lo), "hi": str(enclosure.hi), "bits": enclosure.bits},
                sort_keys=True,
            )
            + "\n"
        )
    else:
        out.write(f"[{enclosure.lo}, {enclosure.hi}]\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--family",
        choices=["squares", "cubes", "rth-power", "powers", "triangular", "fibonacci", "custom"],
    )
    shared.add_argument("--r", type=int, help="exponent for --family rth-power (>= 2)")
    shared.add_argument("--base", type=int, help="base for --family powers (>= 2)")
    shared.add_argument("--u-file", help="term file for --family custom (one integer per line)")
    shared.add_argument("--psi", help="custom psi expression, e.g. 'sqrt(x) + 1/2'")
    shared.add_argument("--n0", type=int, help="starting index for --psi (or override a built-in's)")
    shared.add_argument("--format", choices=["plain", "csv", "json"], default="plain")
    shared.add_argument("--initial-bits", type=int, default=96)
    shared.add_argument("--max-bits", type=int, default=8192)

    top = argparse.ArgumentParser(prog="cseq", description="Complements of integer sequences via certified floor formulas.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[shared], help="generate complement values by certified floor")
    p.add_argument("--from", dest="from_index", type=int, help="first index n (default: the formula's n0)")
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("oracle", parents=[shared], help="brute-force sieve of the complement")
    p.add_argument("--limit", type=int, required=True, help="sieve upper bound (inclusive)")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("verify", parents=[shared], help="certify the bracketing inequalities per index")
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--hypothesis-start", dest="hypothesis_start", type=int)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("crosscheck", parents=[shared], help="formula vs sieve oracle, element-wise")
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(handler=cmd_crosscheck)

    p = sub.add_parser("gould", parents=[shared], help="Gould's approximate non-Fibonacci formula vs oracle")
    p.add_argument("--count", type=int, required=True, help="number of rows (indices 1..count)")
    p.set_defaults(handler=cmd_gould)

    p = sub.add_parser("eval", parents=[shared], help="evaluate a psi expression at a rational point")
    p.add_argument("--at", required=True, help="evaluation point: integer, p/q or finite decimal")
    p.add_argument("--floor", action="store_true", help="print the certified floor of x + psi(x)")
    p.set_defaults(handler=cmd_eval)
    return top


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args, sys.stdout)
    except CliError as exc:
        print(f"cseq: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"cseq: psi parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UncertifiedError as exc:
        print(f"cseq: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except DomainError as exc:
        print(f"cseq: evaluation outside the expression's domain: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, IndexError, OSError) as exc:
        print(f"cseq: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
