"""Command-line front end.

Exit codes: 0 success / YES, 1 NO, 2 input error, 3 budget exceeded / UNKNOWN.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Callable, Optional, Sequence

from .dyadic import DyadicRational
from .formula import FormulaError, asat, count_satisfied, parse_dimacs, serialize_dimacs
from .generator import (
    InfeasibleError,
    gen_random_cnf,
    gen_random_kcnf,
    gen_random_lin2,
    gen_theorem1,
    pad_contradicting_units,
)
from .lin2 import DEFAULT_BUDGET, BudgetExceeded, Lin2Error, reduce_fixpoint, serialize_lin2
from .reduction import cnf_to_lin2
from .solver import Answer, classify_regime, decide_above_average, derandomized_assignment, oracle_max_sat

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

DEFAULT_SEED = 20120101


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _load_cnf(args: argparse.Namespace):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        f = parse_dimacs(_read(args.input), lenient=args.lenient)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return f


def _dyadic(d: DyadicRational) -> dict:
    return {
        "fraction": str(d),
        "numerator": d.numerator,
        "denominator": d.denominator,
        "decimal": float(d),
    }


def _emit(args: argparse.Namespace, doc: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)


# -- subcommands -------------------------------------------------------------

def cmd_stats(args: argparse.Namespace) -> int:
    f = _load_cnf(args)
    a = asat(f)
    regime = classify_regime(f)
    doc = {
        "n": f.num_vars,
        "m": f.num_clauses,
        "r_max": f.max_width,
        "asat": _dyadic(a),
        "regime": regime.to_dict(),
    }
    lines = [
        f"n = {f.num_vars}",
        f"m = {f.num_clauses}",
        f"r_max = {f.max_width}",
        f"asat = {a} ({a.numerator}/{a.denominator})",
        f"asat_decimal = {float(a)!r}",
        f"ceil_log_n = {regime.ceil_log_n}",
        f"loglog_n = {regime.loglog_n}",
        f"xp_bound = {regime.xp_bound}",
        f"regime = {regime.regime}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    f = _load_cnf(args)
    a = derandomized_assignment(f)
    sat = count_satisfied(f, a)
    avg = asat(f)
    exc = sat - avg
    doc = {
        "assignment": list(a.values),
        "satisfied": sat,
        "asat": _dyadic(avg),
        "excess": _dyadic(exc),
    }
    lines = [
        a.dimacs_line(),
        f"satisfied = {sat}",
        f"asat = {avg} ({avg.numerator}/{avg.denominator})",
        f"excess = {exc} ({exc.numerator}/{exc.denominator})",
    ]
    _emit(args, doc, lines)
    return EXIT_OK


def _decision_code(answer: Answer) -> int:
    return {Answer.YES: EXIT_OK, Answer.NO: EXIT_NO, Answer.UNKNOWN: EXIT_BUDGET}[answer]


def cmd_decide(args: argparse.Namespace) -> int:
    f = _load_cnf(args)
    out = decide_above_average(f, args.k, args.budget)
    doc = out.to_dict()
    doc["asat"] = _dyadic(asat(f))
    lines = [
        f"answer = {out.answer.value}",
        f"mechanism = {out.mechanism.value}",
        f"k = {out.k}",
        f"k2 = {out.k2}",
        f"r_used = {out.r_used}",
        f"kernel_vars = {out.kernel_vars}",
        f"twice_excess_max = {out.twice_excess_max}",
        f"asat = {doc['asat']['fraction']}",
    ]
    if out.witness is not None:
        lines.append(f"witness_kernel_only = {str(out.witness_kernel_only).lower()}")
        lines.append(out.witness.dimacs_line())
    _emit(args, doc, lines)
    return _decision_code(out.answer)


def cmd_reduce(args: argparse.Namespace) -> int:
    f = _load_cnf(args)
    system, k2, r_used = cnf_to_lin2(f, args.k)
    comments = [f"r_used = {r_used}", f"k2 = k * 2^(r_used-1) = {args.k} * 2^{r_used - 1} = {k2}"]
    doc: dict = {"r_used": r_used, "k": args.k, "k2": k2, "system": serialize_lin2(system)}
    if args.kernel:
        kernel, trace = reduce_fixpoint(system)
        summary = trace.summary()
        comments.append(f"kernel live variables = {len(kernel.live_variables)}")
        comments += [f"trace {key} = {val}" for key, val in summary.items()]
        doc["kernel"] = serialize_lin2(kernel)
        doc["kernel_vars"] = len(kernel.live_variables)
        doc["trace"] = summary
        text = serialize_lin2(kernel, comments)
    else:
        text = serialize_lin2(system, comments)
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    doc: dict = {"kind": args.kind}
    meta = None
    if args.kind == "theorem1":
        f = _load_cnf(args)
        out, meta_obj = gen_theorem1(f, args.c)
        meta = meta_obj.to_dict()
        text = serialize_dimacs(out, [f"meta {json.dumps(meta, sort_keys=True)}"])
    elif args.kind == "pad-units":
        f = _load_cnf(args)
        text = serialize_dimacs(pad_contradicting_units(f, args.extra))
    elif args.kind == "random-cnf":
        if args.exact_width:
            f = gen_random_kcnf(args.n, args.m, args.width, args.seed)
        else:
            f = gen_random_cnf(args.n, args.m, args.width, args.seed)
        text = serialize_dimacs(f)
    else:
        s = gen_random_lin2(args.n, args.m, args.width, args.weight_max, args.seed)
        text = serialize_lin2(s)
    if meta is not None:
        doc["meta"] = meta
        if args.meta:
            with open(args.meta, "w", encoding="utf-8") as fh:
                json.dump(meta, fh, indent=2, sort_keys=True)
                fh.write("\n")
    doc["text"] = text
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    f = _load_cnf(args)
    best, witness = oracle_max_sat(f, args.budget)
    avg = asat(f)
    doc: dict = {"max_satisfied": best, "witness": list(witness.values), "asat": _dyadic(avg)}
    lines = [f"max_satisfied = {best}", f"asat = {avg}", witness.dimacs_line()]
    code = EXIT_OK
    if args.k is not None:
        yes = best >= avg + args.k
        doc["k"] = args.k
        doc["answer"] = "YES" if yes else "NO"
        lines.insert(0, f"answer = {doc['answer']}")
        code = EXIT_OK if yes else EXIT_NO
    _emit(args, doc, lines)
    return code


# -- parser ------------------------------------------------------------------

def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxsat-aa", description="MaxSat above average: asat, reduction, kernel and decision."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--lenient", action="store_true", help="drop duplicate literals with a warning")

    def add(name: str, func: Callable, help: str, with_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        if with_input:
            p.add_argument("input", help="DIMACS CNF file, or - for standard input")
        p.set_defaults(func=func)
        return p

    add("stats", cmd_stats, "sizes, exact asat and regime")
    add("solve", cmd_solve, "assignment meeting asat by conditional expectations")

    p = add("decide", cmd_decide, "decide whether asat + k clauses can be satisfied")
    p.add_argument("-k", type=_nonneg, required=True)
    p.add_argument("--budget", type=_nonneg, default=DEFAULT_BUDGET)

    p = add("reduce", cmd_reduce, "emit the equivalent Lin2 system")
    p.add_argument("-k", type=_nonneg, default=1)
    p.add_argument("--kernel", action="store_true", help="apply both rules to a fixpoint")

    p = add("oracle", cmd_oracle, "exhaustive maximum (ground truth)")
    p.add_argument("-k", type=_nonneg, default=None)
    p.add_argument("--budget", type=_nonneg, default=DEFAULT_BUDGET)

    p = sub.add_parser("gen", parents=[common], help="generate instances")
    p.add_argument("kind", choices=["theorem1", "pad-units", "random-cnf", "random-lin2"])
    p.add_argument("input", nargs="?", default="-", help="input CNF for theorem1 / pad-units")
    p.add_argument("--c", type=int, default=2, help="density constant for theorem1")
    p.add_argument("--extra", type=_nonneg, default=1, help="fresh variables for pad-units")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--m", type=int, default=20)
    p.add_argument("--width", type=int, default=3, help="max clause width / equation arity")
    p.add_argument("--exact-width", action="store_true", help="distinct clauses of exactly --width")
    p.add_argument("--weight-max", type=int, default=5)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--meta", help="write theorem1 meta JSON to this path")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (FormulaError, Lin2Error, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
