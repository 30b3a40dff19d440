"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 counterexample to a conjecture found.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .characters import (
    GroupFunction,
    Partition,
    builtin_a4_table,
    constant_one,
    sign_function,
    sn_character,
)
from .gmf import determinant, immanant, permanent
from .matcore import matrix_from_json
from .tracepoly import lift_function, render
from .verifier import (
    DEFAULT_TOL,
    SUITES,
    VerificationReport,
    builtin_suite,
    run_spec,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3
CONJECTURES = ("perm-dominance", "perm-dominance-lifted")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _read_matrix(path):
    try:
        with open(path) as fh:
            return matrix_from_json(json.load(fh))
    except (OSError, ValueError, TypeError, IndexError) as exc:
        raise UsageError(f"cannot read matrix from {path}: {exc}") from exc


def cmd_imm(args) -> int:
    A = _read_matrix(args.matrix)
    if args.det:
        value = determinant(A)
    elif args.per:
        value = permanent(A)
    else:
        try:
            lam = Partition.parse(args.partition)
        except ValueError as exc:
            raise UsageError(f"bad partition {args.partition!r}: {exc}") from exc
        if lam.n != A.shape[0]:
            raise UsageError(f"partition {lam} has size {lam.n} but the matrix is {A.shape[0]}x{A.shape[0]}")
        value = immanant(lam, A)
    value = complex(value)
    print(json.dumps([value.real, value.imag]))
    return EXIT_OK


def parse_function(spec: str, n: int | None) -> tuple[GroupFunction, bool]:
    """Resolve a ``--fn`` argument; returns the function and whether trace-one display is the default."""
    if spec in ("det", "per"):
        if n is None:
            raise UsageError(f"--n is required for --fn {spec}")
        return (sign_function(n) if spec == "det" else constant_one(n)), False
    if spec.startswith("a4:"):
        if n not in (None, 4):
            raise UsageError("A_4 characters need --n 4")
        table = builtin_a4_table()
        label = spec[3:]
        if label not in table.labels:
            raise UsageError(f"unknown A_4 character {label!r}; choose from {', '.join(table.labels)}")
        return table[label].zero_extend(), True
    if spec.startswith("partition:") or spec[:1].isdigit() or spec[:1] == "(":
        try:
            lam = Partition.parse(spec.split(":", 1)[-1])
        except ValueError as exc:
            raise UsageError(f"bad partition {spec!r}: {exc}") from exc
        if n is not None and n != lam.n:
            raise UsageError(f"partition {lam} is not a partition of {n}")
        return sn_character(lam), False
    if os.path.exists(spec):
        try:
            with open(spec) as fh:
                f = GroupFunction.from_json(json.load(fh))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read group function from {spec}: {exc}") from exc
        if n is not None and n != f.n:
            raise UsageError(f"function in {spec} has degree {f.n}, not {n}")
        return f, False
    raise UsageError(f"unknown function spec {spec!r}")


def cmd_lift(args) -> int:
    f, trace_one_default = parse_function(args.fn, args.n)
    P = lift_function(f)
    if args.emit == "json":
        print(_dump(P.to_json()))
    else:
        trace_one = trace_one_default if args.trace_one is None else args.trace_one
        print(render(P, args.emit, trace_one=trace_one))
    return EXIT_OK


def _text_table(reports: list[VerificationReport]) -> str:
    lines = [f"{'spec':44} {'status':24} {'min_statistic':>14} {'herm_defect':>12} {'fail':>5}"]
    for r in reports:
        lines.append(f"{r.spec:44} {r.status:24} {r.min_statistic:14.6g} {r.hermiticity_defect_max:12.3g} {r.failures:5d}")
    return "\n".join(lines)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args) -> int:
    specs = builtin_suite(args.suite, args.n)
    reports = [run_spec(s, args.trials, args.m, args.seed, args.tol, workers=args.threads) for s in specs]
    if args.format == "text":
        text = _text_table(reports)
    else:
        text = _dump({"suite": args.suite, "reports": [r.to_json() for r in reports]})
    _emit(text, args.out)
    ok = all(r.passed for r, s in zip(reports, specs) if not s.conjecture)
    return EXIT_OK if ok else EXIT_FAIL


def falsify(conjecture: str, n: int, trials: int, seed: int, tol: float, m: int = 3, workers=None) -> dict:
    """Search the permanent dominance conjecture (scalar or lifted) at degree ``n``."""
    if conjecture not in CONJECTURES:
        raise UsageError(f"unknown conjecture {conjecture!r}; choose from {', '.join(CONJECTURES)}")
    lifted = conjecture.endswith("lifted")
    specs = [s for s in builtin_suite("perm-dominance", n) if s.name.endswith("-lifted") == lifted]
    reports = [run_spec(s, trials, m, seed, tol, workers=workers) for s in specs]
    worst = min(reports, key=lambda r: r.min_statistic) if reports else None
    found = [r for r in reports if r.status == "counterexample"]
    return {
        "conjecture": conjecture,
        "n": n,
        "dim": m if lifted else n,
        "trials_per_partition": trials,
        "partitions_searched": [s.name for s in specs],
        "seed": seed,
        "tolerance": tol,
        "worst_margin": worst.min_statistic if worst else None,
        "worst_spec": worst.spec if worst else None,
        "status": "counterexample" if found else "no counterexample",
        "counterexample": ({"spec": found[0].spec, **found[0].counterexample} if found else None),
    }


def cmd_falsify(args) -> int:
    result = falsify(args.conjecture, args.n, args.trials, args.seed, args.tol, args.m, args.threads)
    _emit(_dump(result), args.out)
    return EXIT_COUNTEREXAMPLE if result["status"] == "counterexample" else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="immlift", description="Immanants and their matrix-valued trace polynomial lifts.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("imm", help="immanant, determinant or permanent of a matrix")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--partition", help="partition λ, e.g. 2,1")
    which.add_argument("--det", action="store_true")
    which.add_argument("--per", action="store_true")
    p.add_argument("--matrix", required=True, help="JSON file of [re, im] pairs (row-major)")
    p.set_defaults(func=cmd_imm)

    p = sub.add_parser("lift", help="trace polynomial of a function on S_n")
    p.add_argument("--fn", required=True, help="det, per, a partition like 2,1, a4:chi1..chi3, or a JSON file")
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--emit", choices=("text", "json", "latex"), default="text")
    p.add_argument("--trace-one", action=argparse.BooleanOptionalAction, default=None,
                   help="display tr(X_i) as 1 (default on for A_4 characters)")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="run a built-in verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--m", type=_positive_int, default=3, help="matrix size for lifted checks")
    p.add_argument("--n", type=_positive_int, help="restrict to one degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.add_argument("--threads", type=_positive_int, help="worker threads (default: $IMMLIFT_THREADS)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("falsify", help="random search for counterexamples to a conjecture")
    p.add_argument("--conjecture", required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--trials", type=_positive_int, default=10000)
    p.add_argument("--m", type=_positive_int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    p.add_argument("--out")
    p.add_argument("--threads", type=_positive_int)
    p.set_defaults(func=cmd_falsify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"immlift {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"immlift {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
