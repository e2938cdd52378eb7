"""``kkcalc`` command line.

Exit codes: 0 success, 1 parse or validation error, 2 hypothesis violation,
3 diagram error, 4 sequence not exact, 5 other engine error, 70 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from kkcalc.errors import (DiagramError, HypothesisViolation, IllFormedMap, InvalidElement,
                           JobFileError, KKCalcError, NotExact, ParseError)
from kkcalc.cli.commands import Runner
from kkcalc.cli.jobfile import SCHEMA_VERSION, Job, load
from kkcalc.cli.report import Entry, emit, use_color

EXIT_OK, EXIT_INVALID, EXIT_HYPOTHESIS, EXIT_DIAGRAM, EXIT_NOT_EXACT, EXIT_ENGINE = 0, 1, 2, 3, 4, 5
EXIT_INTERNAL = 70

_ERRORS = [
    ((ParseError, JobFileError, IllFormedMap, InvalidElement), "invalid", EXIT_INVALID),
    ((HypothesisViolation,), "hypothesis", EXIT_HYPOTHESIS),
    ((DiagramError,), "diagram", EXIT_DIAGRAM),
    ((NotExact,), "not_exact", EXIT_NOT_EXACT),
    ((KKCalcError,), "engine", EXIT_ENGINE),
]


def classify(exc: BaseException) -> tuple[str, int]:
    for types, kind, code in _ERRORS:
        if isinstance(exc, types):
            return kind, code
    return "internal", EXIT_INTERNAL


def _plain(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    return str(x)


def _error_json(exc: BaseException) -> dict:
    kind, code = classify(exc)
    out = {"kind": kind, "exit_code": code, "message": str(exc) or type(exc).__name__}
    if isinstance(exc, HypothesisViolation):
        out["hypothesis"] = exc.hypothesis
        out["witness"] = _plain(exc.witness)
    if isinstance(exc, DiagramError):
        out["square"] = exc.square
    return out


def run_job(job: Job, primary: bool = False, workers: int = 1) -> tuple[list[Entry], int]:
    """Run every command; output keeps the written order whatever ``workers`` is."""
    runner = Runner(job, primary)

    def one(cmd):
        try:
            return Entry(cmd, outcome=runner.run(cmd))
        except Exception as exc:  # every failure becomes a reported entry
            return Entry(cmd, error=_error_json(exc))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(one, job.commands))
    else:
        entries = [one(c) for c in job.commands]
    code = next((e.error["exit_code"] for e in entries if e.error), EXIT_OK)
    return entries, code


# ---------------------------------------------------------------- argument parsing

_GRADED_HELP = "graded group, e.g. '[Z + Z/4 ; Z/9]'"


def _add_deg(p):
    p.add_argument("--deg", type=int, choices=(0, 1), help="degree (default: both)")


class _Parser(argparse.ArgumentParser):
    # usage errors share the exit code of other invalid input
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kkcalc",
                                     description="KK-groups and K-theory of finitely generated groups.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--primary-form", action="store_true",
                        help="print groups as sums of prime-power cyclic groups")
    parser.add_argument("--job", type=Path, help="run a JSON job file")
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="evaluate job commands with N worker threads")
    sub = parser.add_subparsers(dest="op")

    for op, what in [("decompose", "torsion / torsionfree splitting"),
                     ("primary", "p-primary decomposition"),
                     ("realize", "realization record of the torsion subgroup")]:
        p = sub.add_parser(op, help=what)
        p.add_argument("group", help=_GRADED_HELP)
    p = sub.add_parser("dual", help="Pontryagin dual of a finite group")
    p.add_argument("group")

    for op, what in [("kk", "KK_j(A, B)"), ("kunneth", "K_j(A (x) B)"), ("fourway", "four-group reduction"),
                     ("thm43", "torsion source, free target checks")]:
        p = sub.add_parser(op, help=what)
        p.add_argument("--a", required=True, help=_GRADED_HELP)
        p.add_argument("--b", required=True, help=_GRADED_HELP)
        _add_deg(p)
    for op in ("split21", "split26"):
        p = sub.add_parser(op, help="splitting predicate and three-term KK sequences")
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
    for op, what in [("kdual", "K^j(A)"), ("thm44", "Pontryagin dual vs K-homology sequence")]:
        p = sub.add_parser(op, help=what)
        p.add_argument("--a", required=True, help=_GRADED_HELP)
        _add_deg(p)
    p = sub.add_parser("coeff", help="K_j(A; G)")
    p.add_argument("--a", required=True, help=_GRADED_HELP)
    p.add_argument("--g", required=True, help="ungraded coefficient group")
    _add_deg(p)

    # commands on maps take their matrices from a definitions file
    p = sub.add_parser("snake", help="snake lemma on a ladder of named maps")
    p.add_argument("--defs", type=Path, required=True, help="job file holding the named maps")
    for k in ("f", "g", "f2", "g2", "alpha", "beta", "gamma"):
        p.add_argument(f"--{k}", required=True)
    p = sub.add_parser("checkexact", help="exactness of a chain of named maps")
    p.add_argument("--defs", type=Path, required=True)
    p.add_argument("maps", nargs="+")
    for op in ("ispure", "issummand"):
        p = sub.add_parser(op, help="purity / summand test of an embedding")
        p.add_argument("--defs", type=Path, required=True)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--map")
        src.add_argument("--subgroup")
    return parser


_ARG_KEYS = ("group", "a", "b", "g", "deg", "f", "f2", "g2", "alpha", "beta", "gamma", "map",
             "subgroup", "maps")


def _command_from_args(args) -> dict:
    cmd = {"op": args.op}
    for k in _ARG_KEYS:
        v = getattr(args, k, None)
        if v is not None:
            cmd[k] = v
    return cmd


def _job_document(args) -> dict:
    if args.job is not None:
        return json.loads(args.job.read_text())
    defs = getattr(args, "defs", None)
    doc = json.loads(defs.read_text()) if defs is not None else {"schema_version": SCHEMA_VERSION}
    doc["commands"] = [_command_from_args(args)]
    return doc


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.job is None and args.op is None:
        parser.print_usage(sys.stderr)
        print("kkcalc: error: give a command or --job FILE", file=sys.stderr)
        return EXIT_INVALID
    if args.job is not None and args.op is not None:
        print("kkcalc: error: --job and a command are mutually exclusive", file=sys.stderr)
        return EXIT_INVALID
    try:
        job = load(_job_document(args))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"kkcalc: error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KKCalcError as exc:
        print(f"kkcalc: error: {exc}", file=sys.stderr)
        return classify(exc)[1]

    entries, code = run_job(job, args.primary_form, max(1, args.jobs))
    sys.stdout.write(emit(entries, args.format, use_color(sys.stdout)))
    for e in entries:
        if e.error is not None:
            print(f"kkcalc: {e.command['op']}: {e.error['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
