"""Command line front end.

Exit status: 0 when every verification passes, 1 on a verification failure,
2 on unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .fuzz import run_fuzz
from .model import ValidationError
from .serialize import ProblemError, dumps, load_problem
from .tasks import run_problem

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _format_text(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if set(obj) == {"text", "exact"}:
            return [pad + obj["text"]]
        for key, value in obj.items():
            if isinstance(value, dict) and set(value) == {"text", "exact"}:
                lines.append(f"{pad}{key}: {value['text']}")
            elif isinstance(value, list) and value and not any(isinstance(v, (dict, list)) for v in value):
                lines.append(f"{pad}{key}: [{', '.join(_scalar(v) for v in value)}]")
            elif isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_format_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                sub = _format_text(item, indent + 1)
                lines.append(pad + "- " + sub[0].lstrip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(value) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    if value is None:
        return "-"
    if isinstance(value, list) and not value:
        return "[]"
    if isinstance(value, dict) and not value:
        return "{}"
    return str(value)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(dumps(report) + "\n")
    else:
        sys.stdout.write("\n".join(_format_text(report)) + "\n")


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}", "$") from exc
    return load_problem(text)


def _input_error(exc: Exception) -> int:
    sys.stderr.write(f"input error: {exc}\n")
    return EXIT_INPUT


def cmd_run(args) -> int:
    try:
        problem = _load(args.file)
        report, passed = run_problem(problem, truncation=args.truncation)
    except ValidationError as exc:
        return _input_error(exc)
    _emit(report, args.format)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_verify(args) -> int:
    try:
        problem = _load(args.file)
        report, passed = run_problem(problem, tasks=["verify-all"])
    except ValidationError as exc:
        return _input_error(exc)
    _emit(report, args.format)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_fuzz(args) -> int:
    try:
        report = run_fuzz(args.dim, args.max_exp, args.max_deg, args.count, args.seed, args.jobs, args.timing)
    except ValueError as exc:
        return _input_error(exc)
    _emit(report, args.format)
    return EXIT_OK if report["pass"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmcurrents", description="Exact Laurent expansions of regularized integrals.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the tasks listed in a problem file")
    run.add_argument("file")
    run.add_argument("--format", choices=["json", "text"], default="json")
    run.add_argument("--truncation", type=int, help="oracle truncation for laurent and pole-audit (default kappa)")
    run.set_defaults(func=cmd_run)

    verify = sub.add_parser("verify", help="run every applicable check on a problem file")
    verify.add_argument("file")
    verify.add_argument("--format", choices=["json", "text"], default="json")
    verify.set_defaults(func=cmd_verify)

    fuzz = sub.add_parser("fuzz", help="cross-check random instances")
    fuzz.add_argument("--dim", type=int, required=True)
    fuzz.add_argument("--max-exp", type=int, required=True)
    fuzz.add_argument("--max-deg", type=int, required=True)
    fuzz.add_argument("--count", type=int, required=True)
    fuzz.add_argument("--seed", type=int, default=0)
    fuzz.add_argument("--jobs", type=int, default=1)
    fuzz.add_argument("--timing", action="store_true", help="include wall time (makes reports non-reproducible)")
    fuzz.add_argument("--format", choices=["json", "text"], default="json")
    fuzz.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
