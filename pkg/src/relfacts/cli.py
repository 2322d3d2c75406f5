"""Command-line entry point.

Exit codes: 0 success, 1 unreadable or invalid input, 2 numeric tolerance
violation, 3 no deterministic constraint found, 4 the two decision
procedures disagree.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .hilbert import NumericToleranceError
from .report import build_report, render_constraints, render_nogo, render_run, to_json
from .scenario import ScenarioError, parse_scenario

EXIT_OK, EXIT_PARSE, EXIT_NUMERIC, EXIT_NO_CONSTRAINTS, EXIT_DISAGREE = range(5)


class _Parser(argparse.ArgumentParser):
    # argparse's own exit status 2 would collide with the numeric-failure code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError("epsilon must lie in (0, 1)")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--epsilon", type=_positive_float, default=argparse.SUPPRESS,
                        help="overrides the scenario file's tolerance")

    parser = _Parser(prog="relfacts", parents=[common],
                     description="Simulate the GHZ relative-facts scenario and prove its no-go result.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (("run", "run the scenario and print the full report"),
                        ("constraints", "list deterministic parity constraints"),
                        ("nogo", "decide satisfiability of the derived constraints")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("scenario", help="path to a JSON scenario file")
        if name == "nogo":
            p.add_argument("--flip-sign", type=int, metavar="INDEX",
                           help="negate the sign of constraint INDEX (1-based) before deciding")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "text")
    try:
        with open(args.scenario, encoding="utf-8") as fh:
            model, plan = parse_scenario(fh.read())
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {args.scenario}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioError as exc:
        print(f"error: {args.scenario}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if hasattr(args, "epsilon"):
        plan = replace(plan, epsilon=args.epsilon)

    try:
        report = build_report(model, plan, getattr(args, "flip_sign", None), args.command)
    except NumericToleranceError as exc:
        print(f"error: numeric tolerance violated: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except IndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    if fmt == "json":
        sys.stdout.write(to_json(report))
    else:
        render = {"run": render_run, "constraints": render_constraints, "nogo": render_nogo}
        sys.stdout.write(render[args.command](report))

    if not report["nogo_result"]["procedures_agree"]:
        print("error: enumeration and GF(2) elimination disagree", file=sys.stderr)
        return EXIT_DISAGREE
    if args.command == "constraints" and not report["derived_constraints"]:
        return EXIT_NO_CONSTRAINTS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
