"""Command line entry point.

Exit codes: 0 when every gating check passes, 1 when any fails, 2 for
unreadable or invalid configuration and usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import PRESETS, parse_config
from .errors import ConfigError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nctoda", description="Exact residual checks for noncommutative Toda and Painleve II.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    verify = sub.add_parser("verify", help="run the configured check suites")
    verify.add_argument("--config", required=True, help="path to a key = value config file")
    verify.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    verify.add_argument("--text", action="store_true", help="print a summary table (default without --json)")

    gen = sub.add_parser("gen-config", help="print a preset config")
    gen.add_argument("--preset", choices=sorted(PRESETS), default="quick")

    sub.add_parser("version", help="print the package version")
    return parser


def _verify(args) -> int:
    from .harness import run

    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"nctoda: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        cfg = parse_config(text)
    except ConfigError as exc:
        print(f"nctoda: invalid config: {exc}", file=sys.stderr)
        return 2

    report = run(cfg)
    if args.json == "-":
        sys.stdout.write(report.to_json() + "\n")
    elif args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    if args.text or not args.json:
        out = sys.stderr if args.json == "-" else sys.stdout
        out.write(report.to_text() + "\n")
    return 0 if report.all_passed else 1


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify":
        return _verify(args)
    if args.command == "gen-config":
        sys.stdout.write(PRESETS[args.preset])
        return 0
    print(__version__)
    return 0


if __name__ == "__main__":
    sys.exit(main())
