"""Command-line entry: analyze --runs runs.csv --out report_dir."""

from __future__ import annotations

import argparse
import sys

from .report import analyze

EXIT_OK = 0
EXIT_CONFIG = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="analyze", description=__doc__)
    parser.add_argument("--runs", required=True, help="runs.csv from an experiment")
    parser.add_argument("--out", required=True, help="directory for tables and figures")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as stop:
        return int(stop.code or 0)
    try:
        written = analyze(args.runs, args.out)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    for path in written["summaries"] + written["figures"]:
        print(path)
    return EXIT_OK


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
