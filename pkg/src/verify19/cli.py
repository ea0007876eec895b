"""Command-line entry point: ``verify <selector> [options]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .data import DATA_DIR
from .errors import DataFileError
from .report import render
from .suite import SELECTORS, SuiteConfig, run_suite


EXIT_USAGE = 64
EXIT_DATA = 66


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for inconclusive reports
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="verify", description="Run the exact verification suite.")
    ap.add_argument("selector", nargs="*", choices=("all",) + SELECTORS, metavar="selector",
                    help=f"one or more of: all, {', '.join(SELECTORS)}")
    ap.add_argument("--report", choices=("json", "text"), default="text", help="output format (default text)")
    ap.add_argument("--out", type=Path, help="write the report here instead of stdout")
    ap.add_argument("--data", type=Path, default=DATA_DIR, help="data directory (fields/, tables/, hopf/)")
    ap.add_argument("--hopf-n-max", type=int, default=8, help="check Hopf families for n = 1..K")
    ap.add_argument("--search-radius", type=int, default=12, help="coordinate radius for generator search")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.hopf_n_max < 1 or args.search_radius < 1:
        print("verify: --hopf-n-max and --search-radius must be positive", file=sys.stderr)
        return EXIT_USAGE
    config = SuiteConfig(args.data, args.hopf_n_max, args.search_radius)
    try:
        report = run_suite(args.selector, config)
    except DataFileError as exc:
        print(f"verify: data file error: {exc}", file=sys.stderr)
        return EXIT_DATA
    text = render(report, args.report)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
