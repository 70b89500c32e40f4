"""Command-line entry point: lzsm-plots --in table.csv --out figure.png --kind ...

Exit codes: 0 success, 2 usage error, 3 data error (malformed CSV or an
empty/incomplete grid).
"""

from __future__ import annotations

import argparse
import sys

from .reader import CsvFormatError, NoDataError, read_table
from .render import KINDS, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lzsm-plots",
        description="Render figures from CSV tables produced by the lzsm CLI",
    )
    parser.add_argument("--in", dest="in_path", required=True, help="input CSV")
    parser.add_argument("--out", dest="out_path", required=True, help="output image")
    parser.add_argument("--kind", choices=sorted(KINDS), required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        table = read_table(args.in_path)
        render(table, args.kind, args.out_path)
    except FileNotFoundError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoDataError as exc:
        print(f"error: no data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except CsvFormatError as exc:
        print(f"error: bad csv: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
