"""``plot`` entry point: render one figure from simulator CSVs.

Usage: ``plot <kind> --in <csv> [--in2 <csv>] --out <img> [--anchors] [--dpi N]``.
The output format follows the file extension; vector formats (svg, pdf) are
the default recommendation, ``--dpi`` matters for raster targets.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .render import FIGURE_KINDS, FigureSpec, render
from .schema import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render a figure from sweep or histogram CSVs.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("kind", choices=FIGURE_KINDS, help="figure kind")
    parser.add_argument("--in", dest="input_path", required=True, help="input CSV")
    parser.add_argument(
        "--in2",
        dest="second_input_path",
        default=None,
        help="second CSV (required for traitors_size, optional overlay elsewhere)",
    )
    parser.add_argument("--out", required=True, help="output image path (extension picks the format)")
    parser.add_argument(
        "--anchors",
        action="store_true",
        help="draw the reference success levels 0.6368 / 0.8689 / 0.9093 (noise figures)",
    )
    parser.add_argument("--dpi", type=int, default=None, help="raster resolution (e.g. 300 for png)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        kind=args.kind,
        input_path=args.input_path,
        output_path=args.out,
        second_input_path=args.second_input_path,
        anchors=args.anchors,
        dpi=args.dpi,
    )
    try:
        path = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
