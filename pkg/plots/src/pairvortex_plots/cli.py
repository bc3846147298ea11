"""Console entry points: render_field and render_distribution."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .render import SchemaError, render_distribution, render_field


def main_field(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_field", description="Render a field/potential time-series CSV."
    )
    parser.add_argument("csv", help="CSV from `pairvortex field`")
    parser.add_argument("-o", "--output", required=True, help="output image path")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        render_field(args.csv, args.output, dpi=args.dpi)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


def main_distribution(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_distribution",
        description="Render magnitude and phase panels from a sweep CSV.",
    )
    parser.add_argument("csv", help="CSV from `pairvortex sweep`")
    parser.add_argument("--vortices", help="optional CSV from `pairvortex vortices`")
    parser.add_argument("-o", "--output", required=True, help="output image path")
    parser.add_argument("--exponent", type=float, default=0.5,
                        help="display exponent for |c2| (default 0.5)")
    parser.add_argument("--vmin", type=float, default=None)
    parser.add_argument("--vmax", type=float, default=None)
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        render_distribution(
            args.csv,
            args.output,
            vortices_csv=args.vortices,
            magnitude_exponent=args.exponent,
            vmin=args.vmin,
            vmax=args.vmax,
            dpi=args.dpi,
        )
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main_distribution())
