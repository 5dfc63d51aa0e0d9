"""Command-line entry point.

Two forms:

    plot --spec figure.json
    plot {ber,throughput,secrecy} --axis rho CSV [CSV ...] --out fig.png
"""

from __future__ import annotations

import argparse
import sys

from .figspec import PANEL_KINDS, FigureSpec, SchemaError, load_figure_spec
from .render import render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render figures from link-simulation sweep CSV files.",
    )
    parser.add_argument("--spec", help="JSON figure description (exclusive with a panel kind)")
    sub = parser.add_subparsers(dest="kind")
    for kind in PANEL_KINDS:
        p = sub.add_parser(kind, help=f"render a {kind} panel")
        p.add_argument("csvs", nargs="+", metavar="CSV", help="input sweep CSV files")
        p.add_argument("--axis", required=True, choices=("rho", "beta"))
        p.add_argument("--out", required=True, help="output image path")
        p.add_argument("--labels", help="comma-separated curve labels (default: file stems)")
        p.add_argument("--linear", action="store_true",
                       help="use a linear vertical axis (BER panels default to log)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.spec is not None:
            if args.kind is not None:
                parser.error("--spec and a panel kind are mutually exclusive")
            spec = load_figure_spec(args.spec)
        elif args.kind is not None:
            labels = tuple(args.labels.split(",")) if args.labels else ()
            spec = FigureSpec(
                kind=args.kind,
                axis=args.axis,
                csv_paths=tuple(args.csvs),
                out_path=args.out,
                labels=labels,
                log_scale=not args.linear,
            )
        else:
            parser.error("either --spec or a panel kind (ber/throughput/secrecy) is required")
        render(spec)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def entry():
    sys.exit(main())
