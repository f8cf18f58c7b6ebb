"""Command-line entry point: `immeta-plot --in results.csv --kind ... --out dir/`."""
from __future__ import annotations

import argparse
import sys

from .plots import KINDS, PlotSpec, SchemaError, render


def main(argv=None):
    parser = argparse.ArgumentParser(prog="immeta-plot")
    parser.add_argument("--in", dest="csv_path", required=True,
                        help="results CSV from the experiment harness")
    parser.add_argument("--kind", choices=sorted(KINDS), required=True)
    parser.add_argument("--out", dest="out_dir", required=True,
                        help="output directory for rendered images")
    parser.add_argument("--format", default="png", dest="fmt")
    args = parser.parse_args(argv)
    try:
        paths, _ = render(args.csv_path, PlotSpec(
            kind=args.kind, out_dir=args.out_dir, fmt=args.fmt,
        ))
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for p in paths:
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
