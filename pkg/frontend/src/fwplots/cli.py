"""`fwplot <run-dir> [--y gap|fwgap] [--out file] [--linear-y]`"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import PlotError, PlotSpec, render

_AXES = {"gap": "gap_to_fstar", "fwgap": "fw_gap"}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="fwplot", description=__doc__)
    parser.add_argument("run_dir", help="directory with manifest.json and method CSVs")
    parser.add_argument("--y", choices=sorted(_AXES), default="gap", help="y axis quantity")
    parser.add_argument("--out", default="convergence.png", help="output image path")
    parser.add_argument("--linear-y", action="store_true", help="disable the log y axis")
    args = parser.parse_args(argv)
    spec = PlotSpec(
        run_dir=Path(args.run_dir),
        y_axis=_AXES[args.y],
        log_y=not args.linear_y,
        out_path=Path(args.out),
    )
    try:
        out = render(spec)
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
