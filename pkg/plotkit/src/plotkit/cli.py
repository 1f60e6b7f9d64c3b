"""Command line: plotkit <figure-kind> <inputs...> -o <path>."""

import argparse
import sys

from .figures import (
    plot_linf_and_overlay,
    plot_linf_trace,
    plot_mass_energy,
    plot_profile_family,
    plot_waterfall,
)
from .schema import FIGURE_KINDS, SchemaMismatchError

_INPUT_COUNTS = {
    # kind: (min inputs, max inputs or None)
    "mass-energy-triptych": (1, 1),
    "waterfall": (1, 1),
    "final-state-overlay": (3, 3),
    "linf-trace": (1, 1),
    "profile-family": (1, None),
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Render figures from solver CSV/JSON outputs.")
    parser.add_argument("kind", choices=sorted(FIGURE_KINDS),
                        help="figure kind")
    parser.add_argument("inputs", nargs="+",
                        help="input files (CSV or manifest JSON)")
    parser.add_argument("-o", "--output", required=True,
                        help="output image path (.svg default suffix)")
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    low, high = _INPUT_COUNTS[args.kind]
    count = len(args.inputs)
    if count < low or (high is not None and count > high):
        expect = str(low) if high == low else f"{low}+"
        print(f"error: {args.kind} takes {expect} input file(s), "
              f"got {count}", file=sys.stderr)
        return 2

    try:
        if args.kind == "mass-energy-triptych":
            report = plot_mass_energy(args.inputs[0], args.output)
        elif args.kind == "waterfall":
            report = plot_waterfall(args.inputs[0], args.output)
        elif args.kind == "final-state-overlay":
            report = plot_linf_and_overlay(args.inputs[0], args.inputs[1],
                                           args.inputs[2], args.output)
        elif args.kind == "linf-trace":
            report = plot_linf_trace(args.inputs[0], args.output)
        else:
            report = plot_profile_family(args.inputs, args.output)
    except SchemaMismatchError as exc:
        print(f"error: schema mismatch: {exc}", file=sys.stderr)
        return 2

    extras = ""
    if "sup_difference" in report:
        extras = f", sup difference {report['sup_difference']:.3g}"
        if report.get("resampled"):
            extras += " (resampled)"
    print(f"wrote {report['output']} "
          f"(inputs sha256 {report['checksum'][:12]}...){extras}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
