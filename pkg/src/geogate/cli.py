"""Command-line front end: one experiment per invocation, config-driven."""
import argparse
import sys

from .errors import GeoGateError
from .experiments import RUNNERS, load_config, run_experiment


def build_parser():
    parser = argparse.ArgumentParser(
        prog="geogate",
        description="Synthesize geometric-gate pulses and run open-system benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in RUNNERS:
        p = sub.add_parser(kind, help=f"run the {kind} experiment")
        p.add_argument("--config", required=True, help="TOML experiment config")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers")
        p.add_argument("--steps", type=int, default=None,
                       help="override integrator steps")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        path = run_experiment(args.command, cfg, args.out, jobs=args.jobs,
                              steps_override=args.steps)
    except GeoGateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
