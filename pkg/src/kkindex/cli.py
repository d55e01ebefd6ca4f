"""Command line entry point.

``kkindex run <experiment|all> --config <path> --out <dir>`` executes
registered experiments and writes deterministic CSV + text reports;
``kkindex list`` prints the registry.  The ``KKINDEX_OUT`` environment
variable overrides the output directory.  Exit status is 0 iff every
reported margin is within tolerance, 1 on a failed check, 2 on usage or
component errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .experiments import EXPERIMENTS, Config, ConfigError, parse_config, run_experiment


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="kkindex",
                                     description="operator-lab experiment runner")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run one experiment or 'all'")
    runp.add_argument("experiment")
    runp.add_argument("--config", default=None, help="key = value config file")
    runp.add_argument("--out", default=None, help="output directory")
    sub.add_parser("list", help="list registered experiments")

    args = parser.parse_args(argv)
    if args.command == "list":
        for name in sorted(EXPERIMENTS):
            print(name)
        return 0

    try:
        cfg = parse_config(args.config) if args.config else Config()
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    out_dir = args.out or os.environ.get("KKINDEX_OUT") or cfg.output_dir
    if args.experiment == "all":
        names = [n for n in cfg.experiments if n != "all"] or sorted(EXPERIMENTS)
    else:
        names = [args.experiment]

    all_ok = True
    for name in names:
        try:
            report = run_experiment(name, cfg, out_dir)
        except KeyError:
            print(f"unregistered experiment {name!r}; 'kkindex list' shows the registry",
                  file=sys.stderr)
            return 2
        except RuntimeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        status = "ok" if report.ok else "FAIL"
        worst = max((margin for *_, margin in report.rows), default=0.0)
        print(f"{name:18s} {status:4s} checks={len(report.rows):3d} "
              f"worst margin={worst:.3e}")
        all_ok = all_ok and report.ok
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
