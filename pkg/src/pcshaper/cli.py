"""Command-line driver for the experiment suite.

Verbs: mc-convergence, pce-convergence, timing, compare-shapers, heatmap.
Each reads a declarative JSON config (see configs/), applies command-line
overrides, writes its artifacts plus a manifest, and exits 0 on success or
nonzero with an error JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiments import (
    ConfigError,
    apply_reduced,
    load_config,
    run_compare_shapers,
    run_heatmap,
    run_mc_convergence,
    run_pce_convergence,
    run_timing,
)

COMMANDS = {
    "mc-convergence": run_mc_convergence,
    "pce-convergence": run_pce_convergence,
    "timing": run_timing,
    "compare-shapers": run_compare_shapers,
    "heatmap": run_heatmap,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcshaper",
        description="Uncertainty propagation and input-shaper design experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        cmd = sub.add_parser(name, help=fn.__doc__.splitlines()[0])
        cmd.add_argument("--config", type=Path, required=True, help="JSON config file")
        cmd.add_argument("--out", type=Path, help="output directory override")
        cmd.add_argument("--seed", type=int, help="RNG seed override")
        cmd.add_argument(
            "--reduced", action="store_true",
            help="CI-speed scaling: t1=10, t2=20, degree capped at 12",
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.out is not None:
            cfg.out = args.out
        if args.seed is not None:
            cfg.seed = args.seed
        if args.reduced:
            cfg = apply_reduced(cfg)
        COMMANDS[args.command](cfg)
    except (ConfigError, ValueError, OSError) as exc:
        json.dump(
            {"error": type(exc).__name__, "message": str(exc), "command": args.command},
            sys.stderr,
        )
        sys.stderr.write("\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
