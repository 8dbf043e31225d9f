"""Command line entry point.

    machlab <experiment> --config <path> [--out <dir>] [--threads N]

Exit codes: 0 all summary assertions passed, 1 at least one failed,
2 configuration problem, 3 runtime failure (including blowup outside the
lifespan-table experiment, where blowup is data).
"""

from __future__ import annotations

import argparse
import os
import sys
import traceback
from typing import Optional, Sequence

from .config import EXPERIMENTS, ConfigError, ExperimentConfig, parse_config, \
    validate_config, with_overrides
from .experiments import run_experiment

EXIT_PASS = 0
EXIT_ASSERTION = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="machlab",
        description="Pseudo-spectral low-Mach flow laboratory: run one experiment "
                    "and write ledgers, plot data, and a PASS/FAIL summary.",
    )
    parser.add_argument("experiment", choices=EXPERIMENTS,
                        help="which experiment driver to run")
    parser.add_argument("--config", metavar="PATH",
                        help="key=value config file (defaults apply when omitted)")
    parser.add_argument("--out", metavar="DIR",
                        help="output directory (overrides the config file)")
    parser.add_argument("--threads", type=int, metavar="N",
                        help="worker threads for sweep members "
                             "(fallback: MACHLAB_THREADS, then 1)")
    return parser


def _resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    if args.config is not None:
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
    else:
        cfg = ExperimentConfig()
    overrides: dict = {"experiment": args.experiment}
    if args.out is not None:
        overrides["out"] = args.out
    threads = args.threads
    if threads is None:
        env = os.environ.get("MACHLAB_THREADS", "").strip()
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise ConfigError(f"MACHLAB_THREADS must be an integer, got {env!r}") from None
    if threads is not None:
        overrides["threads"] = threads
    cfg = with_overrides(cfg, **overrides)
    validate_config(cfg)
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
    except ConfigError as exc:
        print(f"machlab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"machlab: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        passed, lines = run_experiment(cfg)
    except Exception:
        traceback.print_exc()
        return EXIT_RUNTIME
    for line in lines:
        print(line)
    print(f"RESULT {'PASS' if passed else 'FAIL'} (artifacts in {cfg.out})")
    return EXIT_PASS if passed else EXIT_ASSERTION


if __name__ == "__main__":
    sys.exit(main())
