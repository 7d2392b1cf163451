"""Command-line entry point.

Parses a scenario file, runs one or both control strategies, writes CSV
trajectories, figures, and (for two-strategy runs) the equivalence
report.  Exit codes: 0 success, 1 config error, 2 I/O error, 3 failed
--check self-check.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import report
from .configio import load_config
from .cruise import MODEL_BASED, PLANT_OPTIMAL
from .errors import InfeasibleStart, InvalidParameter
from .sim import simulate
from .types import PenaltyWeights, ScenarioConfig, validate

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_CHECK = 3

_MODE_MAP = {
    "model-based": (MODEL_BASED,),
    "plant-optimal": (PLANT_OPTIMAL,),
    "both": (MODEL_BASED, PLANT_OPTIMAL),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmpcruise",
        description="Closed-loop cruise-control runs comparing model-based "
                    "penalized control against the plant-optimal strategy.",
    )
    parser.add_argument("--config", required=True, help="scenario file (key = value)")
    parser.add_argument("--mode", choices=sorted(_MODE_MAP), default="both")
    parser.add_argument("--out", default="out", help="output directory (default ./out)")
    parser.add_argument("--dt", type=float, default=None, help="override sampling time (s)")
    parser.add_argument("--horizon", type=float, default=None, help="override horizon (s)")
    parser.add_argument("--beta1", type=float, default=None, help="override position penalty weight")
    parser.add_argument("--beta2", type=float, default=None, help="override velocity penalty weight")
    parser.add_argument("--check", action="store_true",
                        help="run the acceptance self-checks after the run")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the self-checks' property sweeps")
    parser.add_argument("--no-figures", action="store_true",
                        help="skip PNG rendering, write only CSV/report")
    return parser


def _apply_overrides(config: ScenarioConfig, args: argparse.Namespace) -> ScenarioConfig:
    if args.dt is not None:
        config = dataclasses.replace(config, dt=args.dt)
    if args.horizon is not None:
        config = dataclasses.replace(config, horizon_T=args.horizon)
    if args.beta1 is not None or args.beta2 is not None:
        penalty = PenaltyWeights(
            beta1=config.penalty.beta1 if args.beta1 is None else args.beta1,
            beta2=config.penalty.beta2 if args.beta2 is None else args.beta2,
        )
        config = dataclasses.replace(config, penalty=penalty)
    return config


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read config {args.config}: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        from .configio import parse_config
        config = validate(_apply_overrides(parse_config(text), args))
    except (InvalidParameter, InfeasibleStart) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    outdir = Path(args.out)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory {outdir}: {exc}", file=sys.stderr)
        return EXIT_IO

    runs = [simulate(config, mode) for mode in _MODE_MAP[args.mode]]

    try:
        written: list[Path] = []
        for run in runs:
            path = outdir / f"{run.mode}.csv"
            report.write_trajectory_csv(run, path)
            written.append(path)
        if len(runs) == 2:
            path = outdir / "equivalence.txt"
            report.write_equivalence_report(runs[0], runs[1], config, path)
            written.append(path)
        if not args.no_figures:
            from .figures import render_figures
            written.extend(render_figures(runs, config, outdir))
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO

    for run in runs:
        switch = "none" if run.switch_time is None else f"{run.switch_time:g} s"
        print(f"{run.mode}: switch_time={switch} j_act={run.j_act:.6g} "
              f"j_mod={run.j_mod:.6g} max_violation={run.max_constraint_violation:.4g} m")
    if len(runs) == 2:
        frac = report.coincidence_fraction(
            [s.u for s in runs[0].trajectory.samples],
            [s.u for s in runs[1].trajectory.samples])
        print(f"projected-control coincidence fraction: {frac:.6g}")
    for path in written:
        print(f"wrote {path}")

    if args.check:
        from .acceptance import run_all
        if not run_all(seed=args.seed):
            return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
