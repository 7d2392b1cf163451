"""Render simulation runs to PNG figures next to the CSV output.

The CSV remains the data contract; these plots are the quick-look views:
positions of ego and front vehicle, control inputs of both strategies,
and the gap against the safety boundary.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .sim import SimulationResult
from .types import ScenarioConfig

_COLORS = {"model_based": "tab:blue", "plant_optimal": "tab:green"}
_STYLES = {"model_based": "--", "plant_optimal": "-"}


def _label(mode: str) -> str:
    return mode.replace("_", "-")


def render_figures(runs: list[SimulationResult], config: ScenarioConfig,
                   outdir: str | Path) -> list[Path]:
    """Write positions.png, controls.png, and gap.png; return the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    ts = [s.t for s in runs[0].trajectory.samples]

    fig, ax = plt.subplots(figsize=(7, 4))
    front = [s.state.p + s.gap for s in runs[0].trajectory.samples]
    ax.plot(ts, front, color="tab:red", label="front vehicle")
    boundary = [p - config.safety.delta / config.safety.xi for p in front]
    ax.plot(ts, boundary, color="tab:red", alpha=0.4, linestyle=":",
            label="safety boundary")
    for run in runs:
        ax.plot([s.t for s in run.trajectory.samples],
                [s.state.p for s in run.trajectory.samples],
                _STYLES[run.mode], color=_COLORS[run.mode],
                label=f"ego ({_label(run.mode)})")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("position (m)")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = outdir / "positions.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 4))
    for run in runs:
        ax.step([s.t for s in run.trajectory.samples],
                [s.u for s in run.trajectory.samples],
                _STYLES[run.mode], color=_COLORS[run.mode], where="post",
                linewidth=2, label=f"u ({_label(run.mode)})")
    for bound in (config.bounds.u_min, config.bounds.u_max):
        ax.axhline(bound, color="gray", linestyle=":", linewidth=1)
    ax.set_xlabel("time (s)")
    ax.set_ylabel("control input")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = outdir / "controls.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 4))
    for run in runs:
        ax.plot([s.t for s in run.trajectory.samples],
                [s.gap for s in run.trajectory.samples],
                _STYLES[run.mode], color=_COLORS[run.mode],
                label=f"gap ({_label(run.mode)})")
        if run.switch_time is not None:
            ax.axvline(run.switch_time, color=_COLORS[run.mode],
                       alpha=0.4, linestyle=":")
    ax.axhline(config.safety.delta / config.safety.xi, color="tab:red",
               linestyle=":", label="delta/xi")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("gap to front vehicle (m)")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = outdir / "gap.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    return written
