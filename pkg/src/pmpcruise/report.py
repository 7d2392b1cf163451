"""Delimited trajectory output and the two-run equivalence report.

The CSV schema is the stable data contract; the equivalence report is a
human-readable text file whose trailing ``key: value`` block is machine
parsable.  Every aggregate in the report can be recomputed from the CSVs
alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cruise import (
    build_law,
    costate_lambda2,
    detect_activation,
    tangency_residual,
    unconstrained_velocity,
)
from .errors import HorizonMismatch
from .hamiltonian import GradientMatchReport, check_equivalence
from .sim import SimulationResult, front_position
from .types import CostParams, PointwiseContext, ScenarioConfig, VehicleState

CSV_HEADER = "t,p,v,u_raw,u,p_front,gap,c_value,constraint_active,lambda2,running_cost"

#: Sample controls closer than this count as coincident in the report.
COINCIDENCE_TOL = 1e-9


def _fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(x, ".9g")


def write_trajectory_csv(result: SimulationResult, path: str | Path) -> None:
    """Write one run as CSV, numbers at 9 significant digits."""
    lines = [CSV_HEADER]
    for s in result.trajectory.samples:
        lines.append(",".join((
            _fmt(s.t), _fmt(s.state.p), _fmt(s.state.v), _fmt(s.u_raw), _fmt(s.u),
            _fmt(s.state.p + s.gap), _fmt(s.gap), _fmt(s.c_value),
            "1" if s.constraint_active else "0",
            _fmt(s.lambda2), _fmt(s.running_cost),
        )))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_trajectory_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Read a trajectory CSV back as a column-name -> array mapping."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln]
    header = lines[0].split(",")
    if lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header in {path}")
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    return {name: data[:, i] for i, name in enumerate(header)}


def recompute_j_act(columns: dict[str, np.ndarray], cost: CostParams) -> float:
    """Plant cost from CSV columns: trapezoid of running_cost + terminal term."""
    t = columns["t"]
    dt = float(t[1] - t[0])
    running = [float(x) for x in columns["running_cost"]]
    integral = dt * (sum(running) - 0.5 * (running[0] + running[-1]))
    err = float(columns["v"][-1]) - cost.v_ref
    return integral + cost.h * err * err


def coincidence_fraction(u_a: np.ndarray, u_b: np.ndarray,
                         tol: float = COINCIDENCE_TOL) -> float:
    """Fraction of samples where the two projected controls agree."""
    diffs = np.abs(np.asarray(u_a) - np.asarray(u_b))
    return float(np.count_nonzero(diffs <= tol)) / len(diffs)


@dataclass(frozen=True)
class SampleEquivalence:
    t: float
    du: float
    report: GradientMatchReport


def _law_context(t: float, config: ScenarioConfig, kind: str,
                 switch_time: float | None, position: float) -> PointwiseContext:
    """Pointwise context representing one law's internal problem at time t.

    Pre-switch: the closed-form arc velocity and costate with mu = 0.
    Post-switch: the riding state (front velocity, costate -2 r a_front,
    mu = 0), under which the law's ride control is the interior minimizer.
    """
    law = build_law(config, kind)
    _, v_front, a_front = front_position(config.front, t)
    on_boundary = switch_time is not None and t >= switch_time
    if on_boundary:
        v = v_front
        lam2 = -2.0 * config.cost.r * a_front
    else:
        v = unconstrained_velocity(t, law.coeffs, config.cost.v_ref)
        lam2 = costate_lambda2(t, law.coeffs, config.cost)
    return PointwiseContext(
        t=t, state=VehicleState(p=position, v=v), costate_lambda2=lam2,
        multiplier_mu=0.0, actuator=law.actuator, cost=config.cost,
        safety=config.safety, penalty_value=0.0, front_accel=a_front,
    )


def analyze_equivalence(run_mb: SimulationResult, run_opt: SimulationResult,
                        config: ScenarioConfig) -> list[SampleEquivalence]:
    """Per-sample control difference and gradient/minimizer comparison."""
    samples_mb = run_mb.trajectory.samples
    samples_opt = run_opt.trajectory.samples
    if len(samples_mb) != len(samples_opt) or any(
            a.t != b.t for a, b in zip(samples_mb, samples_opt)):
        raise HorizonMismatch("the two runs cover different sample grids")
    out = []
    for s_mb, s_opt in zip(samples_mb, samples_opt):
        model_ctx = _law_context(s_mb.t, config, "model_based",
                                 run_mb.switch_time, s_mb.state.p)
        plant_ctx = _law_context(s_opt.t, config, "plant_optimal",
                                 run_opt.switch_time, s_opt.state.p)
        rep = check_equivalence(plant_ctx, model_ctx, config.bounds)
        out.append(SampleEquivalence(t=s_mb.t, du=abs(s_mb.u - s_opt.u), report=rep))
    return out


def _contiguous_intervals(times: list[float], dt: float) -> list[tuple[float, float]]:
    intervals: list[list[float]] = []
    for t in times:
        if intervals and t - intervals[-1][1] <= 1.5 * dt:
            intervals[-1][1] = t
        else:
            intervals.append([t, t])
    return [(lo, hi) for lo, hi in intervals]


def _run_section(name: str, run: SimulationResult, config: ScenarioConfig,
                 lines: list[str], trailer: dict[str, str]) -> None:
    key = name
    lines.append(f"[{name}]")
    switch = run.switch_time
    lines.append(f"switch_time: {'none' if switch is None else _fmt(switch)}")
    lines.append(f"max_constraint_violation: {_fmt(run.max_constraint_violation)}")
    lines.append(f"j_act: {_fmt(run.j_act)}")
    lines.append(f"j_mod: {_fmt(run.j_mod)}")
    trailer[f"switch_time_{key}"] = "none" if switch is None else _fmt(switch)
    trailer[f"max_violation_{key}"] = _fmt(run.max_constraint_violation)
    trailer[f"j_act_{key}"] = _fmt(run.j_act)
    trailer[f"j_mod_{key}"] = _fmt(run.j_mod)
    interp = detect_activation(run.trajectory, config.safety)
    lines.append(f"interpolated_activation: {'none' if interp is None else _fmt(interp)}")
    if switch is not None:
        idx = next(i for i, s in enumerate(run.trajectory.samples) if s.t >= switch)
        state = run.trajectory.samples[idx].state
        c, c_dot = tangency_residual(switch, state, config.front, config.safety)
        lines.append(f"tangency_residual_at_switch: c={_fmt(c)} c_dot={_fmt(c_dot)}")
        trailer[f"tangency_c_{key}"] = _fmt(c)
        trailer[f"tangency_cdot_{key}"] = _fmt(c_dot)
    else:
        lines.append("tangency_residual_at_switch: none (constraint never active)")
        trailer[f"tangency_c_{key}"] = "none"
        trailer[f"tangency_cdot_{key}"] = "none"
    lines.append("")


def write_equivalence_report(run_mb: SimulationResult, run_opt: SimulationResult,
                             config: ScenarioConfig, path: str | Path) -> None:
    """Write the two-run comparison embodying the central equivalence claim.

    Raises:
        HorizonMismatch: if the two runs' sample grids differ.
    """
    entries = analyze_equivalence(run_mb, run_opt, config)
    n = len(entries)
    lines: list[str] = []
    trailer: dict[str, str] = {}
    lines.append("equivalence report: model-based vs plant-optimal control")
    lines.append("=" * 58)
    lines.append(f"samples: {n}  dt: {_fmt(config.dt)}  horizon_T: {_fmt(config.horizon_T)}")
    lines.append(f"penalty weights: beta1={_fmt(config.penalty.beta1)} "
                 f"beta2={_fmt(config.penalty.beta2)} "
                 "(toolkit choice; they shape j_mod only, never the control)")
    lines.append("")
    _run_section("model_based", run_mb, config, lines, trailer)
    _run_section("plant_optimal", run_opt, config, lines, trailer)

    lines.append("per-sample |u_model_based - u_plant_optimal|:")
    for e in entries:
        lines.append(f"  t={_fmt(e.t):>12s}  |du|={_fmt(e.du)}")
    lines.append("")

    frac = sum(1 for e in entries if e.du <= COINCIDENCE_TOL) / n
    mech_times = [e.t for e in entries
                  if (not e.report.gradients_match) and e.report.minimizers_coincide]
    lines.append("aggregates:")
    lines.append(f"  coincidence fraction (|du| <= {COINCIDENCE_TOL:g}): {_fmt(frac)}")
    lines.append("  times where gradients differ while projected minimizers coincide:")
    if mech_times:
        for lo, hi in _contiguous_intervals(mech_times, config.dt):
            lines.append(f"    {_fmt(lo)} .. {_fmt(hi)}")
    else:
        lines.append("    (none)")
    lines.append("")

    trailer["coincidence_fraction"] = _fmt(frac)
    trailer["grad_mismatch_coincide_count"] = str(len(mech_times))
    trailer["grad_mismatch_coincide_first"] = _fmt(mech_times[0]) if mech_times else "none"
    trailer["grad_mismatch_coincide_last"] = _fmt(mech_times[-1]) if mech_times else "none"

    lines.append("---")
    for key, value in trailer.items():
        lines.append(f"{key}: {value}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def parse_report_trailer(path: str | Path) -> dict[str, str]:
    """Read back the machine-parsable block of an equivalence report."""
    text = Path(path).read_text(encoding="utf-8")
    _, _, tail = text.rpartition("\n---\n")
    out: dict[str, str] = {}
    for line in tail.splitlines():
        if ":" in line:
            key, _, value = line.partition(":")
            out[key.strip()] = value.strip()
    return out
