"""Self-checks behind the CLI ``--check`` flag.

Each check exercises one quantitative gate of the reference scenario or a
property sweep, pinned at fixed tolerances, and reports one pass/fail
line.  The pytest suite runs the same functions.
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
import sys
import tempfile
from pathlib import Path
from typing import Callable, TextIO

import numpy as np

from . import cruise, hamiltonian, oracle, report, sim
from .scenarios import reference_scenario
from .types import (
    ActuatorParams,
    ControlBounds,
    CostParams,
    PenaltyWeights,
    PointwiseContext,
    SafetyParams,
    VehicleState,
)

# SHA-256 of the reference plant-optimal trajectory CSV; must match the
# checked-in golden fixture byte for byte.
GOLDEN_PLANT_OPTIMAL_SHA256 = (
    "c3cb74be1fcf8101a3a1cf2ed7e995b9039c696745ea89fa5b48f13983196044"
)

CheckResult = tuple[bool, str]


def random_context(rng: np.random.Generator) -> PointwiseContext:
    """Draw a pointwise context with O(1) magnitudes for property sweeps."""
    return PointwiseContext(
        t=float(rng.uniform(0.0, 10.0)),
        state=VehicleState(p=float(rng.uniform(-10, 10)), v=float(rng.uniform(-2, 2))),
        costate_lambda2=float(rng.uniform(-10, 10)),
        multiplier_mu=float(rng.uniform(0, 5)),
        actuator=ActuatorParams(tau=float(rng.uniform(0.08, 1.0)),
                                gain=float(rng.uniform(0.5, 2.5))),
        cost=CostParams(q=float(rng.uniform(0.1, 5)), r=float(rng.uniform(0.1, 2)),
                        h=float(rng.uniform(0.1, 5)), v_ref=float(rng.uniform(-1, 1))),
        safety=SafetyParams(delta=float(rng.uniform(0.5, 2)),
                            xi=float(rng.uniform(0.5, 2))),
        penalty_value=float(rng.uniform(0, 10)),
        costate_lambda1=float(rng.uniform(-5, 5)),
        front_accel=float(rng.uniform(-1, 1)),
    )


def random_bounds(rng: np.random.Generator) -> ControlBounds:
    lo = float(rng.uniform(-2.0, 1.9))
    hi = float(rng.uniform(lo + 0.05, 2.0))
    return ControlBounds(lo, hi)


def check_boundary_arc_values(seed: int) -> CheckResult:
    """Raw ride controls 0.1/1.2 and 0.1/1.4; both project exactly to u_min."""
    config = reference_scenario()
    raw_model = cruise.constrained_control_raw(8.0, config.front, config.model)
    raw_plant = cruise.constrained_control_raw(8.0, config.front, config.plant)
    ok = (abs(raw_model - 0.1 / 1.2) <= 1e-9
          and abs(raw_plant - 0.1 / 1.4) <= 1e-9
          and config.bounds.clamp(raw_model) == 0.1
          and config.bounds.clamp(raw_plant) == 0.1)
    return ok, f"raw model {raw_model:.6f}, raw plant {raw_plant:.6f}, both project to 0.1"


def check_switch_timing(seed: int) -> CheckResult:
    """Plant-optimal switch in [6.4, 6.7] s; model-based within 0.3 s of it."""
    config = reference_scenario()
    run_opt = sim.simulate(config, cruise.PLANT_OPTIMAL)
    run_mb = sim.simulate(config, cruise.MODEL_BASED)
    ts_opt, ts_mb = run_opt.switch_time, run_mb.switch_time
    ok = (ts_opt is not None and ts_mb is not None
          and 6.4 <= ts_opt <= 6.7 and abs(ts_mb - ts_opt) <= 0.3)
    return ok, f"switch plant_optimal {ts_opt} s, model_based {ts_mb} s"


def check_equivalence_mechanism(seed: int) -> CheckResult:
    """Boundary arc: gradients differ, projected minimizers coincide;
    coincidence fraction >= 0.90 over the horizon."""
    config = reference_scenario()
    run_mb = sim.simulate(config, cruise.MODEL_BASED)
    run_opt = sim.simulate(config, cruise.PLANT_OPTIMAL)
    entries = report.analyze_equivalence(run_mb, run_opt, config)
    t_both = max(run_mb.switch_time, run_opt.switch_time)
    boundary = [e for e in entries if e.t >= t_both]
    mechanism = (len(boundary) > 0 and all(
        (not e.report.gradients_match) and e.report.minimizers_coincide
        for e in boundary))
    frac = sum(1 for e in entries if e.du <= 1e-9) / len(entries)
    ok = mechanism and frac >= 0.90
    return ok, (f"{len(boundary)} boundary samples all mismatch-gradients/"
                f"coincide-minimizers: {mechanism}; coincidence fraction {frac:.4f}")


def check_shooting_vs_closed_form(seed: int) -> CheckResult:
    """Shooting solution matches the closed forms within 1e-6 sup-norm;
    terminal residual within 1e-8."""
    config = reference_scenario()
    sol = oracle.shoot_unconstrained_bvp(config.cost, v0=config.x0.v,
                                         T=config.horizon_T, steps=3000, tol=1e-9)
    law = cruise.build_law(config, cruise.MODEL_BASED)
    v_ref = config.cost.v_ref
    v_closed = np.array([cruise.unconstrained_velocity(t, law.coeffs, v_ref)
                         for t in sol.t])
    lam_closed = np.array([cruise.costate_lambda2(t, law.coeffs, config.cost)
                           for t in sol.t])
    sup_v = float(np.max(np.abs(sol.v - v_closed)))
    sup_lam = float(np.max(np.abs(sol.lambda2 - lam_closed)))
    residual = abs(sol.lambda2[-1] - 2 * config.cost.h * (sol.v[-1] - v_ref))
    ok = sup_v <= 1e-6 and sup_lam <= 1e-6 and residual <= 1e-8
    return ok, f"sup|v| {sup_v:.2e}, sup|lambda2| {sup_lam:.2e}, residual {residual:.2e}"


def check_boundary_coefficient(seed: int) -> CheckResult:
    """Reference value 0.1 within 1e-8; ratio-form agreement to 1e-12
    relative for omega*T <= 300; finite at omega*T = 700."""
    config = reference_scenario()
    omega = cruise.natural_frequency(config.cost)
    w0 = config.x0.v - config.cost.v_ref
    b_ref = cruise.boundary_coefficient(w0, config.cost.h, config.cost.r,
                                        omega, config.horizon_T)
    ok = abs(b_ref - 0.1) <= 1e-8
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(50):
        w0_i = float(rng.uniform(-1, 1))
        h_i = float(rng.uniform(0.1, 5))
        r_i = float(rng.uniform(0.1, 2))
        om = float(rng.uniform(0.2, 3))
        T_i = float(rng.uniform(0.1, 300.0 / om))
        hr = h_i / r_i
        wt = om * T_i
        naive = -w0_i * ((hr * math.cosh(wt) + om * math.sinh(wt))
                         / (om * math.cosh(wt) + hr * math.sinh(wt)))
        safe = cruise.boundary_coefficient(w0_i, h_i, r_i, om, T_i)
        scale = max(abs(naive), abs(safe), 1e-300)
        worst = max(worst, abs(naive - safe) / scale)
    ok = ok and worst <= 1e-12
    far = cruise.boundary_coefficient(-0.1, 1.0, 0.5, 1.0, 700.0)
    ok = ok and math.isfinite(far)
    return ok, f"b {b_ref:.10f}, worst form disagreement {worst:.2e}, b(700) {far:.6f}"


def check_oracle_equivalence(seed: int) -> CheckResult:
    """Closed-form minimizer vs 1e5-point grid within one grid step, and
    analytic vs central-difference gradients within 1e-5, on 200 draws."""
    rng = np.random.default_rng(seed)
    n = 100_000
    worst_grid = 0.0
    worst_grad = 0.0
    for _ in range(200):
        ctx = random_context(rng)
        bounds = random_bounds(rng)
        obj = hamiltonian.reduce_to_quadratic(ctx, "model")
        closed = hamiltonian.minimize_pointwise(obj, bounds)
        gridded = oracle.grid_minimize(lambda u: hamiltonian.model_hamiltonian(ctx, u),
                                       bounds, n)
        worst_grid = max(worst_grid, abs(gridded - closed) / (bounds.width / (n - 1)))
        u_probe = float(rng.uniform(bounds.u_min, bounds.u_max))
        fd = oracle.fd_gradient(lambda u: hamiltonian.model_hamiltonian(ctx, u),
                                u_probe, eps=1e-6)
        worst_grad = max(worst_grad, abs(fd - obj.gradient(u_probe)))
    ok = worst_grid <= 1.0 and worst_grad <= 1e-5
    return ok, (f"worst grid offset {worst_grid:.3f} steps, "
                f"worst gradient gap {worst_grad:.2e}")


def check_penalty_invariance(seed: int) -> CheckResult:
    """Scaling the penalty weights never moves a single projected control."""
    base = reference_scenario()
    run_base = sim.simulate(base, cruise.MODEL_BASED)
    u_base = tuple(s.u for s in run_base.trajectory.samples)
    ok = True
    for factor in (0.0, 10.0, 1000.0):
        scaled = dataclasses.replace(base, penalty=PenaltyWeights(
            beta1=base.penalty.beta1 * factor, beta2=base.penalty.beta2 * factor))
        run = sim.simulate(scaled, cruise.MODEL_BASED)
        ok = ok and tuple(s.u for s in run.trajectory.samples) == u_base
    return ok, f"controls bit-identical across beta scalings: {ok}"


def check_ode_residuals(seed: int) -> CheckResult:
    """Closed forms satisfy their differential equations by finite differences."""
    config = reference_scenario()
    law = cruise.build_law(config, cruise.MODEL_BASED)
    v_ref, q, omega = config.cost.v_ref, config.cost.q, law.coeffs.omega
    dt = 1e-3
    ts = np.arange(0.0, config.horizon_T + dt / 2, dt)
    v = np.array([cruise.unconstrained_velocity(t, law.coeffs, v_ref) for t in ts])
    lam = np.array([cruise.costate_lambda2(t, law.coeffs, config.cost) for t in ts])
    v_dd = (v[2:] - 2 * v[1:-1] + v[:-2]) / (dt * dt)
    res_v = float(np.max(np.abs(v_dd - omega * omega * (v[1:-1] - v_ref))))
    lam_d = (lam[2:] - lam[:-2]) / (2 * dt)
    res_lam = float(np.max(np.abs(lam_d + 2 * q * (v[1:-1] - v_ref))))
    ok = res_v <= 1e-4 and res_lam <= 1e-5
    return ok, f"second-order residual {res_v:.2e}, costate residual {res_lam:.2e}"


def check_safety_accounting(seed: int) -> CheckResult:
    """No violation before the switch; afterwards the u_min-clamped ride
    drifts inward monotonically, bounded by 0.45 m at the horizon."""
    config = reference_scenario()
    run = sim.simulate(config, cruise.PLANT_OPTIMAL)
    samples = run.trajectory.samples
    switch_idx = next(i for i, s in enumerate(samples) if s.t >= run.switch_time)
    pre_ok = all(s.c_value < 0 for s in samples[:switch_idx])
    violations = [max(0.0, s.c_value) for s in samples[switch_idx:]]
    monotone = all(b >= a - 1e-12 for a, b in zip(violations, violations[1:]))
    ok = pre_ok and monotone and run.max_constraint_violation <= 0.45
    return ok, (f"pre-switch clean: {pre_ok}, monotone drift: {monotone}, "
                f"final depth {run.max_constraint_violation:.3f} m")


def check_determinism_and_schema(seed: int) -> CheckResult:
    """Re-running produces byte-identical CSVs matching the frozen digest."""
    config = reference_scenario()
    with tempfile.TemporaryDirectory() as tmp:
        path_a = Path(tmp) / "a.csv"
        path_b = Path(tmp) / "b.csv"
        report.write_trajectory_csv(sim.simulate(config, cruise.PLANT_OPTIMAL), path_a)
        report.write_trajectory_csv(sim.simulate(config, cruise.PLANT_OPTIMAL), path_b)
        data = path_a.read_bytes()
        identical = data == path_b.read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    ok = identical and digest == GOLDEN_PLANT_OPTIMAL_SHA256
    return ok, f"re-run identical: {identical}, digest match: {digest == GOLDEN_PLANT_OPTIMAL_SHA256}"


CHECKS: list[tuple[str, str, Callable[[int], CheckResult]]] = [
    ("C01", "boundary-arc control values", check_boundary_arc_values),
    ("C02", "switch timing", check_switch_timing),
    ("C03", "equivalence mechanism", check_equivalence_mechanism),
    ("C04", "closed form vs shooting BVP", check_shooting_vs_closed_form),
    ("C05", "boundary coefficient", check_boundary_coefficient),
    ("C06", "oracle equivalence", check_oracle_equivalence),
    ("C07", "penalty invariance", check_penalty_invariance),
    ("C08", "ODE residuals", check_ode_residuals),
    ("C09", "safety accounting", check_safety_accounting),
    ("C10", "determinism and schema", check_determinism_and_schema),
]


def run_all(seed: int = 0, stream: TextIO | None = None) -> bool:
    """Run every self-check, print one line per criterion, return overall."""
    if stream is None:
        stream = sys.stdout
    all_ok = True
    for code, title, fn in CHECKS:
        ok, detail = fn(seed)
        all_ok = all_ok and ok
        stream.write(f"{'PASS' if ok else 'FAIL'}  {code} {title}: {detail}\n")
    return all_ok
