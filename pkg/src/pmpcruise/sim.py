"""Deterministic closed-loop simulation under zero-order-hold control.

The plant is always the physical system being driven; the mode only
selects which parameter set generates the control.  A model state is
propagated in parallel with the same applied control to account for the
state-discrepancy penalty of the penalized cost.  Costs are accumulated
by the trapezoid rule at the control sampling rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cruise import LawKind, apply_law, build_law, costate_lambda2
from .types import (
    ActuatorParams,
    FrontVehicleProfile,
    ScenarioConfig,
    Trajectory,
    TrajectorySample,
    VehicleState,
    validate,
)

#: A sample with c >= -SWITCH_TOL freezes the switch and flips the arc.
SWITCH_TOL = 1e-9


@dataclass(frozen=True)
class SimulationResult:
    """One closed-loop run with both cost accountings."""

    mode: LawKind
    trajectory: Trajectory
    j_act: float
    j_mod: float
    max_constraint_violation: float
    switch_time: float | None


def front_position(front: FrontVehicleProfile, t: float) -> tuple[float, float, float]:
    """Front vehicle position, velocity, and acceleration at time t."""
    p = front.p0 + front.speed * t + 0.5 * front.accel * t * t
    v = front.speed + front.accel * t
    return p, v, front.accel


def zoh_step(state: VehicleState, u: float, dt: float,
             actuator: ActuatorParams) -> VehicleState:
    """Exact discretization of the lag dynamics under constant u over dt.

    With alpha = exp(-dt/tau):
        v' = alpha v + gain (1 - alpha) u
        p' = p + tau (1 - alpha) v + gain (dt - tau (1 - alpha)) u
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    alpha = math.exp(-dt / actuator.tau)
    ramp = actuator.tau * (1.0 - alpha)
    v_next = alpha * state.v + actuator.gain * (1.0 - alpha) * u
    p_next = state.p + ramp * state.v + actuator.gain * (dt - ramp) * u
    return VehicleState(p=p_next, v=v_next)


def _plant_running_cost(config: ScenarioConfig, state: VehicleState, u: float) -> float:
    err = state.v - config.cost.v_ref
    accel = (config.plant.gain * u - state.v) / config.plant.tau
    return config.cost.q * err * err + config.cost.r * accel * accel


def _model_running_cost(config: ScenarioConfig, model: VehicleState,
                        plant: VehicleState, u: float) -> float:
    err = model.v - config.cost.v_ref
    accel = (config.model.gain * u - model.v) / config.model.tau
    dp = model.p - plant.p
    dv = model.v - plant.v
    return (config.cost.q * err * err + config.cost.r * accel * accel
            + config.penalty.beta1 * dp * dp + config.penalty.beta2 * dv * dv)


def _trapezoid(values: list[float], dt: float) -> float:
    if len(values) < 2:
        return 0.0
    return dt * (sum(values) - 0.5 * (values[0] + values[-1]))


def simulate(config: ScenarioConfig, mode: LawKind) -> SimulationResult:
    """Run one closed-loop experiment and return its trajectory and costs.

    At each sample: evaluate the constraint on the plant state, freeze
    the switch at the first sample with c >= -SWITCH_TOL, evaluate the
    law, step plant and model with the same projected control, and
    record everything needed by the reports.
    """
    config = validate(config)
    law = build_law(config, mode)
    dt = config.dt
    n_steps = round(config.horizon_T / dt)
    plant = config.x0
    model = config.x0
    switch_time: float | None = None
    samples: list[TrajectorySample] = []
    plant_costs: list[float] = []
    model_costs: list[float] = []
    max_violation = 0.0

    for k in range(n_steps + 1):
        t = k * dt
        p_front, v_front, a_front = front_position(config.front, t)
        gap = p_front - plant.p
        c_value = config.safety.delta - config.safety.xi * gap
        if switch_time is None and c_value >= -SWITCH_TOL:
            switch_time = t
            law = law.with_switch_time(t)
        u_raw, u = apply_law(law, t, config.cost.v_ref, config.front)
        on_boundary = switch_time is not None and t >= switch_time
        if on_boundary:
            # Costate consistent with the boundary-arc stationarity at mu = 0.
            lam2 = -2.0 * config.cost.r * a_front
        else:
            lam2 = costate_lambda2(t, law.coeffs, config.cost)
        running = _plant_running_cost(config, plant, u)
        samples.append(TrajectorySample(
            t=t, state=plant, u_raw=u_raw, u=u, gap=gap, c_value=c_value,
            constraint_active=c_value >= -SWITCH_TOL, lambda2=lam2,
            running_cost=running,
        ))
        plant_costs.append(running)
        model_costs.append(_model_running_cost(config, model, plant, u))
        max_violation = max(max_violation, max(0.0, c_value))
        if k < n_steps:
            plant = zoh_step(plant, u, dt, config.plant)
            model = zoh_step(model, u, dt, config.model)

    err_plant = plant.v - config.cost.v_ref
    err_model = model.v - config.cost.v_ref
    j_act = _trapezoid(plant_costs, dt) + config.cost.h * err_plant * err_plant
    j_mod = _trapezoid(model_costs, dt) + config.cost.h * err_model * err_model
    trajectory = Trajectory(samples=tuple(samples), total_cost=j_act,
                            switch_time=switch_time)
    return SimulationResult(mode=mode, trajectory=trajectory, j_act=j_act,
                            j_mod=j_mod, max_constraint_violation=max_violation,
                            switch_time=switch_time)


def accumulate_costs(trajectory: Trajectory, config: ScenarioConfig) -> tuple[float, float]:
    """Recompute (j_act, j_mod) from a recorded trajectory.

    The model state is re-propagated from x0 under the recorded controls,
    so the result is bit-identical to the online accounting of
    :func:`simulate` for trajectories it produced.
    """
    samples = trajectory.samples
    dt = config.dt
    model = config.x0
    plant_costs: list[float] = []
    model_costs: list[float] = []
    for k, sample in enumerate(samples):
        plant_costs.append(_plant_running_cost(config, sample.state, sample.u))
        model_costs.append(_model_running_cost(config, model, sample.state, sample.u))
        if k < len(samples) - 1:
            model = zoh_step(model, sample.u, dt, config.model)
    err_plant = samples[-1].state.v - config.cost.v_ref
    err_model = model.v - config.cost.v_ref
    j_act = _trapezoid(plant_costs, dt) + config.cost.h * err_plant * err_plant
    j_mod = _trapezoid(model_costs, dt) + config.cost.h * err_model * err_model
    return j_act, j_mod
