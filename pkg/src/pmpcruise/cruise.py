"""Closed-form control laws for the two-vehicle cruise problem.

On the unconstrained arc the velocity error w = v - v_ref obeys
w'' = omega^2 w with omega = sqrt(q/r), giving hyperbolic closed forms
for the velocity, the control, and the velocity costate.  Once the gap
constraint activates, the control switches to riding the boundary by
copying the front vehicle's velocity and acceleration profile.  Both the
model-based law and its plant-parameter counterpart share the arc
coefficients and differ only in the actuator parameters substituted into
the control formula.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Literal

from .types import (
    ActuatorParams,
    ControlBounds,
    CostParams,
    FrontVehicleProfile,
    SafetyParams,
    ScenarioConfig,
    Trajectory,
    VehicleState,
)

MODEL_BASED = "model_based"
PLANT_OPTIMAL = "plant_optimal"
LawKind = Literal["model_based", "plant_optimal"]


@dataclass(frozen=True)
class UnconstrainedArcCoefficients:
    """Natural frequency, initial velocity error, and boundary coefficient."""

    omega: float
    w0: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError("omega must be finite and > 0")
        if not (math.isfinite(self.w0) and math.isfinite(self.b)):
            raise ValueError("w0 and b must be finite")


@dataclass(frozen=True)
class ControlLaw:
    """One arc-switching control strategy, immutable once built.

    ``switch_time`` is None until the constraint activates; discovering
    it online means constructing a new law via :meth:`with_switch_time`.
    """

    kind: LawKind
    actuator: ActuatorParams
    coeffs: UnconstrainedArcCoefficients
    bounds: ControlBounds
    switch_time: float | None = None

    def with_switch_time(self, t_s: float) -> "ControlLaw":
        return dataclasses.replace(self, switch_time=t_s)


def natural_frequency(cost: CostParams) -> float:
    """omega = sqrt(q / r)."""
    return math.sqrt(cost.q / cost.r)


def boundary_coefficient(w0: float, h: float, r: float, omega: float, T: float) -> float:
    """Coefficient of the sinh term fixed by the terminal costate condition.

    Evaluated in the overflow-safe form
        b = -w0 * (h/r + omega*tanh(omega T)) / (omega + (h/r)*tanh(omega T)),
    which equals the cosh/sinh ratio form after dividing through by
    cosh(omega T) but stays finite for omega*T far beyond the point where
    cosh overflows doubles (~710).
    """
    th = math.tanh(omega * T)
    hr = h / r
    return -w0 * (hr + omega * th) / (omega + hr * th)


# The hyperbolic combinations w0 cosh + b sinh (and relatives) are evaluated
# through the exponential modes ((w0+b)/2) e^{wt} + ((w0-b)/2) e^{-wt}.
# Algebraically identical, but immune to the catastrophic cancellation the
# cosh/sinh pairing suffers once omega*t is large and the two halves nearly
# cancel (exactly the situation of a converged arc).

def _modes(coeffs: UnconstrainedArcCoefficients, t: float) -> tuple[float, float, float, float]:
    wt = coeffs.omega * t
    grow = math.exp(wt)
    decay = math.exp(-wt)
    half_sum = 0.5 * (coeffs.w0 + coeffs.b)
    half_diff = 0.5 * (coeffs.w0 - coeffs.b)
    return grow, decay, half_sum, half_diff


def _arc_rate(t: float, coeffs: UnconstrainedArcCoefficients) -> float:
    """Acceleration v' on the unconstrained arc: omega*(w0 sinh + b cosh)."""
    grow, decay, half_sum, half_diff = _modes(coeffs, t)
    return coeffs.omega * (half_sum * grow - half_diff * decay)


def unconstrained_velocity(t: float, coeffs: UnconstrainedArcCoefficients,
                           v_ref: float) -> float:
    """v(t) = v_ref + w0 cosh(omega t) + b sinh(omega t)."""
    grow, decay, half_sum, half_diff = _modes(coeffs, t)
    return v_ref + half_sum * grow + half_diff * decay


def unconstrained_position(t: float, coeffs: UnconstrainedArcCoefficients,
                           v_ref: float, p0: float) -> float:
    """Integral of the closed-form velocity from the initial position."""
    grow, decay, half_sum, half_diff = _modes(coeffs, t)
    return (p0 + v_ref * t
            + (half_sum * (grow - 1.0) - half_diff * (decay - 1.0)) / coeffs.omega)


def unconstrained_control_raw(t: float, coeffs: UnconstrainedArcCoefficients,
                              actuator: ActuatorParams, v_ref: float) -> float:
    """Unprojected control that tracks the closed-form arc:
    (v(t) + tau * v'(t)) / gain.
    """
    v = unconstrained_velocity(t, coeffs, v_ref)
    return (v + actuator.tau * _arc_rate(t, coeffs)) / actuator.gain


def constrained_control_raw(t: float, front: FrontVehicleProfile,
                            actuator: ActuatorParams) -> float:
    """Unprojected boundary-arc control: copy the front vehicle's velocity
    and acceleration, (v_front + tau * a_front) / gain.
    """
    v_front = front.speed + front.accel * t
    return (v_front + actuator.tau * front.accel) / actuator.gain


def costate_lambda2(t: float, coeffs: UnconstrainedArcCoefficients,
                    cost: CostParams) -> float:
    """Velocity costate on the unconstrained arc, -2 r v'(t)."""
    return -2.0 * cost.r * _arc_rate(t, coeffs)


def apply_law(law: ControlLaw, t: float, v_ref: float,
              front: FrontVehicleProfile) -> tuple[float, float]:
    """Evaluate the law at time t: (raw control, projected control)."""
    if law.switch_time is not None and t >= law.switch_time:
        u_raw = constrained_control_raw(t, front, law.actuator)
    else:
        u_raw = unconstrained_control_raw(t, law.coeffs, law.actuator, v_ref)
    return u_raw, law.bounds.clamp(u_raw)


def build_law(config: ScenarioConfig, kind: LawKind) -> ControlLaw:
    """Assemble the law for one parameter set, switch time not yet known."""
    if kind == MODEL_BASED:
        actuator = config.model
    elif kind == PLANT_OPTIMAL:
        actuator = config.plant
    else:
        raise ValueError(f"unknown law kind {kind!r}")
    omega = natural_frequency(config.cost)
    w0 = config.x0.v - config.cost.v_ref
    b = boundary_coefficient(w0, config.cost.h, config.cost.r, omega, config.horizon_T)
    coeffs = UnconstrainedArcCoefficients(omega=omega, w0=w0, b=b)
    return ControlLaw(kind=kind, actuator=actuator, coeffs=coeffs,
                      bounds=config.bounds, switch_time=None)


def detect_activation(simulated: Trajectory, safety: SafetyParams,
                      tol: float = 1e-9) -> float | None:
    """First time the recorded constraint value crosses up to >= -tol.

    Linearly interpolates the zero crossing between the bracketing
    samples (reporting-only refinement; the closed loop switches at
    sample times).  Returns None if the constraint never activates.
    """
    samples = simulated.samples
    if samples[0].c_value >= -tol:
        return samples[0].t
    for prev, cur in zip(samples, samples[1:]):
        if cur.c_value >= -tol:
            if cur.c_value == prev.c_value:
                return cur.t
            frac = (0.0 - prev.c_value) / (cur.c_value - prev.c_value)
            frac = min(max(frac, 0.0), 1.0)
            return prev.t + frac * (cur.t - prev.t)
    return None


def tangency_residual(at_time: float, trajectory_state: VehicleState,
                      front: FrontVehicleProfile,
                      safety: SafetyParams) -> tuple[float, float]:
    """Boundary-arc entry residuals (c, c') at the given state and time.

    A clean tangent entry would have both zero; first-contact switching
    generally leaves a nonzero velocity residual, which is reported, not
    enforced.
    """
    p_front = front.p0 + front.speed * at_time + 0.5 * front.accel * at_time * at_time
    v_front = front.speed + front.accel * at_time
    c = safety.delta - safety.xi * (p_front - trajectory_state.p)
    c_dot = -safety.xi * (v_front - trajectory_state.v)
    return c, c_dot
