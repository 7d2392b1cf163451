"""Value types shared by the control laws, the simulator, and the reports.

Every type is an immutable dataclass whose field invariants are enforced at
construction.  Cross-field feasibility of a full scenario (the ego vehicle
must start strictly outside the safety boundary) is checked by
:func:`validate`, which the simulator calls before running.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleStart, InvalidParameter


def _finite(x) -> bool:
    try:
        return math.isfinite(float(x))
    except (TypeError, ValueError):
        return False


def _require(condition: bool, field: str, reason: str) -> None:
    if not condition:
        raise InvalidParameter(field, reason)


@dataclass(frozen=True)
class VehicleState:
    """Position (m) and velocity (m/s) of one vehicle, plant or model."""

    p: float
    v: float

    def __post_init__(self):
        _require(_finite(self.p), "p", "must be finite")
        _require(_finite(self.v), "v", "must be finite")


@dataclass(frozen=True)
class ActuatorParams:
    """First-order actuation: lag time constant (s) and dimensionless gain."""

    tau: float
    gain: float

    def __post_init__(self):
        _require(_finite(self.tau) and self.tau > 0, "tau", "must be finite and > 0")
        _require(_finite(self.gain) and self.gain > 0, "gain", "must be finite and > 0")


@dataclass(frozen=True)
class ControlBounds:
    """Admissible throttle interval [u_min, u_max]."""

    u_min: float
    u_max: float

    def __post_init__(self):
        _require(_finite(self.u_min), "u_min", "must be finite")
        _require(_finite(self.u_max), "u_max", "must be finite")
        _require(self.u_min <= self.u_max, "u_min", "must satisfy u_min <= u_max")

    def clamp(self, u: float) -> float:
        return min(max(u, self.u_min), self.u_max)

    @property
    def width(self) -> float:
        return self.u_max - self.u_min


@dataclass(frozen=True)
class CostParams:
    """Quadratic running/terminal cost weights and the reference velocity.

    Strict positivity of q, r, h keeps the pointwise control objective
    strongly convex, which is what makes its minimizer unique.
    """

    q: float
    r: float
    h: float
    v_ref: float

    def __post_init__(self):
        _require(_finite(self.q) and self.q > 0, "q", "must be finite and > 0")
        _require(_finite(self.r) and self.r > 0, "r", "must be finite and > 0")
        _require(_finite(self.h) and self.h > 0, "h", "must be finite and > 0")
        _require(_finite(self.v_ref), "v_ref", "must be finite")


@dataclass(frozen=True)
class SafetyParams:
    """Safety distance delta (m) and reaction coefficient xi.

    The gap constraint is delta - xi * (p_front - p_ego) <= 0.
    """

    delta: float
    xi: float

    def __post_init__(self):
        _require(_finite(self.delta) and self.delta > 0, "delta", "must be finite and > 0")
        _require(_finite(self.xi) and self.xi > 0, "xi", "must be finite and > 0")


@dataclass(frozen=True)
class FrontVehicleProfile:
    """Constant-acceleration motion of the uncontrolled front vehicle.

    Position at time t is p0 + speed*t + accel*t^2/2, so the first and
    second derivatives needed by the boundary-arc control are exact.
    """

    p0: float
    speed: float
    accel: float = 0.0

    def __post_init__(self):
        _require(_finite(self.p0), "p0", "must be finite")
        _require(_finite(self.speed), "speed", "must be finite")
        _require(_finite(self.accel), "accel", "must be finite")


@dataclass(frozen=True)
class PenaltyWeights:
    """Weights of the model/plant state-discrepancy penalty.

    The penalty beta1*(p - p_hat)^2 + beta2*(v - v_hat)^2 enters the
    penalized cost only; it never depends on the control input.
    """

    beta1: float = 1.0
    beta2: float = 1.0

    def __post_init__(self):
        _require(_finite(self.beta1) and self.beta1 >= 0, "beta1", "must be finite and >= 0")
        _require(_finite(self.beta2) and self.beta2 >= 0, "beta2", "must be finite and >= 0")


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete description of one closed-loop experiment."""

    plant: ActuatorParams
    model: ActuatorParams
    bounds: ControlBounds
    cost: CostParams
    safety: SafetyParams
    front: FrontVehicleProfile
    penalty: PenaltyWeights
    x0: VehicleState
    horizon_T: float
    dt: float

    def __post_init__(self):
        _require(_finite(self.horizon_T) and self.horizon_T > 0,
                 "horizon_T", "must be finite and > 0")
        _require(_finite(self.dt) and 0 < self.dt < self.horizon_T,
                 "dt", "must satisfy 0 < dt < horizon_T")

    @property
    def initial_gap(self) -> float:
        return self.front.p0 - self.x0.p


def validate(config: ScenarioConfig) -> ScenarioConfig:
    """Check scenario feasibility and return the config unchanged.

    Field invariants already hold by construction; this adds the
    cross-field check that the run starts strictly outside the safety
    boundary.  Idempotent.

    Raises:
        InfeasibleStart: if the initial gap is <= delta/xi.
    """
    threshold = config.safety.delta / config.safety.xi
    if config.initial_gap <= threshold:
        raise InfeasibleStart(
            f"initial gap {config.initial_gap:g} m must exceed "
            f"delta/xi = {threshold:g} m"
        )
    return config


@dataclass(frozen=True)
class PointwiseContext:
    """Everything needed to evaluate one Hamiltonian at a fixed time.

    ``penalty_value`` is the precomputed, control-independent state
    discrepancy penalty; ``front_accel`` is the front vehicle's
    acceleration at ``t``, needed by the differentiated gap-constraint
    term.  ``costate_lambda1`` is zero along aligned trajectories and is
    carried for the generic engine only.
    """

    t: float
    state: VehicleState
    costate_lambda2: float
    multiplier_mu: float
    actuator: ActuatorParams
    cost: CostParams
    safety: SafetyParams
    penalty_value: float = 0.0
    costate_lambda1: float = 0.0
    front_accel: float = 0.0

    def __post_init__(self):
        for name in ("t", "costate_lambda2", "multiplier_mu",
                     "penalty_value", "costate_lambda1", "front_accel"):
            _require(_finite(getattr(self, name)), name, "must be finite")
        _require(self.penalty_value >= 0, "penalty_value", "must be >= 0")


@dataclass(frozen=True)
class TrajectorySample:
    """One recorded instant of a closed-loop run.

    ``u_raw`` is the law output before projection, ``u`` after;
    ``c_value`` is delta - xi*gap, so the constraint is satisfied while
    it stays negative.  ``running_cost`` is the instantaneous plant cost
    integrand.
    """

    t: float
    state: VehicleState
    u_raw: float
    u: float
    gap: float
    c_value: float
    constraint_active: bool
    lambda2: float
    running_cost: float


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered samples of one run plus its accumulated plant cost."""

    samples: tuple[TrajectorySample, ...]
    total_cost: float
    switch_time: float | None

    def __post_init__(self):
        _require(len(self.samples) >= 1, "samples", "must be nonempty")
        _require(self.samples[0].t == 0.0, "samples", "must start at t = 0")
        ts = [s.t for s in self.samples]
        _require(all(a < b for a, b in zip(ts, ts[1:])),
                 "samples", "must be strictly increasing in t")

    @property
    def times(self) -> tuple[float, ...]:
        return tuple(s.t for s in self.samples)
