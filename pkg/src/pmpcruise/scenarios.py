"""Reference scenarios used by the test-suite and the --check self-checks."""

from __future__ import annotations

from .types import (
    ActuatorParams,
    ControlBounds,
    CostParams,
    FrontVehicleProfile,
    PenaltyWeights,
    SafetyParams,
    ScenarioConfig,
    VehicleState,
)


def reference_scenario() -> ScenarioConfig:
    """Two-vehicle cruise scenario with mismatched actuator parameters.

    The controlled vehicle starts at rest offset below the reference
    velocity; the front vehicle cruises slowly ahead, so the safety
    constraint activates mid-horizon and both control strategies end up
    riding the lower control bound.
    """
    return ScenarioConfig(
        plant=ActuatorParams(tau=0.1, gain=1.4),
        model=ActuatorParams(tau=0.3, gain=1.2),
        bounds=ControlBounds(u_min=0.1, u_max=0.4),
        cost=CostParams(q=1.0, r=0.5, h=1.0, v_ref=0.6),
        safety=SafetyParams(delta=1.0, xi=1.0),
        front=FrontVehicleProfile(p0=4.0, speed=0.1, accel=0.0),
        penalty=PenaltyWeights(beta1=1.0, beta2=1.0),
        x0=VehicleState(p=0.0, v=0.5),
        horizon_T=15.0,
        dt=0.1,
    )
