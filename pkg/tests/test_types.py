import math

import pytest

from pmpcruise.errors import InfeasibleStart, InvalidParameter
from pmpcruise.types import (
    ActuatorParams,
    ControlBounds,
    CostParams,
    FrontVehicleProfile,
    PenaltyWeights,
    PointwiseContext,
    SafetyParams,
    ScenarioConfig,
    Trajectory,
    TrajectorySample,
    VehicleState,
    validate,
)


def test_reference_scenario_is_valid(scenario):
    assert validate(scenario) is scenario


def test_validate_is_idempotent(scenario):
    assert validate(validate(scenario)) is scenario


def test_zero_effort_weight_rejected():
    with pytest.raises(InvalidParameter) as exc:
        CostParams(q=1.0, r=0.0, h=1.0, v_ref=0.6)
    assert exc.value.field == "r"


def test_infeasible_start_rejected(scenario):
    import dataclasses
    close = dataclasses.replace(scenario, x0=VehicleState(p=3.5, v=0.5))
    with pytest.raises(InfeasibleStart):
        validate(close)


def test_start_exactly_on_boundary_rejected(scenario):
    import dataclasses
    on_boundary = dataclasses.replace(scenario, x0=VehicleState(p=3.0, v=0.5))
    with pytest.raises(InfeasibleStart):
        validate(on_boundary)


@pytest.mark.parametrize("tau,gain", [(0.0, 1.0), (-0.1, 1.0), (0.1, 0.0),
                                      (math.nan, 1.0), (0.1, math.inf)])
def test_actuator_invariants(tau, gain):
    with pytest.raises(InvalidParameter):
        ActuatorParams(tau=tau, gain=gain)


def test_bounds_must_be_ordered():
    with pytest.raises(InvalidParameter):
        ControlBounds(u_min=0.5, u_max=0.4)
    degenerate = ControlBounds(u_min=0.3, u_max=0.3)
    assert degenerate.clamp(1.0) == 0.3


def test_clamp():
    bounds = ControlBounds(0.1, 0.4)
    assert bounds.clamp(0.25) == 0.25
    assert bounds.clamp(2.0) == 0.4
    assert bounds.clamp(-1.0) == 0.1


def test_negative_penalty_weight_rejected():
    with pytest.raises(InvalidParameter):
        PenaltyWeights(beta1=-1.0, beta2=0.0)


def test_safety_invariants():
    with pytest.raises(InvalidParameter):
        SafetyParams(delta=0.0, xi=1.0)
    with pytest.raises(InvalidParameter):
        SafetyParams(delta=1.0, xi=-1.0)


def test_nonfinite_state_rejected():
    with pytest.raises(InvalidParameter):
        VehicleState(p=math.inf, v=0.0)


def test_front_profile_requires_finite_fields():
    with pytest.raises(InvalidParameter):
        FrontVehicleProfile(p0=math.nan, speed=0.1)


def test_dt_must_fit_in_horizon(scenario):
    import dataclasses
    with pytest.raises(InvalidParameter):
        dataclasses.replace(scenario, dt=16.0)
    with pytest.raises(InvalidParameter):
        dataclasses.replace(scenario, dt=0.0)
    with pytest.raises(InvalidParameter):
        dataclasses.replace(scenario, horizon_T=-1.0)


def test_context_penalty_must_be_nonnegative(scenario):
    with pytest.raises(InvalidParameter):
        PointwiseContext(t=0.0, state=VehicleState(0.0, 0.5),
                         costate_lambda2=0.0, multiplier_mu=0.0,
                         actuator=scenario.model, cost=scenario.cost,
                         safety=scenario.safety, penalty_value=-1.0)


def _sample(t: float) -> TrajectorySample:
    return TrajectorySample(t=t, state=VehicleState(0.0, 0.0), u_raw=0.2, u=0.2,
                            gap=4.0, c_value=-3.0, constraint_active=False,
                            lambda2=0.0, running_cost=0.0)


def test_trajectory_ordering_enforced():
    with pytest.raises(InvalidParameter):
        Trajectory(samples=(_sample(0.0), _sample(0.2), _sample(0.1)),
                   total_cost=0.0, switch_time=None)
    with pytest.raises(InvalidParameter):
        Trajectory(samples=(_sample(0.5),), total_cost=0.0, switch_time=None)
    ok = Trajectory(samples=(_sample(0.0), _sample(0.1)), total_cost=0.0,
                    switch_time=None)
    assert ok.times == (0.0, 0.1)
