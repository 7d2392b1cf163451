"""Penalized model-based optimal control toolkit for constrained cruise control.

The package provides pointwise constrained Hamiltonian minimization with
plant/model equivalence checks, closed-form arc-switching control laws,
a deterministic closed-loop simulator, and independent brute-force
oracles that verify every closed form.
"""

from .cruise import (
    MODEL_BASED,
    PLANT_OPTIMAL,
    ControlLaw,
    UnconstrainedArcCoefficients,
    apply_law,
    boundary_coefficient,
    build_law,
    constrained_control_raw,
    costate_lambda2,
    detect_activation,
    natural_frequency,
    tangency_residual,
    unconstrained_control_raw,
    unconstrained_velocity,
)
from .errors import (
    HorizonMismatch,
    InfeasibleStart,
    InvalidParameter,
    NoConvergence,
    NonFiniteObjective,
    OutOfBounds,
)
from .hamiltonian import (
    GradientMatchReport,
    QuadraticControlObjective,
    check_equivalence,
    minimize_pointwise,
    minimize_pointwise_convex,
    model_hamiltonian,
    plant_hamiltonian,
    reduce_to_quadratic,
    uniqueness_witness,
    variational_inequality_holds,
)
from .oracle import fd_gradient, grid_minimize, rk4_integrate, shoot_unconstrained_bvp
from .sim import SimulationResult, accumulate_costs, front_position, simulate, zoh_step
from .types import (
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

__version__ = "0.1.0"

__all__ = [
    "ActuatorParams",
    "ControlBounds",
    "ControlLaw",
    "CostParams",
    "FrontVehicleProfile",
    "GradientMatchReport",
    "HorizonMismatch",
    "InfeasibleStart",
    "InvalidParameter",
    "MODEL_BASED",
    "NoConvergence",
    "NonFiniteObjective",
    "OutOfBounds",
    "PLANT_OPTIMAL",
    "PenaltyWeights",
    "PointwiseContext",
    "QuadraticControlObjective",
    "SafetyParams",
    "ScenarioConfig",
    "SimulationResult",
    "Trajectory",
    "TrajectorySample",
    "UnconstrainedArcCoefficients",
    "VehicleState",
    "accumulate_costs",
    "apply_law",
    "boundary_coefficient",
    "build_law",
    "check_equivalence",
    "constrained_control_raw",
    "costate_lambda2",
    "detect_activation",
    "fd_gradient",
    "front_position",
    "grid_minimize",
    "minimize_pointwise",
    "minimize_pointwise_convex",
    "model_hamiltonian",
    "natural_frequency",
    "plant_hamiltonian",
    "reduce_to_quadratic",
    "rk4_integrate",
    "shoot_unconstrained_bvp",
    "simulate",
    "tangency_residual",
    "unconstrained_control_raw",
    "unconstrained_velocity",
    "uniqueness_witness",
    "validate",
    "variational_inequality_holds",
    "zoh_step",
]
