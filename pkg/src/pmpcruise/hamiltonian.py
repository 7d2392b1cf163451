"""Pointwise constrained Hamiltonian evaluation and minimization.

At a frozen instant both Hamiltonians reduce, for dynamics affine in the
control, to strongly convex quadratics in u.  The engine evaluates them,
reduces them to explicit quadratic coefficients, minimizes over an
interval control set, and runs the first-order (variational inequality)
and minimizer-equivalence checks that make the plant/model comparison
executable.

The state-discrepancy penalty of the model problem is an additive
constant at fixed states: it shifts the Hamiltonian value but can never
move the minimizer or the gradient in u.

The gap constraint enters through its second time derivative, which is
the first one that depends on the control; the caller supplies the front
vehicle's acceleration, the engine never differentiates anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import InvalidParameter, NonFiniteObjective, OutOfBounds
from .types import ControlBounds, PointwiseContext

#: Default absolute and relative tolerance for gradient comparisons.
GRAD_TOL = 1e-8
#: Default tolerance on coincidence of projected minimizers.
COINCIDE_TOL = 1e-9
#: Uniform strong-convexity floor on the quadratic coefficient; objectives
#: flatter than this have no trustworthy minimizer in double precision.
STRONG_CONVEXITY_FLOOR = 1e-8

_INV_PHI = 2.0 / (1.0 + math.sqrt(5.0))

Which = Literal["plant", "model"]


@dataclass(frozen=True)
class QuadraticControlObjective:
    """The u-dependent quadratic  quad*u^2 + lin*u + offset.

    ``quad`` must sit above the uniform strong-convexity floor; that
    constant is what makes the interval minimizer unique.
    """

    quad: float
    lin: float
    offset: float

    def __post_init__(self):
        if not (math.isfinite(self.quad) and self.quad >= STRONG_CONVEXITY_FLOOR):
            raise InvalidParameter(
                "quad", f"must be finite and >= {STRONG_CONVEXITY_FLOOR:g}")

    def __call__(self, u):
        return self.quad * u * u + self.lin * u + self.offset

    def gradient(self, u):
        return 2.0 * self.quad * u + self.lin

    @property
    def vertex(self) -> float:
        """Unconstrained minimizer -lin / (2 quad)."""
        return -self.lin / (2.0 * self.quad)


@dataclass(frozen=True)
class GradientMatchReport:
    """Outcome of comparing the plant and model pointwise problems.

    Gradients are both evaluated at the model minimizer; minimizers are
    the projected (interval-constrained) ones.
    """

    grad_plant: float
    grad_model: float
    gradients_match: bool
    argmin_plant: float
    argmin_model: float
    minimizers_coincide: bool


def plant_hamiltonian(ctx: PointwiseContext, u):
    """Running cost + costate-weighted dynamics + multiplier-weighted constraint.

    With acceleration a = (gain*u - v)/tau this is
    q (v - v_ref)^2 + r a^2 + lambda1 v + lambda2 a + mu * (-xi (a_front - a)).
    Accepts scalar or ndarray u.
    """
    a = (ctx.actuator.gain * u - ctx.state.v) / ctx.actuator.tau
    c2 = -ctx.safety.xi * (ctx.front_accel - a)
    err = ctx.state.v - ctx.cost.v_ref
    return (ctx.cost.q * err * err
            + ctx.cost.r * a * a
            + ctx.costate_lambda1 * ctx.state.v
            + ctx.costate_lambda2 * a
            + ctx.multiplier_mu * c2)


def model_hamiltonian(ctx: PointwiseContext, u):
    """Plant-shaped Hamiltonian plus the control-independent penalty value."""
    return plant_hamiltonian(ctx, u) + ctx.penalty_value


def reduce_to_quadratic(ctx: PointwiseContext, which: Which) -> QuadraticControlObjective:
    """Expand the Hamiltonian into explicit quadratic coefficients in u.

    a(u) = g*u + b with g = gain/tau and b = -v/tau, so the u^2, u, and
    constant parts separate exactly.  The penalty value lands in the
    offset of the model variant only.
    """
    g = ctx.actuator.gain / ctx.actuator.tau
    b = -ctx.state.v / ctx.actuator.tau
    r = ctx.cost.r
    err = ctx.state.v - ctx.cost.v_ref
    quad = r * g * g
    lin = g * (2.0 * r * b + ctx.costate_lambda2 + ctx.multiplier_mu * ctx.safety.xi)
    offset = (ctx.cost.q * err * err
              + r * b * b
              + ctx.costate_lambda1 * ctx.state.v
              + ctx.costate_lambda2 * b
              - ctx.multiplier_mu * ctx.safety.xi * (ctx.front_accel - b))
    if which == "model":
        offset += ctx.penalty_value
    elif which != "plant":
        raise ValueError(f"which must be 'plant' or 'model', got {which!r}")
    return QuadraticControlObjective(quad=quad, lin=lin, offset=offset)


def minimize_pointwise(obj: QuadraticControlObjective, bounds: ControlBounds) -> float:
    """Unique minimizer of a strongly convex quadratic over the interval."""
    return bounds.clamp(obj.vertex)


def minimize_pointwise_convex(f: Callable[[float], float], bounds: ControlBounds,
                              tol: float = 1e-8) -> float:
    """Golden-section minimizer of a unimodal f over [u_min, u_max].

    Fallback path for non-quadratic convex Hamiltonians; the interval is
    narrowed until its width drops below ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")

    def probe(u: float) -> float:
        val = float(f(u))
        if not math.isfinite(val):
            raise NonFiniteObjective(f"objective non-finite at u = {u!r}")
        return val

    a, b = bounds.u_min, bounds.u_max
    if b - a <= tol:
        return 0.5 * (a + b)
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = probe(x1), probe(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = probe(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = probe(x2)
    return 0.5 * (a + b)


def variational_inequality_holds(grad_at_u: float, u: float, bounds: ControlBounds,
                                 tol: float = GRAD_TOL) -> bool:
    """First-order optimality of u over the interval.

    For an interval the condition <grad, v - u> >= 0 for all feasible v
    splits into: |grad| <= tol at interior points, grad >= -tol at the
    lower endpoint, grad <= tol at the upper endpoint.  A degenerate
    interval accepts anything.

    Raises:
        OutOfBounds: if u lies outside the tol-inflated interval.
    """
    if u < bounds.u_min - tol or u > bounds.u_max + tol:
        raise OutOfBounds(
            f"u = {u!r} outside [{bounds.u_min!r}, {bounds.u_max!r}] (tol {tol:g})"
        )
    at_lower = abs(u - bounds.u_min) <= tol
    at_upper = abs(u - bounds.u_max) <= tol
    if at_lower and at_upper:
        return True
    if at_lower:
        return grad_at_u >= -tol
    if at_upper:
        return grad_at_u <= tol
    return abs(grad_at_u) <= tol


def check_equivalence(plant_ctx: PointwiseContext, model_ctx: PointwiseContext,
                      bounds: ControlBounds, tol: float = GRAD_TOL,
                      coincide_tol: float = COINCIDE_TOL) -> GradientMatchReport:
    """Compare the two pointwise problems at their projected minimizers.

    Both reduced quadratics are minimized over the interval; both
    gradients are evaluated at the model minimizer.  When the gradients
    agree there, first-order optimality transfers between the problems,
    so a matched gradient plus one satisfied variational inequality
    forces the minimizers to coincide.
    """
    obj_plant = reduce_to_quadratic(plant_ctx, "plant")
    obj_model = reduce_to_quadratic(model_ctx, "model")
    argmin_plant = minimize_pointwise(obj_plant, bounds)
    argmin_model = minimize_pointwise(obj_model, bounds)
    grad_plant = obj_plant.gradient(argmin_model)
    grad_model = obj_model.gradient(argmin_model)
    gradients_match = (
        abs(grad_plant - grad_model)
        <= tol + tol * max(abs(grad_plant), abs(grad_model))
    )
    return GradientMatchReport(
        grad_plant=grad_plant,
        grad_model=grad_model,
        gradients_match=gradients_match,
        argmin_plant=argmin_plant,
        argmin_model=argmin_model,
        minimizers_coincide=abs(argmin_plant - argmin_model) <= coincide_tol,
    )


def uniqueness_witness(obj: QuadraticControlObjective, bounds: ControlBounds,
                       trials: int = 10, rng_seed: int = 0) -> bool:
    """Executable uniqueness check for the interval minimizer.

    Runs golden-section searches over ``trials`` random sub-brackets that
    all contain the candidate minimizer; returns True iff every search
    lands on the same point (within 1e-8) as the closed-form projection.
    A non-unique minimizer would let different brackets disagree.
    """
    if trials < 2:
        raise ValueError("trials must be >= 2")
    reference = minimize_pointwise(obj, bounds)
    rng = np.random.default_rng(rng_seed)
    for _ in range(trials):
        lo = rng.uniform(bounds.u_min, reference)
        hi = rng.uniform(reference, bounds.u_max)
        found = minimize_pointwise_convex(obj, ControlBounds(lo, hi), tol=1e-10)
        if abs(found - reference) > 1e-8:
            return False
    return True
