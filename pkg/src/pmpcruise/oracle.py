"""Independent brute-force verifiers.

Everything here deliberately avoids the closed forms it is used to check:
grid scans for pointwise minimizers, central differences for gradients,
fixed-step RK4 as the reference integrator, and a secant-shooting solver
for the unconstrained velocity/costate boundary value problem.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .errors import NoConvergence, NonFiniteObjective
from .types import ControlBounds, CostParams


def grid_minimize(f: Callable[[float], float], bounds: ControlBounds, n: int) -> float:
    """Argmin of f over a uniform n-point grid including both endpoints.

    Ties break toward the smaller u so results are deterministic.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    us = np.linspace(bounds.u_min, bounds.u_max, n)
    vals = None
    with np.errstate(all="ignore"):
        try:
            candidate = np.asarray(f(us), dtype=float)
            if candidate.shape == us.shape:
                vals = candidate
        except (TypeError, ValueError, ZeroDivisionError):
            vals = None
        if vals is None:
            try:
                vals = np.array([float(f(u)) for u in us])
            except ZeroDivisionError:
                raise NonFiniteObjective("objective non-finite on the grid") from None
    if not np.all(np.isfinite(vals)):
        raise NonFiniteObjective("objective non-finite on the grid")
    return float(us[int(np.argmin(vals))])


def fd_gradient(f: Callable[[float], float], u: float, eps: float = 1e-6) -> float:
    """Central-difference derivative (f(u+eps) - f(u-eps)) / (2 eps)."""
    if eps <= 0:
        raise ValueError("eps must be > 0")
    hi = float(f(u + eps))
    lo = float(f(u - eps))
    if not (math.isfinite(hi) and math.isfinite(lo)):
        raise NonFiniteObjective(f"objective non-finite near u = {u!r}")
    return (hi - lo) / (2.0 * eps)


def rk4_integrate(rhs, x0, t0, t1, steps: int):
    """Classical fourth-order Runge-Kutta with a fixed step.

    The state may be any value supporting vector arithmetic (float,
    numpy scalar, or ndarray); the dtype of ``x0`` is preserved.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    h = (t1 - t0) / steps
    x = x0
    for i in range(steps):
        t = t0 + i * h
        k1 = rhs(t, x)
        k2 = rhs(t + h / 2, x + (h / 2) * k1)
        k3 = rhs(t + h / 2, x + (h / 2) * k2)
        k4 = rhs(t + h, x + h * k3)
        x = x + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return x


class ShootingSolution(NamedTuple):
    t: np.ndarray
    v: np.ndarray
    lambda2: np.ndarray


def shoot_unconstrained_bvp(cost: CostParams, v0: float, T: float,
                            steps: int = 2000, tol: float = 1e-9) -> ShootingSolution:
    """Solve the unconstrained velocity/costate two-point BVP by shooting.

    Integrates the coupled system  w' = -lam2/(2r),  lam2' = -2 q w
    (w = v - v_ref) forward with RK4 from (w(0), lam2(0) = guess) and
    adjusts the scalar guess by the secant method until the terminal
    condition lam2(T) = 2 h w(T) holds within ``tol``.

    Forward shooting on this hyperbolic system is exponentially
    ill-conditioned in the horizon, so the integration runs in extended
    precision; results are returned as float64 arrays.

    Raises:
        NoConvergence: after 100 secant iterations above ``tol``.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    ld = np.longdouble
    q, r, h_term, v_ref = cost.q, cost.r, cost.h, cost.v_ref
    w0 = ld(v0) - ld(v_ref)
    t_grid = np.linspace(ld(0), ld(T), steps + 1)

    def rhs(t, y):
        return np.array([-y[1] / (2 * ld(r)), -2 * ld(q) * y[0]], dtype=ld)

    def integrate(guess):
        traj = np.empty((steps + 1, 2), dtype=ld)
        traj[0] = (w0, guess)
        y = traj[0]
        for i in range(steps):
            y = rk4_integrate(rhs, y, t_grid[i], t_grid[i + 1], 1)
            traj[i + 1] = y
        residual = traj[-1, 1] - 2 * ld(h_term) * traj[-1, 0]
        return traj, residual

    def solution(traj):
        return ShootingSolution(
            t=t_grid.astype(float),
            v=(ld(v_ref) + traj[:, 0]).astype(float),
            lambda2=traj[:, 1].astype(float),
        )

    g_prev = ld(0.0)
    traj, res_prev = integrate(g_prev)
    if abs(res_prev) <= tol:
        return solution(traj)

    # Warm start near the expected costate scale, perturbed by 10% so it
    # never coincides with the value it is meant to verify.
    omega = math.sqrt(q / r)
    g = ld(-2.0 * r * omega) * w0 * ld(1.1)
    if g == g_prev:
        g = ld(0.1)

    for iteration in range(1, 101):
        traj, res = integrate(g)
        if abs(res) <= tol:
            return solution(traj)
        if res == res_prev:
            raise NoConvergence(iteration, float(res))
        g, g_prev, res_prev = g - res * (g - g_prev) / (res - res_prev), g, res
    raise NoConvergence(100, float(res))
