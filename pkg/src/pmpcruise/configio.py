"""Scenario files: flat ``key = value`` text with dotted section names.

One scenario per file.  Keys mirror the ScenarioConfig field names exactly
(``plant.tau``, ``cost.q``, ``horizon_T``, ...).  Unknown keys are rejected
so typos fail loudly.  Lines starting with ``#`` and blank lines are
ignored.  Serialization uses ``repr`` so a round trip is exact.
"""

from __future__ import annotations

from pathlib import Path

from .errors import InvalidParameter
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

# Canonical key order, also used when writing.
CONFIG_KEYS = (
    "plant.tau",
    "plant.gain",
    "model.tau",
    "model.gain",
    "bounds.u_min",
    "bounds.u_max",
    "cost.q",
    "cost.r",
    "cost.h",
    "cost.v_ref",
    "safety.delta",
    "safety.xi",
    "front.p0",
    "front.speed",
    "front.accel",
    "penalty.beta1",
    "penalty.beta2",
    "x0.p",
    "x0.v",
    "horizon_T",
    "dt",
)


def parse_config(text: str) -> ScenarioConfig:
    """Parse scenario text into a validated ScenarioConfig."""
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidParameter(f"line {lineno}", f"expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise InvalidParameter(key, "unknown key")
        if key in values:
            raise InvalidParameter(key, "duplicate key")
        try:
            values[key] = float(value.strip())
        except ValueError:
            raise InvalidParameter(key, f"not a number: {value.strip()!r}") from None
    missing = [k for k in CONFIG_KEYS if k not in values]
    if missing:
        raise InvalidParameter(missing[0], "missing key")
    return ScenarioConfig(
        plant=ActuatorParams(tau=values["plant.tau"], gain=values["plant.gain"]),
        model=ActuatorParams(tau=values["model.tau"], gain=values["model.gain"]),
        bounds=ControlBounds(u_min=values["bounds.u_min"], u_max=values["bounds.u_max"]),
        cost=CostParams(q=values["cost.q"], r=values["cost.r"],
                        h=values["cost.h"], v_ref=values["cost.v_ref"]),
        safety=SafetyParams(delta=values["safety.delta"], xi=values["safety.xi"]),
        front=FrontVehicleProfile(p0=values["front.p0"], speed=values["front.speed"],
                                  accel=values["front.accel"]),
        penalty=PenaltyWeights(beta1=values["penalty.beta1"], beta2=values["penalty.beta2"]),
        x0=VehicleState(p=values["x0.p"], v=values["x0.v"]),
        horizon_T=values["horizon_T"],
        dt=values["dt"],
    )


def format_config(config: ScenarioConfig) -> str:
    """Serialize a ScenarioConfig to the flat text format."""
    flat = {
        "plant.tau": config.plant.tau,
        "plant.gain": config.plant.gain,
        "model.tau": config.model.tau,
        "model.gain": config.model.gain,
        "bounds.u_min": config.bounds.u_min,
        "bounds.u_max": config.bounds.u_max,
        "cost.q": config.cost.q,
        "cost.r": config.cost.r,
        "cost.h": config.cost.h,
        "cost.v_ref": config.cost.v_ref,
        "safety.delta": config.safety.delta,
        "safety.xi": config.safety.xi,
        "front.p0": config.front.p0,
        "front.speed": config.front.speed,
        "front.accel": config.front.accel,
        "penalty.beta1": config.penalty.beta1,
        "penalty.beta2": config.penalty.beta2,
        "x0.p": config.x0.p,
        "x0.v": config.x0.v,
        "horizon_T": config.horizon_T,
        "dt": config.dt,
    }
    lines = [f"{key} = {float(flat[key])!r}" for key in CONFIG_KEYS]
    return "\n".join(lines) + "\n"


def load_config(path: str | Path) -> ScenarioConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def save_config(config: ScenarioConfig, path: str | Path) -> None:
    Path(path).write_text(format_config(config), encoding="utf-8")
