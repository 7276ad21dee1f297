"""Dielectric models for the three-region plate/gap/plate configuration.

Two isotropic plates face each other across a uniaxial gap medium whose
optical axis is normal to the plate surfaces.  Each region is described
by a relative permittivity evaluated on the imaginary frequency axis,
either as a static constant or as a sum of undamped oscillator terms

    eps(i*xi) = 1 + sum_j C_j / (1 + (xi/omega_j)**2)

which is real, >= 1 and monotonically non-increasing in xi.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "Constant",
    "Oscillator",
    "PermittivityModel",
    "MaterialSystem",
    "RatioSet",
    "permittivity_at",
    "ratios",
    "validate",
    "require_valid",
    "system_from_json",
    "system_to_json",
]


@dataclass(frozen=True)
class Constant:
    """Dispersionless relative permittivity (value > 0)."""

    value: float


@dataclass(frozen=True)
class Oscillator:
    """Oscillator-sum permittivity; terms are (strength, resonance rad/s) pairs."""

    terms: tuple = ()

    def __init__(self, terms: Sequence[Sequence[float]]):
        object.__setattr__(self, "terms", tuple((float(c), float(w)) for c, w in terms))


PermittivityModel = Union[Constant, Oscillator]


@dataclass(frozen=True)
class MaterialSystem:
    """Permittivity models for plate 1, plate 2 and the two axes of the gap medium.

    eps3x is the gap component perpendicular to the optical axis, eps3z the
    component along it; eps3x == eps3z is the isotropic case.
    """

    eps1: PermittivityModel
    eps2: PermittivityModel
    eps3x: PermittivityModel
    eps3z: PermittivityModel

    def is_static(self) -> bool:
        return all(isinstance(m, Constant) for m in (self.eps1, self.eps2, self.eps3x, self.eps3z))


@dataclass(frozen=True)
class RatioSet:
    """Plate/gap permittivity ratios at one imaginary frequency.

    m1 = eps1/eps3x, m2 = eps2/eps3x, m3 = eps3z/eps3x; m3 == 1 means the
    gap medium is isotropic.  eps3x is carried along for prefactors.
    """

    m1: float
    m2: float
    m3: float
    eps3x: float


def permittivity_at(model: PermittivityModel, xi):
    """Evaluate eps(i*xi); xi may be a float or an ndarray, in rad/s, >= 0."""
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0.0):
        raise ValueError("imaginary frequency xi must be >= 0")
    if isinstance(model, Constant):
        out = np.broadcast_to(np.asarray(model.value, dtype=float), xi.shape)
        return float(out) if out.ndim == 0 else out.copy()
    if isinstance(model, Oscillator):
        out = np.ones_like(xi, dtype=float)
        for strength, resonance in model.terms:
            out = out + strength / (1.0 + (xi / resonance) ** 2)
        return float(out) if out.ndim == 0 else out
    raise TypeError(f"unknown permittivity model: {model!r}")


def ratios(system: MaterialSystem, xi: float) -> RatioSet:
    """Permittivity ratios of the three-region configuration at one xi."""
    e3x = permittivity_at(system.eps3x, xi)
    return RatioSet(
        m1=permittivity_at(system.eps1, xi) / e3x,
        m2=permittivity_at(system.eps2, xi) / e3x,
        m3=permittivity_at(system.eps3z, xi) / e3x,
        eps3x=e3x,
    )


def _validate_model(model: PermittivityModel, name: str) -> list[str]:
    issues = []
    if isinstance(model, Constant):
        if not model.value > 0.0:
            issues.append(f"{name}: nonpositive permittivity {model.value}")
    elif isinstance(model, Oscillator):
        for strength, resonance in model.terms:
            if strength < 0.0:
                issues.append(f"{name}: negative oscillator strength {strength}")
            if not resonance > 0.0:
                issues.append(f"{name}: nonpositive resonance {resonance}")
    else:
        issues.append(f"{name}: unknown model type {type(model).__name__}")
    return issues


def validate(system: MaterialSystem) -> list[str]:
    """Check every invariant; an empty report means the system is usable."""
    issues = []
    for name in ("eps1", "eps2", "eps3x", "eps3z"):
        issues.extend(_validate_model(getattr(system, name), name))
    return issues


def require_valid(system: MaterialSystem) -> None:
    issues = validate(system)
    if issues:
        raise ValueError("invalid material system: " + "; ".join(issues))


# -- JSON wire format ---------------------------------------------------------
#
# {"eps1": {"constant": 3.0} | {"oscillator": [[C, omega], ...]}, "eps2": ...,
#  "eps3x": ..., "eps3z": ...}

def _model_from_obj(obj, name: str) -> PermittivityModel:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"{name}: expected a single-key object, got {obj!r}")
    key, payload = next(iter(obj.items()))
    if key == "constant":
        return Constant(float(payload))
    if key == "oscillator":
        return Oscillator([(float(c), float(w)) for c, w in payload])
    raise ValueError(f"{name}: unknown permittivity model key {key!r}")


def _model_to_obj(model: PermittivityModel):
    if isinstance(model, Constant):
        return {"constant": model.value}
    return {"oscillator": [[c, w] for c, w in model.terms]}


def system_from_json(text: str) -> MaterialSystem:
    """Parse a MaterialSystem from its JSON document."""
    doc = json.loads(text)
    missing = [k for k in ("eps1", "eps2", "eps3x", "eps3z") if k not in doc]
    if missing:
        raise ValueError(f"material JSON missing keys: {', '.join(missing)}")
    return MaterialSystem(
        eps1=_model_from_obj(doc["eps1"], "eps1"),
        eps2=_model_from_obj(doc["eps2"], "eps2"),
        eps3x=_model_from_obj(doc["eps3x"], "eps3x"),
        eps3z=_model_from_obj(doc["eps3z"], "eps3z"),
    )


def system_to_json(system: MaterialSystem) -> str:
    return json.dumps({
        "eps1": _model_to_obj(system.eps1),
        "eps2": _model_to_obj(system.eps2),
        "eps3x": _model_to_obj(system.eps3x),
        "eps3z": _model_to_obj(system.eps3z),
    })


def constant_system(e1: float, e2: float, e3x: float, e3z: float) -> MaterialSystem:
    """Convenience constructor for the all-static case."""
    return MaterialSystem(Constant(e1), Constant(e2), Constant(e3x), Constant(e3z))
