"""Adaptive quadrature over the semi-infinite domains of the plate integrals.

Both physical axes are mapped onto the unit interval before integration:

    p  in [1, inf)   ->  u = 1/p          in (0, 1]
    xi in [0, inf)   ->  t = xi/(xi + xi_scale)   in [0, 1)

and the unit-interval integrals are evaluated with a globally adaptive
15-point Gauss-Kronrod rule (the embedded 7-point Gauss result supplies
the error estimate, QUADPACK style).  Intervals are subdivided in batches
so that integrands written with numpy are evaluated on whole node arrays
at once.

Integrand callables may be vectorized (ndarray -> ndarray) or plain
scalar functions; vectorization is probed on the first call.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

__all__ = ["QuadratureSpec", "IntegralResult",
           "integrate_unit", "integrate_p", "integrate_xi"]

_EPS = np.finfo(float).eps

# 15-point Kronrod extension of 7-point Gauss on [-1, 1] (QUADPACK dqk15)
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

# all 15 nodes, ascending, with their Kronrod weights and the Gauss weights
# (zero where the node is Kronrod-only)
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class QuadratureSpec:
    """Error-control knobs shared by every integral in the package."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 60

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must be in (0, 1)")
        if not self.abs_tol > 0.0:
            raise ValueError("abs_tol must be > 0")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be >= 10")

    def tighter(self, factor: float = 10.0) -> "QuadratureSpec":
        """Spec for an inner (nested) integral, with more subdivision headroom."""
        return replace(self, rel_tol=self.rel_tol / factor,
                       abs_tol=self.abs_tol / factor,
                       max_subdivisions=max(self.max_subdivisions, 60) * 2)


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool


def _batch_caller(f, vectorized: bool | None = None):
    """Wrap f so it always maps an ndarray of abscissae to an ndarray of values.

    With vectorized=None the first call probes whether f accepts arrays;
    pass an explicit flag when the probe could misfire (e.g. integrands
    that run a nested integral per abscissa).
    """
    state = {"vectorized": vectorized}

    def call(xs: np.ndarray) -> np.ndarray:
        if state["vectorized"] is None:
            try:
                y = np.asarray(f(xs), dtype=float)
                if y.shape == xs.shape or y.ndim == 0:
                    state["vectorized"] = True
            except Exception:
                state["vectorized"] = False
            if state["vectorized"] is None:
                state["vectorized"] = False
        if state["vectorized"]:
            y = np.asarray(f(xs), dtype=float)
            if y.ndim == 0:
                y = np.full_like(xs, float(y))
            return y
        return np.array([float(f(x)) for x in xs])

    return call


def _gk_panels(call, lefts: np.ndarray, rights: np.ndarray):
    """Apply the 15-point rule to a batch of intervals.

    Returns per-interval (value, error) arrays; raises on non-finite
    integrand values, naming the abscissa.
    """
    centers = 0.5 * (lefts + rights)
    halves = 0.5 * (rights - lefts)
    xs = centers[:, None] + halves[:, None] * _NODES[None, :]
    fv = call(xs.ravel()).reshape(xs.shape)
    if not np.all(np.isfinite(fv)):
        bad = np.argwhere(~np.isfinite(fv))[0]
        raise ValueError(
            f"integrand returned a non-finite value at x={xs[tuple(bad)]!r}")
    resk = fv @ _KW
    resg = fv @ _GW
    resabs = np.abs(fv) @ _KW
    resasc = np.abs(fv - 0.5 * resk[:, None]) @ _KW
    values = resk * halves
    resabs = resabs * halves
    resasc = resasc * halves
    raw = np.abs((resk - resg) * halves)
    errors = raw.copy()
    mask = (resasc != 0.0) & (raw != 0.0)
    scaled = 200.0 * raw[mask] / resasc[mask]
    errors[mask] = resasc[mask] * np.minimum(1.0, scaled ** 1.5)
    errors = np.maximum(errors, 50.0 * _EPS * resabs)
    return values, errors


def integrate_unit(f, spec: QuadratureSpec | None = None,
                   vectorized: bool | None = None) -> IntegralResult:
    """Adaptive integral of f over (0, 1); endpoints are never evaluated."""
    spec = spec or QuadratureSpec()
    call = _batch_caller(f, vectorized)

    n_seed = 8
    edges = np.linspace(0.0, 1.0, n_seed + 1)
    lefts = edges[:-1].copy()
    rights = edges[1:].copy()
    values, errors = _gk_panels(call, lefts, rights)
    evaluations = 15 * n_seed
    splits_left = spec.max_subdivisions

    while True:
        total = float(values.sum())
        err_total = float(errors.sum())
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if err_total <= tol:
            return IntegralResult(total, err_total, evaluations, True)
        if splits_left <= 0:
            return IntegralResult(total, err_total, evaluations, False)

        # split the worst intervals accounting for half the current error
        order = np.argsort(errors)[::-1]
        widths = rights - lefts
        splittable = widths[order] > 4.0 * _EPS * np.maximum(np.abs(lefts[order]), 1.0)
        order = order[splittable]
        if order.size == 0:
            return IntegralResult(total, err_total, evaluations, False)
        cumulative = np.cumsum(errors[order])
        n_split = int(np.searchsorted(cumulative, 0.5 * err_total) + 1)
        n_split = min(n_split, order.size, splits_left)
        chosen = order[:n_split]
        splits_left -= n_split

        mids = 0.5 * (lefts[chosen] + rights[chosen])
        new_lefts = np.concatenate([lefts[chosen], mids])
        new_rights = np.concatenate([mids, rights[chosen]])
        new_values, new_errors = _gk_panels(call, new_lefts, new_rights)
        evaluations += 15 * new_lefts.size

        keep = np.ones(lefts.size, dtype=bool)
        keep[chosen] = False
        lefts = np.concatenate([lefts[keep], new_lefts])
        rights = np.concatenate([rights[keep], new_rights])
        values = np.concatenate([values[keep], new_values])
        errors = np.concatenate([errors[keep], new_errors])


def integrate_p(f, spec: QuadratureSpec | None = None,
                vectorized: bool | None = None) -> IntegralResult:
    """Integral of f over p in [1, inf) via u = 1/p; f must decay at least as p^-2."""
    call = _batch_caller(f, vectorized)

    def transformed(u: np.ndarray) -> np.ndarray:
        return call(1.0 / u) / (u * u)

    return integrate_unit(transformed, spec, vectorized=True)


def integrate_xi(f, xi_scale: float, spec: QuadratureSpec | None = None,
                 vectorized: bool | None = None) -> IntegralResult:
    """Integral of f over xi in [0, inf) via t = xi/(xi + xi_scale)."""
    if not xi_scale > 0.0:
        raise ValueError("xi_scale must be > 0")
    call = _batch_caller(f, vectorized)

    def transformed(t: np.ndarray) -> np.ndarray:
        omt = 1.0 - t
        return call(xi_scale * t / omt) * (xi_scale / (omt * omt))

    return integrate_unit(transformed, spec, vectorized=True)
