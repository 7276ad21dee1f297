"""Per-mode reflection kernels and the two polarization dispersion functions.

All quantities live on the imaginary frequency axis where everything is
real.  In terms of the ratios m1, m2, m3 and the momentum variable p >= 1:

    s_i = sqrt(m_i - 1 + p^2)            (plates, both polarizations)
    P   = sqrt((m3 - 1 + p^2) / m3)      (gap medium, TM rate; P = p at m3 = 1)

    g1 = 1 - rTE1*rTE2 * exp(-2 p a xi sqrt(eps3x)/c)     (TE / perpendicular)
    g2 = 1 - rTM1*rTM2 * exp(-2 P a xi sqrt(eps3x)/c)     (TM / parallel)

The differences s_i - p and s_i - m_i*P are evaluated through their
rationalized forms so the reflection factors stay accurate in the large-p
tail where the naive subtraction cancels.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import C
from .materials import RatioSet

__all__ = ["ModePoint", "KernelParams", "PolarizedReflection",
           "kernel_params", "reflection_pair", "g1", "g2",
           "rte_product", "rtm_product"]


@dataclass(frozen=True)
class ModePoint:
    """One (p, xi, a) evaluation point: p >= 1, xi >= 0 rad/s, a > 0 m."""

    p: float
    xi: float
    a: float


@dataclass(frozen=True)
class KernelParams:
    s1: float
    s2: float
    P: float


@dataclass(frozen=True)
class PolarizedReflection:
    """Single-interface reflection factors of the two plates, per polarization."""

    rte1: float
    rte2: float
    rtm1: float
    rtm2: float


def _check_p(p) -> None:
    if np.any(np.asarray(p) < 1.0):
        raise ValueError("momentum variable p must be >= 1")


def kernel_params(r: RatioSet, p) -> KernelParams:
    _check_p(p)
    p = np.asarray(p, dtype=float)
    s1 = np.sqrt(r.m1 - 1.0 + p * p)
    s2 = np.sqrt(r.m2 - 1.0 + p * p)
    P = np.sqrt((r.m3 - 1.0 + p * p) / r.m3)
    return KernelParams(s1=s1, s2=s2, P=P)


def _rte(m, s, p):
    # (s - p)/(s + p) with s - p = (m - 1)/(s + p); exact 0 at m = 1
    return (m - 1.0) / (s + p) ** 2


def _rtm_numerator(m, m3, p):
    # s^2 - m^2 P^2 expanded; avoids the sqrt-difference cancellation at large p
    return (m - 1.0) - m * m / m3 * (m3 - 1.0) + p * p * (1.0 - m * m / m3)


def _rtm(m, m3, s, P, p):
    return _rtm_numerator(m, m3, p) / (s + m * P) ** 2


def reflection_pair(r: RatioSet, p) -> PolarizedReflection:
    _check_p(p)
    p = np.asarray(p, dtype=float)
    k = kernel_params(r, p)
    return PolarizedReflection(
        rte1=_rte(r.m1, k.s1, p),
        rte2=_rte(r.m2, k.s2, p),
        rtm1=_rtm(r.m1, r.m3, k.s1, k.P, p),
        rtm2=_rtm(r.m2, r.m3, k.s2, k.P, p),
    )


def rte_product(r: RatioSet, p):
    """Product of the two TE reflection factors (drives g1)."""
    _check_p(p)
    p = np.asarray(p, dtype=float)
    s1 = np.sqrt(r.m1 - 1.0 + p * p)
    s2 = np.sqrt(r.m2 - 1.0 + p * p)
    return _rte(r.m1, s1, p) * _rte(r.m2, s2, p)


def rtm_product(r: RatioSet, p):
    """Product of the two TM reflection factors (drives g2)."""
    _check_p(p)
    p = np.asarray(p, dtype=float)
    s1 = np.sqrt(r.m1 - 1.0 + p * p)
    s2 = np.sqrt(r.m2 - 1.0 + p * p)
    P = np.sqrt((r.m3 - 1.0 + p * p) / r.m3)
    return _rtm(r.m1, r.m3, s1, P, p) * _rtm(r.m2, r.m3, s2, P, p)


def g1(mode: ModePoint, r: RatioSet):
    """TE dispersion function; 1 when either plate is index matched."""
    if mode.a <= 0.0:
        raise ValueError("separation a must be > 0")
    if mode.xi < 0.0:
        raise ValueError("imaginary frequency xi must be >= 0")
    decay = np.exp(-2.0 * mode.p * mode.a * mode.xi * np.sqrt(r.eps3x) / C)
    return 1.0 - rte_product(r, mode.p) * decay


def g2(mode: ModePoint, r: RatioSet):
    """TM dispersion function; carries all dependence on the anisotropy m3."""
    if mode.a <= 0.0:
        raise ValueError("separation a must be > 0")
    if mode.xi < 0.0:
        raise ValueError("imaginary frequency xi must be >= 0")
    P = np.sqrt((r.m3 - 1.0 + mode.p ** 2) / r.m3)
    decay = np.exp(-2.0 * P * mode.a * mode.xi * np.sqrt(r.eps3x) / C)
    return 1.0 - rtm_product(r, mode.p) * decay
