"""Large-separation asymptotics of the plate force.

For separations beyond the absorption wavelengths the static permittivity
ratios m1, m2, m3 fix a dimensionless force factor

    F ~= 3 hbar c / (16 pi^2 a^4 sqrt(eps3x)) * Psi(m1, m2, m3)

    Psi = Int_1^inf p dp [ (1/p^3) rTE1 rTE2 + (1/P^3) rTM1 rTM2 ]
        = Psi1 (TE part, independent of m3) + Psi2 (TM part)

with the reflection factors evaluated at xi = 0.  Psi's sign decides the
force direction: positive attracts, negative repels.

`psi` uses the leading Bose-integral approximation that turns the full
frequency integral into the bare reflection products.  `psi_exact_series`
replaces each product r by its exactly resummed frequency integral,
Li4(r) = sum_k r^k / k^4 (times 3!/3!), which is the exact a^-4 reduction
of the full force for static permittivities; the difference between the
two is bounded by `series_remainder_bound`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .constants import C, HBAR
from .kernels import rte_product, rtm_product
from .lifshitz import ForceResult
from .materials import MaterialSystem, RatioSet, ratios, require_valid
from .quadrature import QuadratureSpec, integrate_p

__all__ = ["PsiBreakdown", "psi", "psi1", "psi2", "psi_exact_series",
           "series_remainder_bound", "force_retarded", "bose_integral"]

_LI4_MAX_TERMS = 50_000


@dataclass(frozen=True)
class PsiBreakdown:
    """Retarded force factor and its TE/TM parts, with quadrature error."""

    psi: float
    psi1: float
    psi2: float
    error_estimate: float
    converged: bool = True


def _check_ms(*ms: float) -> None:
    for m in ms:
        if not m > 0.0:
            raise ValueError("permittivity ratios must be > 0")


def _ratio_set(m1: float, m2: float, m3: float) -> RatioSet:
    return RatioSet(m1=m1, m2=m2, m3=m3, eps3x=1.0)


def _big_p(m3: float, p):
    return np.sqrt((m3 - 1.0 + p * p) / m3)


def _li4(x):
    """Polylogarithm sum_k x^k / k^4 for |x| < 1, elementwise."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0):
        raise ValueError("series argument must satisfy |x| < 1")
    out = np.zeros_like(x)
    term = x.copy()
    for k in range(1, _LI4_MAX_TERMS + 1):
        contrib = term / k ** 4
        out = out + contrib
        if np.all(np.abs(contrib) <= 1e-17 * np.maximum(np.abs(out), 1e-300)):
            return out
        term = term * x
    raise ValueError("reflection product too close to +-1 for series evaluation")


def psi1(m1: float, m2: float, spec: QuadratureSpec | None = None) -> float:
    """TE part; negative iff exactly one plate ratio exceeds 1."""
    _check_ms(m1, m2)
    r = _ratio_set(m1, m2, 1.0)
    return integrate_p(lambda p: rte_product(r, p) / (p * p),
                       spec, vectorized=True).value


def psi2(m1: float, m2: float, m3: float,
         spec: QuadratureSpec | None = None) -> float:
    """TM part; carries essentially all of the anisotropy dependence."""
    _check_ms(m1, m2, m3)
    r = _ratio_set(m1, m2, m3)
    return integrate_p(lambda p: p * rtm_product(r, p) / _big_p(m3, p) ** 3,
                       spec, vectorized=True).value


def psi(m1: float, m2: float, m3: float,
        spec: QuadratureSpec | None = None) -> PsiBreakdown:
    """Combined factor plus its parts; sign decides attraction vs repulsion."""
    _check_ms(m1, m2, m3)
    r = _ratio_set(m1, m2, m3)

    def combined(p):
        return (rte_product(r, p) / (p * p)
                + p * rtm_product(r, p) / _big_p(m3, p) ** 3)

    total = integrate_p(combined, spec, vectorized=True)
    part1 = integrate_p(lambda p: rte_product(r, p) / (p * p),
                        spec, vectorized=True)
    part2 = integrate_p(lambda p: p * rtm_product(r, p) / _big_p(m3, p) ** 3,
                        spec, vectorized=True)
    return PsiBreakdown(
        psi=total.value,
        psi1=part1.value,
        psi2=part2.value,
        error_estimate=total.error_estimate + part1.error_estimate + part2.error_estimate,
        converged=total.converged and part1.converged and part2.converged,
    )


def psi_exact_series(m1: float, m2: float, m3: float,
                     spec: QuadratureSpec | None = None) -> PsiBreakdown:
    """Exact a^-4 reduction of the full force for static permittivities.

    Each reflection product r in the Psi integrand is replaced by
    Li4(r) = sum_k r^k/k^4, which resums the frequency integral exactly
    instead of keeping only its leading term.
    """
    _check_ms(m1, m2, m3)
    r = _ratio_set(m1, m2, m3)

    def part1_f(p):
        return _li4(rte_product(r, p)) / (p * p)

    def part2_f(p):
        return p * _li4(rtm_product(r, p)) / _big_p(m3, p) ** 3

    part1 = integrate_p(part1_f, spec, vectorized=True)
    part2 = integrate_p(part2_f, spec, vectorized=True)
    return PsiBreakdown(
        psi=part1.value + part2.value,
        psi1=part1.value,
        psi2=part2.value,
        error_estimate=part1.error_estimate + part2.error_estimate,
        converged=part1.converged and part2.converged,
    )


def series_remainder_bound(m1: float, m2: float, m3: float,
                           spec: QuadratureSpec | None = None) -> float:
    """Upper bound on |psi - psi_exact_series|.

    Per polarization, |Li4(r) - r| <= sum_{k>=2} |r|^k/k^4
    <= r^2 / (16 (1 - |r|)); the bound is integrated with the same
    measures as Psi itself.
    """
    _check_ms(m1, m2, m3)
    r = _ratio_set(m1, m2, m3)

    def bound_f(p):
        r_te = np.abs(rte_product(r, p))
        r_tm = np.abs(rtm_product(r, p))
        b_te = r_te ** 2 / (16.0 * (1.0 - r_te))
        b_tm = r_tm ** 2 / (16.0 * (1.0 - r_tm))
        return b_te / (p * p) + p * b_tm / _big_p(m3, p) ** 3

    res = integrate_p(bound_f, spec, vectorized=True)
    return res.value + res.error_estimate


def force_retarded(system: MaterialSystem, a: float,
                   spec: QuadratureSpec | None = None) -> ForceResult:
    """Asymptotic force 3 hbar c Psi / (16 pi^2 a^4 sqrt(eps3x)); scales as a^-4."""
    require_valid(system)
    if not system.is_static():
        raise ValueError("retarded limit requires static permittivities")
    if not a > 0.0:
        raise ValueError("separation a must be > 0")
    r = ratios(system, 0.0)
    breakdown = psi(r.m1, r.m2, r.m3, spec)
    pref = 3.0 * HBAR * C / (16.0 * math.pi ** 2 * a ** 4 * math.sqrt(r.eps3x))
    return ForceResult(pref * breakdown.psi, pref * breakdown.error_estimate,
                       a, breakdown.converged)


def bose_integral(m: float, n: int, mode: str = "exact") -> float:
    """The frequency integral (n!/m-normalized) behind the retarded reduction.

    Evaluates Int_0^inf x^n dx / (m e^x - 1): 'approx' returns the leading
    term n!/m, 'exact' sums n! * sum_{k>=1} m^-k k^-(n+1) to machine
    precision (zeta(n+1) closed form at m = 1).
    """
    if n not in (1, 2, 3, 4, 5, 6):
        raise ValueError("n must be an integer in 1..6")
    if mode == "approx":
        if not m > 0.0:
            raise ValueError("m must be > 0")
        return math.factorial(n) / m
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if m < 1.0:
        raise ValueError("exact mode requires m >= 1")
    if m == 1.0:
        return math.factorial(n) * float(zeta(n + 1))
    total = 0.0
    k = 1
    while True:
        term = m ** (-k) / k ** (n + 1)
        total += term
        if term <= 1e-18 * total:
            break
        k += 1
        if k > 10_000_000:  # unreachable for m > 1
            break
    return math.factorial(n) * total
