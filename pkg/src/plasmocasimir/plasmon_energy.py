"""Surface-plasmon contribution to the Casimir free energy.

The free energy per area is ``E_C(L) * phi(lam, tau)`` with
``phi = eta(lam) + theta(lam, tau)``: ``eta`` is the zero-point part and
``theta`` the thermal part. Both are integrals over the dispersion parameter
``z`` of the weighted branch sum ``sum_a c_a (...)``. Individual branch
integrals diverge, so the weighted sum is always formed inside the integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .dispersion import BRANCHES, ModeBranch, branch_offsets, g, g_branch_sum, g_infinity, lower_limit, z_plus
from .errors import DomainError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate_finite, integrate_log, integrate_split
from .scales import ALEPH, MaterialParams, casimir_energy
from .specfun import ZETA3, ZETA5, L_combination, log1mexp, log1mexp_difference

# four-significant-figure coefficients of the short- and long-distance laws for eta
ETA_SHORT_SLOPE = 1.790
ETA_LARGE_SQRT = -74.57
ETA_LARGE_OFFSET = 60.0


@dataclass(frozen=True)
class FreeEnergyResult:
    """Scaled free energy ``phi = eta + theta``.

    ``phi > 0`` is an attractive (negative) interaction energy, ``phi < 0`` a
    repulsive one. ``absolute`` is ``E_C(L) * phi`` in J/m^2 when a material
    was supplied.
    """

    eta: float
    theta: float
    phi: float
    absolute: float | None = None


def _check(lam: float, tau: float = 0.0) -> None:
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError(f"scaled distance must be positive, got {lam!r}")
    if not (tau >= 0 and math.isfinite(tau)):
        raise DomainError(f"scaled temperature must be non-negative, got {tau!r}")


@lru_cache(maxsize=1024)
def eta(lam: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Zero-temperature plasmonic correction factor."""
    _check(lam)
    zp = z_plus(lam)
    propagating = integrate_finite(lambda z: g(ModeBranch.PLUS, z, lam), -zp, 0.0, cfg)
    evanescent = integrate_split(lambda z: g_branch_sum(z, lam), 0.0, lam, cfg)
    return -0.5 * ALEPH * (propagating + evanescent) + ALEPH / 3.0 * zp**1.5


def _thermal_scales(lam: float, tau: float) -> list[float]:
    # sqrt(z) where g_-(z) reaches the thermal energy, and tau itself
    t = lam * tau
    return [t * math.sqrt(2.0 / (2 * math.pi * lam)), tau]


def branch_kernel_offsets(kernel, kernel_difference, z: float, lam: float, t: float) -> float:
    """sum over a = +, - of kernel(g_a/t) - kernel(g_0/t) at z > 0.

    Small offsets go through ``kernel_difference``. Near z = 0 the MINUS
    branch is far below g_0 and is evaluated directly instead.
    """
    g0, d_plus, d_minus = branch_offsets(z, lam)
    x0 = g0 / t
    total = 0.0
    for branch, d in ((ModeBranch.PLUS, d_plus), (ModeBranch.MINUS, d_minus)):
        if abs(d) <= 0.25 * g0:
            total += kernel_difference(x0, d / t)
        else:
            total += kernel(g(branch, z, lam) / t) - kernel(x0)
    return total


def thermal_log_integral(lam: float, tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """sum_a c_a * integral of ln(1 - exp(-g_a/(lam tau))) dz over each branch's domain."""
    t = lam * tau
    zp = z_plus(lam)

    def weighted(z):
        return branch_kernel_offsets(log1mexp, log1mexp_difference, z, lam, t)

    propagating = integrate_finite(lambda z: log1mexp(g(ModeBranch.PLUS, z, lam) / t), -zp, 0.0, cfg)
    evanescent = integrate_split(weighted, 0.0, lam, cfg, _thermal_scales(lam, tau))
    return propagating + evanescent


def theta(lam: float, tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Thermal plasmonic correction factor; exactly zero at ``tau = 0``."""
    _check(lam, tau)
    if tau == 0.0:
        return 0.0
    t = lam * tau
    bulk = thermal_log_integral(lam, tau, cfg)
    return -ALEPH * t * bulk - 2.0 * ALEPH * t**3 * L_combination(math.sqrt(z_plus(lam)) / t)


def phi(
    lam: float, tau: float = 0.0, cfg: QuadratureConfig = DEFAULT_CONFIG, material: MaterialParams | None = None
) -> FreeEnergyResult:
    """Total plasmonic correction factor, optionally with the absolute free energy."""
    e = eta(lam, cfg)
    th = theta(lam, tau, cfg)
    total = e + th
    absolute = None
    if material is not None:
        absolute = casimir_energy(lam * material.plasma_wavelength) * total
    return FreeEnergyResult(e, th, total, absolute)


def _frequency_antiderivative(gval: float, lam: float, tau: float) -> float:
    """2 * integral_0^g (x^2 + 2 x t ln(1 - e^{-x/t})) dx, with t = lam tau."""
    t = lam * tau
    cubic = 2.0 * gval**3 / 3.0
    if t == 0.0:
        return cubic
    return cubic - 4.0 * t**3 * L_combination(gval / t)


def frequency_integral_terms(lam: float, tau: float = 0.0) -> dict[ModeBranch, tuple[float, float]]:
    """Per-branch upper and lower limit contributions of the frequency integral.

    The integral runs from ``g_a`` at the branch's lower end to
    ``g_a(inf) = sqrt(2) pi lam``. Each entry is ``(c_a G(g_inf), -c_a G(g_low))``
    in units of the prefactor of the free energy. The upper terms are equal up
    to ``c_a`` and therefore cancel in the branch sum.
    """
    _check(lam, tau)
    top = _frequency_antiderivative(g_infinity(lam), lam, tau)
    terms = {}
    for branch in BRANCHES:
        low = g(branch, lower_limit(branch, lam), lam)
        c = branch.coefficient
        terms[branch] = (c * top, -c * _frequency_antiderivative(low, lam, tau))
    return terms


def frequency_integral_contribution(lam: float, tau: float = 0.0) -> float:
    """Contribution of the frequency integral to ``phi``.

    Equals ``aleph z_+^{3/2} / 3 - 2 aleph t^3 L(sqrt(z_+)/t)``, the closed-form
    pieces of ``eta`` and ``theta``.
    """
    terms = frequency_integral_terms(lam, tau)
    total = math.fsum(up + low for up, low in terms.values())
    return -0.5 * ALEPH * total


def beta(tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Thermal function of the short-distance expansion of ``theta``.

    Interpolates between ``6 zeta(5) (tau/pi)^4`` at small ``tau`` and
    ``zeta(3)/4`` at large ``tau``.
    """
    if not (tau > 0 and math.isfinite(tau)):
        raise DomainError(f"beta needs tau > 0, got {tau!r}")
    c = math.pi * math.sqrt(2.0) / tau
    flat = 2.0 * log1mexp(c)

    def integrand(u):
        e = math.exp(-u)
        return 2.0 * u * (flat - log1mexp(c * math.sqrt(1.0 + e)) - log1mexp(c * math.sqrt(-math.expm1(-u))))

    value, _ = integrate_log(integrand, [1.0, tau * tau, tau], cfg.tail_cut_exponent, cfg)
    return value


def beta_asymptotic_low(tau: float) -> float:
    return 6.0 * ZETA5 * (tau / math.pi) ** 4


def beta_asymptotic_high(tau: float) -> float:
    return ZETA3 / 4.0


def eta_asymptotic_short(lam: float) -> float:
    return ETA_SHORT_SLOPE * lam


def eta_asymptotic_large(lam: float) -> float:
    return ETA_LARGE_SQRT * math.sqrt(lam) + ETA_LARGE_OFFSET


def theta_asymptotic_short(lam: float, tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Short-distance thermal factor, second order in ``lam``."""
    _check(lam, tau)
    if tau == 0.0:
        return 0.0
    polylog_part = 2.0 * lam * tau**2 / math.pi * L_combination(2 * math.pi * math.sqrt(math.pi * lam) / tau)
    return ALEPH * lam * tau * (polylog_part + beta(tau, cfg))


def theta_asymptotic_intermediate(lam: float, tau: float) -> float:
    """Thermal factor for ``1 << lam`` and ``lam tau << 1``; scales as ``tau^3``."""
    _check(lam, tau)
    return -2.0 * ALEPH * (lam * tau) ** 3 * ZETA3 * (1.0 - 1.0 / (lam * math.pi))


def phi_asymptotic_large(lam: float, tau: float) -> float:
    """Total factor for ``lam tau >> 1``, linear in temperature."""
    _check(lam, tau)
    return -0.5 * ALEPH * math.pi**2 * lam * tau * (math.log(2 * lam) - 7 * ZETA3 / math.pi**2 + 0.5)

