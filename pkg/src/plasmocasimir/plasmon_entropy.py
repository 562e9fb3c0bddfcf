"""Surface-plasmon contribution to the Casimir entropy.

The entropy per area is ``S_C(L) * sigma(lam, tau)`` with
``S_C = zeta(3) k_B / (8 pi L^2)``. ``sigma_integral`` evaluates the entropy
directly from mode occupations; ``sigma_from_theta`` differentiates the
thermal free energy numerically and serves as an independent check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .dispersion import ModeBranch, g, z_plus
from .errors import DomainError
from .plasmon_energy import _thermal_scales, branch_kernel_offsets, theta
from .quadrature import DEFAULT_CONFIG, STRICT_CONFIG, QuadratureConfig, integrate_finite, integrate_split
from .scales import ALEPH, MaterialParams, casimir_entropy
from .specfun import ZETA3, ZETA5, L_combination, entropy_kernel, entropy_kernel_difference, log1mexp


@dataclass(frozen=True)
class EntropyResult:
    sigma: float
    absolute: float | None = None


def _check(lam: float, tau: float) -> None:
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError(f"scaled distance must be positive, got {lam!r}")
    if not (tau > 0 and math.isfinite(tau)):
        raise DomainError(f"entropy needs tau > 0, got {tau!r}")


def sigma_integral(
    lam: float, tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG, material: MaterialParams | None = None
) -> EntropyResult:
    """Scaled plasmonic entropy from the occupation-number integral."""
    _check(lam, tau)
    t = lam * tau
    zp = z_plus(lam)

    def weighted(z):
        return branch_kernel_offsets(entropy_kernel, entropy_kernel_difference, z, lam, t)

    propagating = integrate_finite(lambda z: entropy_kernel(g(ModeBranch.PLUS, z, lam) / t), -zp, 0.0, cfg)
    evanescent = integrate_split(weighted, 0.0, lam, cfg, _thermal_scales(lam, tau))
    edge = math.sqrt(zp) / t
    bracket = 0.5 * (propagating + evanescent) + 3.0 * t * t * L_combination(edge) + zp * log1mexp(edge)
    sigma = -4.0 / ZETA3 * bracket
    absolute = None
    if material is not None:
        absolute = casimir_entropy(lam * material.plasma_wavelength) * sigma
    return EntropyResult(sigma, absolute)


def sigma_from_theta(lam: float, tau: float, cfg: QuadratureConfig = STRICT_CONFIG, rel_step: float = 1e-4) -> float:
    """Entropy as ``2 / (zeta(3) aleph lam) * d theta / d tau``.

    Central differences at steps ``h`` and ``2h`` (``h = rel_step * tau``)
    are combined by one Richardson step. ``theta`` must be accurate well
    beyond ``rel_step`` for this to work, hence the strict default config.
    """
    _check(lam, tau)
    if tau < 1e-8:
        raise DomainError(f"finite-difference step underflows for tau = {tau!r}; use sigma_integral")
    h = rel_step * tau

    def th(x):
        return theta(lam, x, cfg)

    d1 = (th(tau + h) - th(tau - h)) / (2 * h)
    d2 = (th(tau + 2 * h) - th(tau - 2 * h)) / (4 * h)
    derivative = (4 * d1 - d2) / 3
    return 2.0 / (ZETA3 * ALEPH * lam) * derivative


# below this value of lam tau the low-temperature form 12 (lam tau)^2 is used
PERFECT_CROSSOVER = 1 / math.sqrt(12)


def sigma_perfect(lam: float, tau: float) -> float:
    """Perfect-mirror entropy factor: ``12 (lam tau)^2`` at low, 1 at high ``lam tau``.

    The two limits are joined where they meet, at ``lam tau = 1/sqrt(12)``.
    This is a reference curve only, not the exact perfect-mirror entropy.
    """
    x = lam * tau
    if x < 0:
        raise DomainError(f"lam * tau must be non-negative, got {x!r}")
    return 12.0 * x * x if x < PERFECT_CROSSOVER else 1.0


class Regime(enum.Enum):
    SHORT_LOW_T = "short-low-t"
    SHORT_HIGH_T = "short-high-t"
    INTERMEDIATE = "intermediate"
    LARGE_T = "large-t"


def sigma_asymptote(regime: Regime, lam: float, tau: float) -> float:
    """Closed-form limits of ``sigma``; the caller picks the regime."""
    if not lam > 0 or tau < 0:
        raise DomainError("need lam > 0 and tau >= 0")
    low_t_reference = 12.0 * (lam * tau) ** 2
    if regime is Regime.SHORT_LOW_T:
        correction = 5.0 / math.pi**2 * ZETA5 / ZETA3 * (tau / (math.pi * lam)) ** 2
        return low_t_reference * (1.0 / (math.pi * lam) + correction - 1.0)
    if regime is Regime.SHORT_HIGH_T:
        return 0.5
    if regime is Regime.INTERMEDIATE:
        return low_t_reference * (-1.0 + 1.0 / (lam * math.pi))
    if regime is Regime.LARGE_T:
        return -(math.pi**2) / ZETA3 * (math.log(2 * lam) - 7 * ZETA3 / math.pi**2 + 0.5)
    raise DomainError(f"unknown regime {regime!r}")
