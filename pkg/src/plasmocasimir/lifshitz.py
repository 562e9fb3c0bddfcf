"""Full Casimir free energy and entropy of two plasma-model plates.

The free energy uses the Matsubara sum over imaginary frequencies

    phi_Lif = -2 aleph lam tau sum_p sum'_n Gamma_p(2 pi n lam tau),

with ``Gamma_p(X) = int_X^inf kappa ln(1 - r_p^2 exp(-2 kappa)) dkappa``. At
``tau = 0`` the sum becomes an integral over a continuous frequency.

The entropy at low temperature is also available as an integral over real
frequencies, split into propagating waves and evanescent surface plasmons.
Closed forms for its intermediate-distance limit live here as well.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .dispersion import BRANCHES, g, g_array, g_infinity
from .errors import ConvergenceError, DomainError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate_finite
from .scales import ALEPH
from .specfun import ZETA3

# Gamma_p(X) is integrated over [X, X + _KAPPA_SPAN]; exp(-2 * 20) is far below double precision
_KAPPA_SPAN = 20.0
# Matsubara frequencies beyond this contribute less than exp(-80)
_X_MAX = 40.0


class Polarization(enum.Enum):
    TE = "TE"
    TM = "TM"


@dataclass(frozen=True)
class MatsubaraTerm:
    n: int
    X: float
    weight: float


def matsubara_term(n: int, lam: float, tau: float) -> MatsubaraTerm:
    if n < 0:
        raise DomainError(f"Matsubara index must be non-negative, got {n!r}")
    return MatsubaraTerm(n, 2 * math.pi * n * lam * tau, 0.5 if n == 0 else 1.0)


def fresnel(p: Polarization, X: float, kappa: float, lam: float) -> float:
    """Reflection coefficient at imaginary frequency ``X`` and decay constant ``kappa``.

    Written in forms free of cancellation. For TM at ``X = 0`` the plasma
    model gives ``r = 1``.
    """
    if X < 0:
        raise DomainError(f"X must be non-negative, got {X!r}")
    # kappa^2 = X^2 + K^2 at imaginary frequency
    if kappa < X:
        raise DomainError(f"kappa = {kappa!r} is below X = {X!r}")
    amp2 = (2 * math.pi * lam) ** 2
    km = math.sqrt(kappa * kappa + amp2)
    if p is Polarization.TE:
        return -amp2 / (kappa + km) ** 2
    if X == 0.0:
        return 1.0
    x2 = X * X
    numerator = amp2 * (kappa * kappa - x2 + kappa * km)
    return numerator / ((kappa + km) * ((x2 + amp2) * kappa + x2 * km))


def gamma_p(p: Polarization, X: float, lam: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """int_X^inf kappa ln(1 - r_p^2 e^{-2 kappa}) dkappa, which is always negative."""
    if X < 0:
        raise DomainError(f"X must be non-negative, got {X!r}")
    amp = 2 * math.pi * lam

    def integrand(kappa):
        r = fresnel(p, X, kappa, lam)
        return kappa * math.log1p(-r * r * math.exp(-2.0 * kappa))

    return integrate_finite(integrand, X, X + _KAPPA_SPAN, cfg, points=(X + amp, X + 1.0, X + 5.0))


def gamma_perfect_mirror(X: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Gamma for ``r^2 = 1``; equals ``-zeta(3)/4`` at ``X = 0``."""
    return integrate_finite(
        lambda k: k * math.log1p(-math.exp(-2.0 * k)), X, X + _KAPPA_SPAN, cfg, points=(X + 1.0, X + 5.0)
    )


@dataclass(frozen=True)
class MatsubaraSum:
    value: float
    terms: int


def phi_lifshitz_sum(
    lam: float,
    tau: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    n_terms: int | None = None,
    max_terms: int = 500_000,
) -> MatsubaraSum:
    """Matsubara sum for ``tau > 0`` with its term count.

    Terms are added in ascending ``n`` with compensated summation. Unless
    ``n_terms`` fixes the count, the sum stops once the geometric tail bound
    drops below ``cfg.rel_tol`` times the partial sum.
    """
    if not lam > 0:
        raise DomainError(f"scaled distance must be positive, got {lam!r}")
    if not tau > 0:
        raise DomainError("the Matsubara sum needs tau > 0; use phi_lifshitz for tau = 0")
    t = lam * tau
    # no sum has stopped below X = 5; refuse up front rather than grind to max_terms
    if n_terms is None and 5.0 / (2 * math.pi * t) > max_terms:
        raise ConvergenceError(
            f"lam * tau = {t!r} needs more than {max_terms} Matsubara terms; use tau = 0 or raise max_terms"
        )
    # successive terms shrink at least by this ratio once X exceeds the material scales
    ratio = math.exp(-4 * math.pi * t)
    tail_factor = 1.0 / (-math.expm1(-4 * math.pi * t))
    terms = []
    n = 0
    while True:
        if n_terms is not None and n >= n_terms:
            break
        if n >= max_terms:
            raise ConvergenceError(f"Matsubara sum not converged after {max_terms} terms", math.fsum(terms))
        m = matsubara_term(n, lam, tau)
        term = m.weight * (gamma_p(Polarization.TE, m.X, lam, cfg) + gamma_p(Polarization.TM, m.X, lam, cfg))
        terms.append(term)
        n += 1
        if n_terms is None:
            if m.X > _X_MAX:
                break
            tail = abs(term) * tail_factor * ratio
            # cheap check against the first term, confirmed against the full sum
            if n > 1 and tail < cfg.rel_tol * abs(terms[0]) and tail < cfg.rel_tol * abs(math.fsum(terms)):
                break
    return MatsubaraSum(-2.0 * ALEPH * t * math.fsum(terms), len(terms))


def phi_lifshitz_zero_temperature(lam: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Continuous-frequency limit of the Matsubara sum.

    ``lam tau sum'_n F(2 pi n lam tau) -> (1 / 2 pi) int_0^inf F(X) dX``, and
    swapping the order of integration with ``X = kappa w`` gives
    ``-(aleph / pi) sum_p int_0^inf kappa^2 int_0^1 ln(1 - r_p^2 e^{-2 kappa}) dw dkappa``.
    """
    if not lam > 0:
        raise DomainError(f"scaled distance must be positive, got {lam!r}")
    amp = 2 * math.pi * lam

    def inner(kappa):
        damping = math.exp(-2.0 * kappa)
        total = 0.0
        for p in Polarization:
            total += integrate_finite(
                lambda w: math.log1p(-fresnel(p, kappa * w, kappa, lam) ** 2 * damping), 0.0, 1.0, cfg
            )
        return kappa * kappa * total

    outer = integrate_finite(inner, 0.0, _X_MAX, cfg, points=(amp, 1.0, 5.0))
    return -ALEPH / math.pi * outer


def phi_lifshitz(lam: float, tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Full Casimir correction factor; positive means attraction."""
    if tau < 0:
        raise DomainError(f"scaled temperature must be non-negative, got {tau!r}")
    if tau == 0.0:
        return phi_lifshitz_zero_temperature(lam, cfg)
    return phi_lifshitz_sum(lam, tau, cfg).value


# ---------------------------------------------------------------- real frequencies


def _reflection_real_frequency(p: Polarization, omega: float, y: float, amp: float) -> complex:
    """r_p at real frequency ``omega`` for a propagating wave with ``kappa = -i y``."""
    kappa = -1j * y
    km = math.sqrt(amp * amp - y * y) if y < amp else -1j * math.sqrt(y * y - amp * amp)
    if p is Polarization.TE:
        return (kappa - km) / (kappa + km)
    eps = 1.0 - (amp / omega) ** 2
    return (eps * kappa - km) / (eps * kappa + km)


def _round_trip(p: Polarization, omega: float, y: float, amp: float) -> complex:
    r = _reflection_real_frequency(p, omega, y, amp)
    return r * r * cmath.exp(2j * y)


def _resonances(p: Polarization, omega: float, amp: float) -> list[float]:
    """Points in ``(0, min(omega, amp))`` where the round trip factor equals 1.

    There ``|r| = 1`` and ``ln(1 - r^2 e^{2iy})`` jumps by ``pi``; these are the
    guided modes and become quadrature breakpoints.
    """
    top = min(omega, amp)
    if top <= 0:
        return []
    ys = np.linspace(0.0, top, 401)[1:-1]
    im = np.array([_round_trip(p, omega, y, amp).imag for y in ys])
    roots = []
    for i in np.nonzero(np.sign(im[:-1]) != np.sign(im[1:]))[0]:
        a, b = ys[i], ys[i + 1]
        root = brentq(lambda y: _round_trip(p, omega, y, amp).imag, a, b, xtol=1e-15)
        if _round_trip(p, omega, root, amp).real > 0:
            roots.append(root)
    return roots


def im_propagating(p: Polarization, omega: float, lam: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Im int_0^omega y ln(1 - r_p^2 e^{2iy}) dy on the principal branch."""
    if omega <= 0:
        return 0.0
    amp = 2 * math.pi * lam

    def integrand(y):
        return y * cmath.phase(1.0 - _round_trip(p, omega, y, amp))

    points = [amp] + _resonances(p, omega, amp)
    return integrate_finite(integrand, 0.0, omega, cfg, points=points)


def surface_mode_count(omega: float, lam: float) -> float:
    """Weighted z-measure ``sum_a c_a |{z > 0 : g_a(z) < omega}|``.

    Each branch alone has infinite measure once ``omega`` exceeds the common
    limit ``g_inf``; that constant reference is subtracted per branch and
    drops out of the weighted sum because ``sum_a c_a = 0``.
    """
    if omega <= 0:
        return 0.0
    amp = 2 * math.pi * lam
    g_inf = g_infinity(lam)
    reference = omega > g_inf
    z_lo = 1e-4 * min(1.0, omega**4 / amp**2, omega**2 / amp)
    z_hi = max(1e4, 1e3 * amp * amp)
    zs = np.logspace(math.log10(z_lo), math.log10(z_hi), 1601)
    total = 0.0
    for branch in BRANCHES:
        below = g_array(branch, zs, lam) < omega
        # the indicator just above z = 0 follows from g_a(0)
        start_inside = g(branch, 0.0, lam) < omega
        edges = [0.0]
        inside = [start_inside]
        flips = np.nonzero(below[:-1] != below[1:])[0]
        for i in flips:
            root = brentq(lambda z: g(branch, z, lam) - omega, zs[i], zs[i + 1], xtol=1e-300, rtol=8.9e-16)
            edges.append(root)
            inside.append(bool(below[i + 1]))
        if below[0] != start_inside:
            # a crossing below the grid; resolve it on (0, z_lo]
            root = brentq(lambda z: g(branch, z, lam) - omega, 1e-300, zs[0], xtol=1e-300, rtol=8.9e-16)
            edges.insert(1, root)
            inside.insert(1, bool(below[0]))
        measure = 0.0
        for j, state in enumerate(inside):
            if state == reference:
                continue
            right = edges[j + 1] if j + 1 < len(edges) else None
            if right is None:
                raise ConvergenceError("mode count did not settle to its large-z limit")
            length = right - edges[j]
            measure += length if state else -length
        total += branch.coefficient * measure
    return total


def im_mode_function(omega: float, lam: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Im sum_p M_p(omega): propagating waves of both polarizations plus TM surface modes.

    The TE evanescent part is real. The TM evanescent part contributes
    ``-pi/2`` times the weighted surface-mode measure.
    """
    propagating = im_propagating(Polarization.TE, omega, lam, cfg) + im_propagating(Polarization.TM, omega, lam, cfg)
    return propagating - 0.5 * math.pi * surface_mode_count(omega, lam)


def sigma_lifshitz_lowT(lam: float, tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Full entropy factor from the real-frequency integral.

    ``-(4 / (pi zeta(3))) int_0^inf x / sinh^2 x * Im sum_p M_p(2 x lam tau) dx``.
    The weight is below 1e-33 beyond ``x = 40``.
    """
    if not (lam > 0 and tau > 0):
        raise DomainError("need lam > 0 and tau > 0")
    t = lam * tau

    def integrand(x):
        return x / math.sinh(x) ** 2 * im_mode_function(2.0 * x * t, lam, cfg)

    value = integrate_finite(integrand, 1e-12, 40.0, cfg, points=(1.0, 5.0))
    return -4.0 / (math.pi * ZETA3) * value


def _sigma_c_low(lam: float, tau: float) -> float:
    return 12.0 * (lam * tau) ** 2


def sigma_propagating_lowT(lam: float, tau: float) -> float:
    """Entropy of all propagating waves, including the propagating plasmon, for ``lam tau << 1``."""
    return _sigma_c_low(lam, tau) * (1.0 - 8 * math.pi**2 * tau / (45 * ZETA3) * (2 + math.pi * lam) / 3)


def sigma_photonic_lowT(lam: float, tau: float) -> float:
    """Entropy of the propagating photons alone, for ``lam tau << 1`` and ``tau << 1``.

    The propagating plasmon contributes ``-sigma_C`` in this limit and is
    removed from :func:`sigma_propagating_lowT`.
    """
    return _sigma_c_low(lam, tau) * (2.0 - 8 * math.pi**2 * tau / (45 * ZETA3) * (2 + math.pi * lam) / 3)


def sigma_lifshitz_intermediate(lam: float, tau: float) -> float:
    """Full entropy factor for ``1 << lam << 1/tau``."""
    return _sigma_c_low(lam, tau) * (
        1.0 + 1.0 / (math.pi * lam) - 8 * math.pi**2 * tau / (45 * ZETA3) * (math.pi * lam + 2) / 3
    )
