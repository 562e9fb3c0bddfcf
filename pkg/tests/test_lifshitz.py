import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from plasmocasimir.errors import ConvergenceError, DomainError
from plasmocasimir.lifshitz import (
    Polarization,
    fresnel,
    gamma_p,
    gamma_perfect_mirror,
    im_mode_function,
    matsubara_term,
    phi_lifshitz,
    phi_lifshitz_sum,
    phi_lifshitz_zero_temperature,
    sigma_lifshitz_intermediate,
    sigma_lifshitz_lowT,
    sigma_photonic_lowT,
    sigma_propagating_lowT,
    surface_mode_count,
)
from plasmocasimir.plasmon_energy import phi
from plasmocasimir.plasmon_entropy import Regime, sigma_asymptote
from plasmocasimir.quadrature import STRICT_CONFIG
from plasmocasimir.scales import ALEPH
from plasmocasimir.specfun import ZETA3


@pytest.fixture(autouse=True)
def mp_precision():
    with mpmath.workdps(30):
        yield


def naive_fresnel(p, X, kappa, lam):
    """Textbook forms with the plasma permittivity 1 + (2 pi lam / X)^2."""
    amp2 = (2 * math.pi * lam) ** 2
    km = math.sqrt(kappa * kappa + amp2)
    if p is Polarization.TE:
        return (kappa - km) / (kappa + km)
    eps = 1 + amp2 / (X * X)
    return (eps * kappa - km) / (eps * kappa + km)


def sigma_c(lam, tau):
    return 12 * (lam * tau) ** 2


# ---- Matsubara bookkeeping


def test_matsubara_terms():
    """[TRIVIAL] X_0 = 0 with weight 1/2, X_n = 2 pi n lam tau with weight 1."""
    t0 = matsubara_term(0, 2.0, 0.1)
    assert (t0.X, t0.weight) == (0.0, 0.5)
    t3 = matsubara_term(3, 2.0, 0.1)
    assert t3.X == pytest.approx(2 * math.pi * 3 * 0.2, rel=1e-15) and t3.weight == 1.0
    with pytest.raises(DomainError):
        matsubara_term(-1, 1.0, 1.0)


# ---- Fresnel coefficients


@given(st.sampled_from(list(Polarization)), st.floats(1e-3, 50.0), st.floats(0.0, 50.0), st.floats(1e-3, 100.0))
def test_fresnel_matches_textbook_form_property(p, X, excess, lam):
    kappa = X + excess
    value = fresnel(p, X, kappa, lam)
    reference = naive_fresnel(p, X, kappa, lam)
    assert value == pytest.approx(reference, rel=1e-9, abs=1e-15)
    assert abs(value) <= 1.0


def test_fresnel_transparency_limit():
    """[DERIVED] at large X = kappa both coefficients vanish as (2 pi lam)^2 / (4 X^2), with opposite signs."""
    lam, X = 0.3, 1e8
    expected = (2 * math.pi * lam) ** 2 / (4 * X * X)
    assert fresnel(Polarization.TM, X, X, lam) == pytest.approx(expected, rel=1e-9)
    assert fresnel(Polarization.TE, X, X, lam) == pytest.approx(-expected, rel=1e-9)


def test_fresnel_perfect_mirror():
    """[TRIVIAL] large lam: r_TM -> 1, r_TE -> -1."""
    assert fresnel(Polarization.TM, 1.0, 1.0, 1e6) == pytest.approx(1.0, abs=1e-6)
    assert fresnel(Polarization.TE, 1.0, 1.0, 1e6) == pytest.approx(-1.0, abs=1e-6)


def test_fresnel_special_point():
    """[DERIVED] X = kappa = 2 pi lam gives eps = 2, kappa_m = sqrt 2 kappa, r_TM = (2 - sqrt 2)/(2 + sqrt 2)."""
    lam = 0.7
    amp = 2 * math.pi * lam
    expected = (2 - math.sqrt(2)) / (2 + math.sqrt(2))
    assert fresnel(Polarization.TM, amp, amp, lam) == pytest.approx(expected, rel=1e-14)


def test_fresnel_tm_zero_frequency():
    """[TRIVIAL] the plasma model reflects TM perfectly at X = 0."""
    assert fresnel(Polarization.TM, 0.0, 3.0, 0.01) == 1.0


def test_fresnel_domain():
    with pytest.raises(DomainError):
        fresnel(Polarization.TE, -1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        fresnel(Polarization.TM, 2.0, 1.0, 1.0)


# ---- Gamma


def test_perfect_mirror_gamma():
    """[DERIVED] termwise series: -sum 1/(4 n^3) = -zeta(3)/4."""
    series = -math.fsum(1 / (4 * n**3) for n in range(1, 200000))
    assert series == pytest.approx(-ZETA3 / 4, abs=1e-11)
    assert gamma_perfect_mirror(0.0) == pytest.approx(-ZETA3 / 4, abs=1e-12)
    assert gamma_p(Polarization.TM, 0.0, 1.0) == pytest.approx(-ZETA3 / 4, abs=1e-12)


def test_gamma_far_frequency():
    """[TRIVIAL] |Gamma(50)| < 1e-40."""
    for p in Polarization:
        assert abs(gamma_p(p, 50.0, 1.0)) < 1e-40


def test_gamma_te_transparent_limit():
    """[DERIVED] r_TE vanishes with lam, and Gamma_TE(0) with it.

    r_TE ~ -(2 pi lam)^2 / (4 kappa^2), so Gamma_TE(0) ~ lam^2 up to a logarithm.
    """
    small = [abs(gamma_p(Polarization.TE, 0.0, lam)) for lam in (1e-2, 1e-3, 1e-4, 1e-5)]
    assert all(a > b for a, b in zip(small[:-1], small[1:]))
    for a, b in zip(small[:-1], small[1:]):
        assert 50 < a / b < 200
    assert small[-1] < 1e-9


@pytest.mark.parametrize("p", list(Polarization))
@pytest.mark.parametrize("X, lam", [(0.0, 0.1), (0.3, 1.0), (2.0, 0.05), (5.0, 10.0)])
def test_gamma_against_mpmath(p, X, lam):
    """[DERIVED] semi-infinite integral with the textbook coefficients at 30 digits."""
    amp2 = (2 * mpmath.pi * lam) ** 2

    def f(k):
        km = mpmath.sqrt(k * k + amp2)
        if p is Polarization.TE or X == 0:
            r = (k - km) / (k + km) if p is Polarization.TE else 1
        else:
            eps = 1 + amp2 / mpmath.mpf(X) ** 2
            r = (eps * k - km) / (eps * k + km)
        return k * mpmath.log(1 - r * r * mpmath.exp(-2 * k))

    ref = float(mpmath.quad(f, [X, X + 1, X + 5, mpmath.inf]))
    assert gamma_p(p, X, lam) == pytest.approx(ref, rel=1e-10)


@given(st.sampled_from(list(Polarization)), st.floats(0.0, 30.0), st.floats(1e-3, 100.0))
def test_gamma_negative_property(p, X, lam):
    assert gamma_p(p, X, lam) < 0


def test_gamma_exponential_decay():
    """|Gamma(X)| falls like e^{-2X} up to power-law factors from r_p^2."""
    for p in Polarization:
        values = [abs(gamma_p(p, X, 1.0)) for X in (10.0, 20.0, 30.0)]
        for a, b in zip(values[:-1], values[1:]):
            slope = math.log(b / a) / 10.0
            assert -2.5 < slope < -2.0


# ---- free energy


def phi_zero_temperature_oracle(lam):
    """-(aleph/pi) sum_p int_0^inf Gamma_p(X) dX by nested quadrature with textbook coefficients."""

    def gamma(p, X):
        return quad(
            lambda k: k * math.log1p(-naive_fresnel(p, X, k, lam) ** 2 * math.exp(-2 * k)),
            X,
            X + 25,
            epsabs=0,
            epsrel=1e-12,
            limit=200,
        )[0]

    total = 0.0
    for p in Polarization:
        total += quad(lambda X: gamma(p, X), 1e-12, 30.0, epsabs=0, epsrel=1e-10, limit=200, points=[1.0, 5.0])[0]
    return -ALEPH / math.pi * total


@pytest.mark.parametrize("lam", [0.1, 2.0])
def test_zero_temperature_against_nested_quadrature(lam):
    """[DERIVED] the continuous-frequency limit from an unswapped double integral."""
    assert phi_lifshitz_zero_temperature(lam) == pytest.approx(phi_zero_temperature_oracle(lam), rel=1e-8)


def test_perfect_mirror_limit():
    """[DERIVED] phi_Lif -> 1 at large distance and zero temperature."""
    values = [phi_lifshitz(lam, 0.0) for lam in (10.0, 100.0, 1000.0)]
    assert values[0] < values[1] < values[2] < 1.0
    assert values[2] == pytest.approx(1.0, abs=1e-3)


def test_low_temperature_continuity():
    """The Matsubara sum at small tau approaches the continuous limit."""
    assert phi_lifshitz(1.0, 1e-3) == pytest.approx(phi_lifshitz(1.0, 0.0), rel=1e-6)


def test_short_distance_plasmon_dominance():
    """[PAPER] (0.01, 0.018): plasmonic phi within 5% of phi_Lif."""
    full = phi_lifshitz(0.01, 0.018)
    assert abs(full - phi(0.01, 0.018).phi) / abs(full) < 5e-2


@settings(max_examples=12)
@given(st.floats(-2.0, 1.7), st.floats(-3.0, 0.0))
def test_phi_lifshitz_positive_property(log_lam, log_tau):
    assert phi_lifshitz(10.0**log_lam, 10.0**log_tau) > 0


@pytest.mark.parametrize("lam, tau", [(0.5, 0.05), (5.0, 0.018), (0.02, 0.1)])
def test_matsubara_truncation(lam, tau):
    """Doubling the number of terms changes the sum by less than rel_tol."""
    auto = phi_lifshitz_sum(lam, tau)
    doubled = phi_lifshitz_sum(lam, tau, n_terms=2 * auto.terms)
    assert abs(doubled.value - auto.value) <= 1e-10 * abs(auto.value)


def test_lifshitz_domain():
    with pytest.raises(DomainError):
        phi_lifshitz(1.0, -1.0)
    with pytest.raises(DomainError):
        phi_lifshitz_sum(1.0, 0.0)
    with pytest.raises(DomainError):
        phi_lifshitz_zero_temperature(0.0)
    with pytest.raises(DomainError):
        gamma_p(Polarization.TE, -1.0, 1.0)


# ---- entropy at real frequencies


def test_sigma_intermediate():
    """[PAPER] (10, 1e-3) against sigma_C [1 + 1/(pi lam) - 8 pi^2 tau/(45 zeta(3)) (pi lam + 2)/3], 5%."""
    lam, tau = 10.0, 1e-3
    closed = sigma_c(lam, tau) * (1 + 1 / (math.pi * lam) - 8 * math.pi**2 * tau / (45 * ZETA3) * (math.pi * lam + 2) / 3)
    assert sigma_lifshitz_intermediate(lam, tau) == pytest.approx(closed, rel=1e-14)
    assert sigma_lifshitz_lowT(lam, tau) == pytest.approx(closed, rel=5e-2)


def sigma_from_phi_lifshitz(lam, tau):
    """2/(zeta(3) aleph lam) d phi_Lif / d tau by Richardson-extrapolated central differences."""
    h = 1e-2 * tau

    def f(x):
        return phi_lifshitz(lam, x, STRICT_CONFIG)

    d1 = (f(tau + h) - f(tau - h)) / (2 * h)
    d2 = (f(tau + 2 * h) - f(tau - 2 * h)) / (4 * h)
    return 2 / (ZETA3 * ALEPH * lam) * (4 * d1 - d2) / 3


@pytest.mark.parametrize("lam, tau", [(1.0, 0.05), (0.1, 0.2)])
def test_sigma_thermodynamic_consistency(lam, tau):
    """[DERIVED] real-frequency entropy against the temperature derivative of the Matsubara sum."""
    assert sigma_lifshitz_lowT(lam, tau) == pytest.approx(sigma_from_phi_lifshitz(lam, tau), rel=1e-4)


def test_te_evanescent_sector_is_real():
    """[PAPER] below the plasma frequency the TE evanescent logarithm has no imaginary part."""
    lam = 1.0
    amp = 2 * math.pi * lam
    omegas = np.linspace(0.01, 0.99, 25) * amp
    kappas = np.geomspace(1e-6, 50.0, 400)
    for omega in omegas:
        km = np.sqrt(kappas**2 + amp**2 - omega**2 + 0j)
        r = (kappas - km) / (kappas + km)
        values = np.log(1 - r * r * np.exp(-2 * kappas))
        assert np.all(values.imag == 0.0)


def test_mode_function_small_frequency_limits():
    """Surface modes start at omega = 0 through MINUS; the measure is finite and grows with omega."""
    counts = [surface_mode_count(w, 1.0) for w in (0.1, 0.5, 2.0)]
    assert all(math.isfinite(c) for c in counts)
    assert surface_mode_count(0.0, 1.0) == 0.0
    assert im_mode_function(0.0, 1.0) == 0.0


# ---- closed forms


def test_photonic_entropy_leading_term():
    """[PAPER] the propagating photons carry twice the perfect-mirror entropy at leading order."""
    lam = 10.0
    tau = 1e-9
    assert sigma_photonic_lowT(lam, tau) / sigma_c(lam, tau) == pytest.approx(2.0, rel=1e-6)
    assert sigma_photonic_lowT(lam, 0.0) == 0.0


def test_closed_form_ledger_identity():
    """[PAPER] plasmonic intermediate entropy + photonic entropy = full entropy, at 100 points."""
    rng = random.Random(99)
    for _ in range(100):
        lam = 10 ** rng.uniform(0.5, 2.5)
        tau = 10 ** rng.uniform(-6, -1) / lam
        total = sigma_asymptote(Regime.INTERMEDIATE, lam, tau) + sigma_photonic_lowT(lam, tau)
        assert abs(total - sigma_lifshitz_intermediate(lam, tau)) <= 1e-12 * abs(sigma_lifshitz_intermediate(lam, tau))


def test_propagating_entropy_includes_plasmon():
    """All propagating waves: photons plus the propagating plasmon, which contributes -sigma_C."""
    lam, tau = 20.0, 1e-4
    difference = sigma_photonic_lowT(lam, tau) - sigma_propagating_lowT(lam, tau)
    assert difference == pytest.approx(sigma_c(lam, tau), rel=1e-12)


def test_matsubara_sum_refuses_hopeless_term_count():
    with pytest.raises(ConvergenceError):
        phi_lifshitz(1.0, 1e-30)
    with pytest.raises(ConvergenceError):
        phi_lifshitz_sum(0.01, 1e-4, max_terms=1000)
