import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from plasmocasimir.errors import ConvergenceError, DomainError
from plasmocasimir.quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    integrate_finite,
    integrate_finite_with_error,
    integrate_log,
    integrate_split,
    integrate_split_with_error,
)


def test_exp_sqrt_integral():
    """[TRIVIAL] integral of e^{-sqrt z} over [0, inf) is 2."""
    assert integrate_split(lambda z: math.exp(-math.sqrt(z)), 0.0, 1.0) == pytest.approx(2.0, rel=1e-10)


def test_z_exp_sqrt_integral():
    """[DERIVED] integral of z e^{-sqrt z} over [0, inf) is 2 Gamma(4) = 12.

    The substitution u = sqrt z gives 2 int u^3 e^{-u} du; the arbitrary
    precision integral confirms the value.
    """
    oracle = float(mpmath.quad(lambda z: z * mpmath.exp(-mpmath.sqrt(z)), [0, 1, 100, mpmath.inf]))
    assert oracle == pytest.approx(12.0, rel=1e-12)
    assert 2 * math.gamma(4) == 12.0
    result = integrate_split(lambda z: z * math.exp(-math.sqrt(z)), 0.0, 1.0)
    assert result == pytest.approx(12.0, rel=1e-10)


def test_constant_on_propagating_interval():
    """[TRIVIAL] integral of 1 over [-pi^2, 0] is pi^2."""
    assert integrate_finite(lambda z: 1.0, -math.pi**2, 0.0) == pytest.approx(math.pi**2, rel=1e-14)


def test_split_with_negative_part():
    """[TRIVIAL] the negative interval and the positive tail add up."""
    f = lambda z: 1.0 if z <= 0 else math.exp(-math.sqrt(z))  # noqa: E731
    assert integrate_split(f, -math.pi**2, 0.3) == pytest.approx(math.pi**2 + 2.0, rel=1e-10)


@pytest.mark.parametrize(
    "f, a, b, expected",
    [
        (lambda x: x * x, 0.0, 1.0, 1 / 3),
        (lambda x: 1 / math.sqrt(x), 0.0, 1.0, 2.0),
        (math.sin, 0.0, math.pi, 2.0),
    ],
    ids=["x2", "inverse-sqrt", "sine"],
)
def test_finite_examples(f, a, b, expected):
    """[TRIVIAL] elementary integrals, including an integrable endpoint singularity."""
    assert integrate_finite(f, a, b) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("lam", [1e-3, 0.1, 1.0, 30.0])
def test_split_consistency_against_mpmath(lam):
    """[DERIVED] a dispersion-like integrand with a sqrt z onset and scales 2 pi lam and 1."""
    A = 2 * math.pi * lam

    def f(z):
        s = math.sqrt(z)
        return s / (A + s) * math.exp(-s)

    def mf(z):
        s = mpmath.sqrt(z)
        return s / (A + s) * mpmath.exp(-s)

    oracle = float(mpmath.quad(mf, [0, min(A * A, 1), max(A * A, 1), 100, mpmath.inf]))
    value, err = integrate_split_with_error(f, 0.0, lam)
    assert value == pytest.approx(oracle, rel=1e-10)
    assert err <= 100 * max(1e-10 * abs(value), DEFAULT_CONFIG.abs_tol)


@given(
    st.floats(-3.0, 3.0),
    st.floats(-3.0, 3.0),
    st.floats(0.1, 5.0),
    st.floats(0.1, 5.0),
)
def test_linearity_property(alpha, beta, p, q):
    def f(x):
        return math.exp(-p * x) * math.cos(q * x)

    def h(x):
        return 1.0 / (1.0 + q * x * x)

    combined = integrate_finite(lambda x: alpha * f(x) + beta * h(x), 0.0, 4.0)
    separate = alpha * integrate_finite(f, 0.0, 4.0) + beta * integrate_finite(h, 0.0, 4.0)
    scale = abs(alpha) * integrate_finite(lambda x: abs(f(x)), 0.0, 4.0) + abs(beta) * integrate_finite(h, 0.0, 4.0)
    assert abs(combined - separate) <= 10 * DEFAULT_CONFIG.rel_tol * scale + 1e-14


@pytest.mark.parametrize(
    "f, exact",
    [
        (lambda x: math.log(x) * math.cos(3 * x), float(mpmath.quad(lambda x: mpmath.log(x) * mpmath.cos(3 * x), [0, 1]))),
        (lambda x: x**-0.7, 1 / 0.3),
        (lambda x: 1 / (1e-3 + x * x), float(mpmath.atan(1 / mpmath.sqrt(1e-3)) / mpmath.sqrt(1e-3))),
    ],
    ids=["log-cos", "power-singularity", "narrow-peak"],
)
def test_halving_tolerance_does_not_increase_error(f, exact):
    """Errors against analytic references do not grow as rel_tol is halved."""
    tolerances = [1e-3 / 2**k for k in range(0, 12)]
    errors = [abs(integrate_finite(f, 0.0, 1.0, QuadratureConfig(rel_tol=r, abs_tol=0.0)) - exact) for r in tolerances]
    roundoff = 1e-14 * abs(exact)
    for coarse, fine in zip(errors[:-1], errors[1:]):
        assert fine <= coarse + roundoff


def test_log_variable_integral():
    """[DERIVED] integral of u e^{-u} over (0, 40] is 1 - 41 e^{-40}."""
    value, _ = integrate_log(lambda u: u * math.exp(-u), [1.0], 40.0)
    assert value == pytest.approx(1 - 41 * math.exp(-40), rel=1e-12)


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(abs_tol=-1.0)
    with pytest.raises(DomainError):
        QuadratureConfig(max_subdivisions=5)
    with pytest.raises(DomainError):
        QuadratureConfig(tail_cut_exponent=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(rel_tol=1e-15, abs_tol=0.0)
    cfg = DEFAULT_CONFIG.with_tolerances(rel_tol=1e-6)
    assert cfg.rel_tol == 1e-6 and cfg.abs_tol == DEFAULT_CONFIG.abs_tol
    assert DEFAULT_CONFIG.rel_tol == 1e-10 and DEFAULT_CONFIG.abs_tol == 1e-14
    assert DEFAULT_CONFIG.tail_cut_exponent == 34.0


def test_domain_errors():
    with pytest.raises(DomainError):
        integrate_finite(math.sin, 1.0, 0.0)
    with pytest.raises(DomainError):
        integrate_split(math.sin, 1.0, 1.0)
    with pytest.raises(DomainError):
        integrate_split(math.sin, 0.0, 0.0)
    with pytest.raises(DomainError):
        integrate_log(math.sin, [0.0], 1.0)


def test_non_convergence_reports_estimate():
    """An oscillatory integrand with too few subdivisions raises with the estimate attached."""
    cfg = QuadratureConfig(rel_tol=1e-12, abs_tol=0.0, max_subdivisions=10)
    with pytest.raises(ConvergenceError) as info:
        integrate_finite(lambda x: math.sin(1 / x) / x, 1e-4, 1.0, cfg)
    assert info.value.estimate is not None and info.value.error > 0


def test_non_finite_result_raises():
    with pytest.raises(ConvergenceError):
        integrate_finite(lambda x: math.inf, 0.0, 1.0)


def test_empty_interval():
    assert integrate_finite_with_error(math.sin, 2.0, 2.0) == (0.0, 0.0)
