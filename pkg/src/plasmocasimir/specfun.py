"""Polylogarithms on [0, 1], the thermal polylog combination, and Bose factors.

Only real arguments in [0, 1] are ever needed (they appear as exp(-x)), so
``polylog`` uses two expansions:

* ``x <= 1/2``: the defining power series, geometric with ratio <= 1/2;
* ``x > 1/2``: the expansion of Li_n(exp(-w)) in powers of ``w = -ln x``,
  which converges for |w| < 2 pi and here has w <= ln 2.
"""

from __future__ import annotations

import math

from scipy.special import bernoulli

from .errors import DomainError

ZETA2 = math.pi**2 / 6
ZETA3 = 1.2020569031595942
ZETA5 = 1.0369277551433699

_NTERMS = 40


def _zeta_nonpositive(m: int) -> float:
    """zeta(-m) for integer m >= 0."""
    if m == 0:
        return -0.5
    return (-1) ** m * float(_BERNOULLI[m + 1]) / (m + 1)


_BERNOULLI = bernoulli(_NTERMS + 4)
_ZETA_NEG = [_zeta_nonpositive(m) for m in range(_NTERMS + 2)]

# coefficients of (-x)^j, j >= 3, in the small-x expansion of L(x)
_L_COEFFS = [
    (j, _ZETA_NEG[j - 3] * (j - 1) / math.factorial(j)) for j in range(3, _NTERMS) if _ZETA_NEG[j - 3] != 0.0
]


def _direct_series(n: int, x: float) -> float:
    total = 0.0
    xk = x
    k = 1
    while True:
        term = xk / k**n
        total += term
        if term < 1e-18 * total or k > 200:
            return total
        k += 1
        xk *= x


def _log_series(n: int, w: float) -> float:
    """Li_n(exp(-w)) for 0 <= w < 2 pi."""
    if w == 0.0:
        return ZETA2 if n == 2 else ZETA3
    mu = -w
    logw = math.log(w)
    if n == 2:
        total = ZETA2 + mu * (1.0 - logw)
        start = 2
    else:
        total = ZETA3 + ZETA2 * mu + 0.5 * mu * mu * (1.5 - logw)
        start = 3
    term_pow = mu**start / math.factorial(start)
    for k in range(start, _NTERMS):
        z = _ZETA_NEG[k - n]
        if z != 0.0:
            t = z * term_pow
            total += t
            if abs(t) < 1e-18 * abs(total):
                break
        term_pow *= mu / (k + 1)
    return total


def polylog(n: int, x: float) -> float:
    """Li_n(x) for n in {2, 3} and 0 <= x <= 1."""
    if n not in (2, 3):
        raise DomainError(f"polylog order must be 2 or 3, got {n!r}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"polylog argument must lie in [0, 1], got {x!r}")
    if x == 0.0:
        return 0.0
    if x <= 0.5:
        return _direct_series(n, x)
    return _log_series(n, -math.log(x))


def L_combination(x: float) -> float:
    """zeta(3) - Li_3(e^-x) - x Li_2(e^-x).

    Rises monotonically from 0 at x = 0 to zeta(3) as x -> inf. For x <= 1 the
    closed small-x expansion ``x^2 (1 - 2 ln x) / 4 + x^3 / 6 - x^4 / 96 + ...``
    is summed directly, which avoids cancelling three O(1) terms.
    """
    if math.isnan(x) or x < 0:
        raise DomainError(f"L_combination needs x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    if x <= 1.0:
        total = 0.25 * x * x * (1.0 - 2.0 * math.log(x))
        for j, c in _L_COEFFS:
            t = c * (-x) ** j
            total += t
            if abs(t) < 1e-18 * total:
                break
        return total
    if x > 745.0:
        return ZETA3
    q = math.exp(-x)
    total = 0.0
    qk = q
    k = 1
    while qk > 0.0:
        t = qk * (1.0 / k**3 + x / k**2)
        total += t
        if t < 1e-18 * total:
            break
        k += 1
        qk *= q
    return ZETA3 - total


def L_derivative(x: float) -> float:
    """d/dx L(x) = -x ln(1 - e^-x)."""
    if x == 0.0:
        return 0.0
    return -x * log1mexp(x)


def log1mexp(x: float) -> float:
    """ln(1 - e^-x) for x > 0, accurate at both ends."""
    if x < 1e-12:
        if x <= 0.0:
            return -math.inf
        return math.log(x) - 0.5 * x
    if x <= 0.6931471805599453:
        return math.log(-math.expm1(-x))
    return math.log1p(-math.exp(-x))


def entropy_kernel(x: float) -> float:
    """ln(1 - e^-x) - x n(x), with n the Bose-Einstein occupation.

    Both pieces diverge (small x) or underflow (large x) separately.
    """
    if x < 1e-6:
        return math.log(x) - 1.0 - x * x / 24.0
    if x > 34.0:
        return -(1.0 + x) * math.exp(-x)
    return log1mexp(x) - x / math.expm1(x)


def log1mexp_difference(x: float, dx: float) -> float:
    """log1mexp(x + dx) - log1mexp(x), accurate when |dx| << x."""
    if abs(dx) > 0.25 * x or x > 700.0:
        return log1mexp(x + dx) - log1mexp(x)
    return math.log1p(-math.expm1(-dx) / math.expm1(x))


def entropy_kernel_difference(x: float, dx: float) -> float:
    """entropy_kernel(x + dx) - entropy_kernel(x), accurate when |dx| << x."""
    y = x + dx
    if abs(dx) > 0.25 * x or y > 34.0:
        return entropy_kernel(y) - entropy_kernel(x)
    if y < 1e-6 and x < 1e-6:
        return math.log1p(dx / x) - dx * (x + y) / 24.0
    em_x = math.expm1(x)
    em_y = math.expm1(y)
    # y/em_y - x/em_x over a common denominator; em_y - em_x = e^x expm1(dx)
    occupation_part = (dx * em_x - x * math.exp(x) * math.expm1(dx)) / (em_x * em_y)
    return log1mexp_difference(x, dx) - occupation_part


def bose_occupation(ratio: float) -> float:
    """1 / (e^ratio - 1) for ratio = hbar omega / k_B T > 0."""
    if not ratio > 0:
        raise DomainError(f"Bose occupation needs a positive energy ratio, got {ratio!r}")
    if ratio > 745.0:
        return 0.0
    return 1.0 / math.expm1(ratio)


def mode_free_energy(omega: float, T: float) -> float:
    """Free energy (J) of one oscillator mode of angular frequency ``omega`` at ``T``.

    At ``omega == 0`` and ``T > 0`` the thermal logarithm diverges and ``-inf``
    is returned; callers integrating over modes must not feed that point in.
    """
    from .scales import HBAR, K_B

    if omega < 0 or T < 0:
        raise DomainError("frequency and temperature must be non-negative")
    zero_point = 0.5 * HBAR * omega
    if T == 0:
        return zero_point
    return zero_point + K_B * T * log1mexp(HBAR * omega / (K_B * T))
