"""Parametric surface-plasmon dispersion for two plasma-model plates.

Each branch is written as ``g_a(z)``: the scaled mode frequency ``omega L / c``
as a function of ``z = (kL)^2 - (omega L / c)^2``. Positive ``z`` is below the
light cone (evanescent), negative ``z`` above it. Only the symmetric branch
``PLUS`` extends to negative ``z``, down to ``-z_plus(lam)``.

All formulas are written through ``q(z) = tanh(sqrt(z)/2) / sqrt(z)``, which is
entire in ``z`` and real on both sides of zero (``tan`` replaces ``tanh`` for
``z < 0``), so one expression covers the propagating and evanescent parts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError
from .scales import C_LIGHT, MaterialParams

_ROOT_RTOL = 8.9e-16  # smallest rtol brentq accepts


class ModeBranch(enum.Enum):
    """Plasmon branch ``a`` with its weight ``c_a`` in the mode sum."""

    MINUS = -1
    ZERO = 0
    PLUS = 1

    @property
    def tanh_exponent(self) -> int:
        return self.value

    @property
    def coefficient(self) -> int:
        return -2 if self is ModeBranch.ZERO else 1

    @property
    def label(self) -> str:
        return self.name.capitalize()


BRANCHES = (ModeBranch.MINUS, ModeBranch.ZERO, ModeBranch.PLUS)


def _check_lambda(lam: float) -> None:
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError(f"scaled distance must be positive, got {lam!r}")


def _q(z: float) -> float:
    """tanh(sqrt z / 2) / sqrt z, continued to z < 0 as tan(sqrt(-z)/2) / sqrt(-z)."""
    if abs(z) < 1e-6:
        return 0.5 - z / 24.0 + z * z / 240.0
    if z > 0:
        s = math.sqrt(z)
        return math.tanh(0.5 * s) / s
    s = math.sqrt(-z)
    return math.tan(0.5 * s) / s


@lru_cache(maxsize=4096)
def z_plus(lam: float) -> float:
    """Lower end ``z_+`` of the propagating part of the PLUS branch.

    ``s = sqrt(z_+)`` is the root of ``s = 2 pi lam cos(s/2)`` in ``(0, pi)``.
    The residual of that equation is at the level of double rounding.
    """
    _check_lambda(lam)
    amp = 2 * math.pi * lam
    s = brentq(lambda s: s - amp * math.cos(0.5 * s), 0.0, math.pi, xtol=1e-300, rtol=_ROOT_RTOL)
    return s * s


def lower_limit(branch: ModeBranch, lam: float) -> float:
    """Smallest admissible ``z`` for ``branch``."""
    return -z_plus(lam) if branch is ModeBranch.PLUS else 0.0


def g_squared(branch: ModeBranch, z: float, lam: float) -> float:
    """g_a(z)^2, the squared scaled mode frequency."""
    _check_lambda(lam)
    amp2 = (2 * math.pi * lam) ** 2
    if branch is ModeBranch.PLUS:
        zp = z_plus(lam)
        if z < -zp:
            # allow rounding noise at the lower end
            if z < -zp * (1 + 1e-12):
                raise DomainError(f"z = {z!r} lies below -z_plus = {-zp!r}")
            z = -zp
        return amp2 / (1.0 + math.sqrt(amp2 + z) * _q(z))
    if z < 0:
        raise DomainError(f"branch {branch.label} is only defined for z >= 0, got {z!r}")
    if branch is ModeBranch.ZERO:
        s = math.sqrt(z)
        return amp2 * s / (s + math.sqrt(amp2 + z))
    zq = z * _q(z)
    return amp2 * zq / (zq + math.sqrt(amp2 + z))


def g(branch: ModeBranch, z: float, lam: float) -> float:
    """Scaled mode frequency ``g_a(z) = omega L / c``."""
    return math.sqrt(g_squared(branch, z, lam))


def g_array(branch: ModeBranch, z: np.ndarray, lam: float) -> np.ndarray:
    """Vectorised ``g_a(z)`` for ``z >= 0``."""
    _check_lambda(lam)
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError("g_array only covers z >= 0")
    amp2 = (2 * math.pi * lam) ** 2
    s = np.sqrt(z)
    r = np.sqrt(amp2 + z)
    if branch is ModeBranch.ZERO:
        return np.sqrt(amp2 * s / (s + r))
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(z < 1e-6, 0.5 - z / 24.0 + z * z / 240.0, np.tanh(0.5 * s) / np.where(s > 0, s, 1.0))
    if branch is ModeBranch.PLUS:
        return np.sqrt(amp2 / (1.0 + r * q))
    zq = z * q
    return np.sqrt(amp2 * zq / (zq + r))


def branch_offsets(z: float, lam: float) -> tuple[float, float, float]:
    """``(g_0, g_+ - g_0, g_- - g_0)`` at ``z > 0`` without cancellation.

    The differences shrink like ``exp(-sqrt z)``. They are formed from the
    closed-form differences of squares and ``1 - tanh(sqrt(z)/2) = 2 / (e^sqrt(z) + 1)``.
    """
    amp2 = (2 * math.pi * lam) ** 2
    s = math.sqrt(z)
    r = math.sqrt(amp2 + z)
    th = math.tanh(0.5 * s)
    one_minus_th = 2.0 / (math.exp(s) + 1.0) if s < 700 else 0.0
    g0 = math.sqrt(amp2 * s / (s + r))
    gp = g(ModeBranch.PLUS, z, lam)
    gm = g(ModeBranch.MINUS, z, lam)
    common = amp2 * s * r * one_minus_th / (s + r)
    d_plus = common / (s + r * th) / (gp + g0)
    d_minus = -common / (s * th + r) / (gm + g0)
    return g0, d_plus, d_minus


def g_branch_sum(z: float, lam: float) -> float:
    """sum_a c_a g_a(z) for z >= 0; decays like exp(-2 sqrt z) at large z."""
    if z == 0.0:
        return g(ModeBranch.PLUS, 0.0, lam)
    _, d_plus, d_minus = branch_offsets(z, lam)
    return d_plus + d_minus


def g_infinity(lam: float) -> float:
    """Common large-z limit sqrt(2) pi lam of all branches."""
    _check_lambda(lam)
    return math.sqrt(2) * math.pi * lam


def g_plus_at_zero(lam: float) -> float:
    """g_+(0) = 2 pi lam / sqrt(1 + pi lam), where PLUS crosses the light cone."""
    _check_lambda(lam)
    return 2 * math.pi * lam / math.sqrt(1 + math.pi * lam)


def g_small_z(branch: ModeBranch, z: float, lam: float) -> float:
    """Approximation for |z| much smaller than (2 pi lam)^2."""
    _check_lambda(lam)
    if z < lower_limit(branch, lam):
        raise DomainError(f"z = {z!r} below the domain of branch {branch.label}")
    amp = 2 * math.pi * lam
    if z == 0.0:
        return 2.0 * math.sqrt(amp) if branch is ModeBranch.PLUS else 0.0
    # sqrt(z) coth(sqrt(z)/2) = 1/q and sqrt(z) tanh(sqrt(z)/2) = z q
    if branch is ModeBranch.PLUS:
        factor = 1.0 / _q(z)
    elif branch is ModeBranch.MINUS:
        factor = z * _q(z)
    else:
        factor = math.sqrt(z)
    return math.sqrt(amp * factor)


def g_large_z(branch: ModeBranch, z: float, lam: float) -> float:
    """Non-retarded approximation valid for z much larger than (2 pi lam)^2."""
    _check_lambda(lam)
    if z < 0:
        raise DomainError(f"large-z form needs z >= 0, got {z!r}")
    return g_infinity(lam) * math.sqrt(1 + branch.tanh_exponent * math.exp(-math.sqrt(z)))


def nonretarded_frequency(branch: ModeBranch, k: float, L: float, m: MaterialParams) -> float:
    """omega_a(k) = omega_sp sqrt(1 + a exp(-kL)) with omega_sp = omega_p / sqrt 2."""
    if k < 0 or L <= 0:
        raise DomainError("need k >= 0 and L > 0")
    return m.plasma_frequency / math.sqrt(2) * math.sqrt(1 + branch.tanh_exponent * math.exp(-k * L))


@dataclass(frozen=True)
class DispersionPoint:
    k: float
    omega: float
    branch: ModeBranch
    z: float


def invert_wavevector(branch: ModeBranch, K: float, lam: float) -> float:
    """Solve ``z + g_a(z)^2 = K^2`` for z, with ``K = kL``.

    The left side increases monotonically from 0 at the branch's lower limit.
    """
    if K < 0:
        raise DomainError(f"scaled wavevector must be non-negative, got {K!r}")
    zlo = lower_limit(branch, lam)
    target = K * K
    if target == 0.0:
        return zlo

    def h(z):
        return z + g_squared(branch, z, lam) - target

    hi = max(target, 1.0)
    for _ in range(200):
        if h(hi) >= 0:
            break
        hi *= 2.0
    else:
        raise ConvergenceError(f"could not bracket the inversion for K = {K!r}")
    return brentq(h, zlo, hi, xtol=1e-300, rtol=_ROOT_RTOL)


def mode_frequency(branch: ModeBranch, K: float, lam: float) -> float:
    """Scaled frequency omega L / c of ``branch`` at scaled wavevector ``K = kL``."""
    return g(branch, invert_wavevector(branch, K, lam), lam)


def dispersion_curve(
    branch: ModeBranch, k_grid: Sequence[float], L: float, m: MaterialParams
) -> list[DispersionPoint]:
    """Physical dispersion omega_a(k) at plate separation ``L`` (metres)."""
    if not L > 0:
        raise DomainError(f"plate separation must be positive, got {L!r}")
    lam = L / m.plasma_wavelength
    points = []
    for k in k_grid:
        if not k > 0:
            raise DomainError(f"wavevectors must be positive, got {k!r}")
        z = invert_wavevector(branch, k * L, lam)
        points.append(DispersionPoint(k, C_LIGHT / L * g(branch, z, lam), branch, z))
    return points
