"""Adaptive integration used by every physics module.

The engine is QUADPACK's adaptive Gauss-Kronrod routine (``scipy.integrate.quad``).
What this module adds on top:

* a single configuration object carried through all calls;
* the split of a dispersion integral at ``z = 0`` and ``z = (2 pi lam)^2``;
* the substitution ``z = u^2`` followed by ``u = e^v`` on the positive half,
  which makes integrands with ``sqrt(z)`` behaviour and several widely
  separated scales (``2 pi lam``, ``1``, thermal cutoffs) smooth on a
  handful of subintervals;
* a convergence policy raising :class:`ConvergenceError`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

from scipy.integrate import IntegrationWarning, quad

from .errors import ConvergenceError, DomainError

Integrand = Callable[[float], float]

# lower end of the log-variable range, relative to the smallest scale
_LOG_FLOOR = 1e-9
# smallest sqrt(z) scale honoured by integrate_split, keeping z = u^2 a normal float
_MIN_SQRT_Z_SCALE = 1e-140
# how far the reported error may exceed the requested one before we give up;
# QUADPACK's estimates are pessimistic by orders of magnitude for smooth integrands
_ERROR_SLACK = 100.0
# QUADPACK rejects a purely relative request below 50 machine epsilons
_MIN_PURE_REL_TOL = 50 * 2.220446049250313e-16


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 400
    tail_cut_exponent: float = 34.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol >= 0):
            raise DomainError("tolerances must be positive")
        if self.abs_tol == 0 and self.rel_tol < _MIN_PURE_REL_TOL:
            raise DomainError(f"with abs_tol = 0, rel_tol must be at least {_MIN_PURE_REL_TOL:.3g}")
        if self.max_subdivisions < 10:
            raise DomainError("max_subdivisions must be at least 10")
        if not self.tail_cut_exponent > 0:
            raise DomainError("tail_cut_exponent must be positive")

    def with_tolerances(self, rel_tol: float | None = None, abs_tol: float | None = None) -> "QuadratureConfig":
        return replace(
            self,
            rel_tol=self.rel_tol if rel_tol is None else rel_tol,
            abs_tol=self.abs_tol if abs_tol is None else abs_tol,
        )


DEFAULT_CONFIG = QuadratureConfig()
# used where results are differentiated numerically
STRICT_CONFIG = QuadratureConfig(rel_tol=1e-12, abs_tol=0.0, max_subdivisions=400)


def _quad(
    f: Integrand, a: float, b: float, cfg: QuadratureConfig, points: Sequence[float] = ()
) -> tuple[float, float]:
    # breakpoints go to one QUADPACK call so that tolerances refer to the whole integral
    if a == b:
        return 0.0, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        value, err, info, *rest = quad(
            f,
            a,
            b,
            points=list(points) or None,
            epsabs=cfg.abs_tol,
            epsrel=cfg.rel_tol,
            limit=cfg.max_subdivisions,
            full_output=1,
        )
    if not math.isfinite(value):
        raise ConvergenceError(f"non-finite integral on [{a!r}, {b!r}]", value, err)
    if rest:
        # QUADPACK flagged a problem; accept it only if the error estimate is still sane
        allowed = _ERROR_SLACK * max(cfg.rel_tol * abs(value), cfg.abs_tol, 1e-300)
        if err > allowed:
            raise ConvergenceError(
                f"quadrature on [{a!r}, {b!r}] did not converge: {rest[0].splitlines()[0]}",
                value,
                err,
            )
    return value, err


def integrate_finite(
    f: Integrand, a: float, b: float, cfg: QuadratureConfig = DEFAULT_CONFIG, points: Iterable[float] = ()
) -> float:
    """Integral of ``f`` over ``[a, b]``, optionally split at interior ``points``."""
    return integrate_finite_with_error(f, a, b, cfg, points)[0]


def integrate_finite_with_error(
    f: Integrand, a: float, b: float, cfg: QuadratureConfig = DEFAULT_CONFIG, points: Iterable[float] = ()
) -> tuple[float, float]:
    if not a <= b:
        raise DomainError(f"integration limits must satisfy a <= b, got [{a!r}, {b!r}]")
    return _quad(f, a, b, cfg, sorted(p for p in set(points) if a < p < b))


def integrate_log(
    F: Integrand, scales: Sequence[float], upper: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> tuple[float, float]:
    """Integral of ``F(u)`` over ``(0, upper]`` in the variable ``v = ln u``.

    ``scales`` are the points where ``F`` changes character; they become
    breakpoints. The range below ``1e-9 * min(scales)`` is dropped, so ``F``
    must vanish at least like ``u ln u`` at the origin.
    """
    positive = [s for s in scales if s > 0 and math.isfinite(s)]
    if not positive:
        raise DomainError("need at least one positive scale")
    lo = min(min(positive), upper) * _LOG_FLOOR
    breaks = sorted({math.log(s) for s in positive if lo < s < upper})
    edges = [math.log(lo)] + breaks + [math.log(upper)]

    def integrand(v):
        u = math.exp(v)
        return F(u) * u

    return _quad(integrand, edges[0], edges[-1], cfg, edges[1:-1])


def integrate_split(
    f: Integrand,
    z_lo: float,
    lam: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    extra_scales: Sequence[float] = (),
) -> float:
    """Integral of ``f(z)`` over ``[z_lo, infinity)`` for dispersion integrands.

    The range is cut at ``z = 0`` and ``z = (2 pi lam)^2``. The positive part
    is truncated at ``sqrt(z) = cfg.tail_cut_exponent``, appropriate for
    integrands decaying like ``exp(-sqrt z)`` or faster. ``extra_scales``
    are further breakpoints given in ``sqrt(z)`` units.
    """
    return integrate_split_with_error(f, z_lo, lam, cfg, extra_scales)[0]


def integrate_split_with_error(
    f: Integrand,
    z_lo: float,
    lam: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    extra_scales: Sequence[float] = (),
) -> tuple[float, float]:
    if not lam > 0:
        raise DomainError(f"scaled distance must be positive, got {lam!r}")
    if z_lo > 0:
        raise DomainError("integrate_split expects z_lo <= 0")
    total = 0.0
    error = 0.0
    if z_lo < 0:
        total, error = _quad(f, z_lo, 0.0, cfg)
    upper = cfg.tail_cut_exponent
    scales = [2 * math.pi * lam, 1.0, *(max(s, _MIN_SQRT_Z_SCALE) for s in extra_scales)]
    v, e = integrate_log(lambda u: 2.0 * u * f(u * u), scales, upper, cfg)
    return total + v, error + e
