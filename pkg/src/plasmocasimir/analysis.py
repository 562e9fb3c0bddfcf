"""Pressure, inversion distance, parameter sweeps and figure presets."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .dispersion import BRANCHES, dispersion_curve, nonretarded_frequency, z_plus
from .errors import ConvergenceError, DomainError
from .lifshitz import phi_lifshitz, sigma_lifshitz_lowT
from .nonequilibrium import phi_noneq_full, phi_noneq_plasmonic, phi_noneq_propagating
from .plasmon_energy import (
    beta,
    eta,
    eta_asymptotic_large,
    eta_asymptotic_short,
    phi,
    phi_asymptotic_large,
    theta,
    theta_asymptotic_intermediate,
    theta_asymptotic_short,
)
from .plasmon_entropy import Regime, sigma_asymptote, sigma_integral
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .scales import GOLD, MaterialParams, casimir_energy, casimir_force

# relative finite-difference step for d phi / d lam
PRESSURE_STEP = 1e-4
# disagreement between the h and 2h derivative estimates that counts as noise
_DERIVATIVE_NOISE = 1e-3


class PressureModel(enum.Enum):
    PLASMONIC = "plasmonic"
    LIFSHITZ = "lifshitz"
    NONEQ_PLASMONIC = "noneq-plasmonic"  # plates at tau and tau_hot, plasmons only
    NONEQ_B = "noneq-b"  # all modes at tau, plasmons of one plate at tau_hot
    NONEQ_C = "noneq-c"  # all modes at tau, propagating plasmon branch at tau_hot


def phi_function(
    model: PressureModel | str, tau: float = 0.0, tau_hot: float | None = None, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> Callable[[float], float]:
    """The scaled free energy of ``model`` as a function of ``lam`` alone."""
    model = PressureModel(model)
    if model in (PressureModel.NONEQ_PLASMONIC, PressureModel.NONEQ_B, PressureModel.NONEQ_C) and tau_hot is None:
        raise DomainError(f"model {model.value} needs a second temperature")
    if model is PressureModel.PLASMONIC:
        return lambda lam: phi(lam, tau, cfg).phi
    if model is PressureModel.LIFSHITZ:
        return lambda lam: phi_lifshitz(lam, tau, cfg)
    if model is PressureModel.NONEQ_PLASMONIC:
        return lambda lam: phi_noneq_plasmonic(lam, tau, tau_hot, cfg)
    if model is PressureModel.NONEQ_B:
        return lambda lam: phi_noneq_full(lam, tau, tau_hot, cfg)
    return lambda lam: phi_noneq_propagating(lam, tau, tau_hot, cfg)


@dataclass(frozen=True)
class PressureResult:
    """Pressure ``P = -dF/dL``; positive values are repulsive.

    ``scaled`` is ``P / |F_C(L)|``, ``normalized_fig9`` is ``P / (1e-6 |F_C(lambda_p)|)``
    and ``absolute`` is in Pa when a material was given.
    """

    scaled: float
    normalized_fig9: float
    absolute: float | None = None
    phi: float = math.nan
    dphi_dlam: float = math.nan


def derivative_lambda(f: Callable[[float], float], lam: float, rel_step: float = PRESSURE_STEP) -> tuple[float, float]:
    """Central difference with one Richardson step; returns ``(derivative, h vs 2h gap)``."""
    h = rel_step * lam
    d1 = (f(lam + h) - f(lam - h)) / (2 * h)
    d2 = (f(lam + 2 * h) - f(lam - 2 * h)) / (4 * h)
    return (4 * d1 - d2) / 3, abs(d1 - d2)


def pressure_from_phi(
    f: Callable[[float], float], lam: float, material: MaterialParams | None = None, rel_step: float = PRESSURE_STEP
) -> PressureResult:
    """Pressure from ``P = F_C(L) (phi - (lam/3) dphi/dlam)``.

    This follows from ``F = E_C(L) phi(L / lambda_p)`` with ``E_C ~ L^-3`` and
    ``F_C = 3 E_C / L``.
    """
    if not lam > 0:
        raise DomainError(f"scaled distance must be positive, got {lam!r}")
    value = f(lam)
    slope, gap = derivative_lambda(f, lam, rel_step)
    scale = max(abs(slope), abs(value) / lam, 1e-300)
    if gap > _DERIVATIVE_NOISE * scale:
        raise ConvergenceError(
            f"derivative of phi at lam = {lam!r} is dominated by noise (h and 2h differ by {gap!r})",
            slope,
            gap,
        )
    # F_C < 0, so P / |F_C| = -(phi - lam phi' / 3)
    scaled = -(value - lam * slope / 3.0)
    absolute = None
    if material is not None:
        absolute = scaled * abs(casimir_force(lam * material.plasma_wavelength))
    return PressureResult(scaled, scaled * 1e6 / lam**4, absolute, value, slope)


def pressure(
    model: PressureModel | str,
    lam: float,
    tau: float = 0.0,
    tau_hot: float | None = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    material: MaterialParams | None = None,
) -> PressureResult:
    return pressure_from_phi(phi_function(model, tau, tau_hot, cfg), lam, material)


def pressure_direct(
    model: PressureModel | str,
    lam: float,
    tau: float = 0.0,
    tau_hot: float | None = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    material: MaterialParams = GOLD,
    rel_step: float = PRESSURE_STEP,
) -> float:
    """``-dF/dL`` in Pa by differencing the absolute free energy in ``L``.

    Independent of the scaled identity used by :func:`pressure`; the
    temperature is held fixed while ``L`` varies.
    """
    f = phi_function(model, tau, tau_hot, cfg)
    lp = material.plasma_wavelength

    def energy(L):
        return casimir_energy(L) * f(L / lp)

    L = lam * lp
    h = rel_step * L
    d1 = (energy(L + h) - energy(L - h)) / (2 * h)
    d2 = (energy(L + 2 * h) - energy(L - 2 * h)) / (4 * h)
    return -(4 * d1 - d2) / 3


@dataclass(frozen=True)
class InversionResult:
    """Scaled distance where the pressure turns from attractive to repulsive.

    ``lam`` is ``None`` when the pressure keeps one sign over the bracket.
    """

    lam: float | None
    bracket: tuple[float, float]
    residual: float | None = None

    @property
    def found(self) -> bool:
        return self.lam is not None


def inversion_distance(
    model: PressureModel | str,
    tau: float = 0.0,
    tau_hot: float | None = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    bracket: tuple[float, float] = (0.01, 10.0),
    scan_points: int = 25,
) -> InversionResult:
    """First sign change of the pressure, scanning ``bracket`` on a log grid."""
    lo, hi = bracket
    if not 0 < lo < hi:
        raise DomainError(f"invalid bracket {bracket!r}")
    f = phi_function(model, tau, tau_hot, cfg)

    def p(lam):
        return pressure_from_phi(f, lam).scaled

    grid = np.geomspace(lo, hi, scan_points)
    values = [p(x) for x in grid]
    for a, b, pa, pb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if pa < 0 <= pb:
            root = brentq(p, a, b, xtol=1e-12, rtol=1e-10)
            return InversionResult(root, bracket, p(root))
    return InversionResult(None, bracket)


# ---------------------------------------------------------------- sweeps


class Axis(enum.Enum):
    LAMBDA = "lambda"
    TAU = "tau"


class Scale(enum.Enum):
    LINEAR = "linear"
    LOG = "log"


@dataclass(frozen=True)
class SweepSpec:
    axis: Axis
    min: float
    max: float
    points: int
    scale: Scale = Scale.LOG
    fixed: float = 0.0

    def __post_init__(self):
        if not self.min < self.max:
            raise DomainError(f"sweep needs min < max, got {self.min!r}, {self.max!r}")
        if self.points < 2:
            raise DomainError("a sweep needs at least two points")
        if self.scale is Scale.LOG and self.min <= 0:
            raise DomainError("log sweeps need min > 0")

    def values(self) -> list[float]:
        if self.scale is Scale.LOG:
            return [float(v) for v in np.geomspace(self.min, self.max, self.points)]
        return [float(v) for v in np.linspace(self.min, self.max, self.points)]


QUANTITIES = ("eta", "theta", "phi", "sigma", "phi_lif", "sigma_lif", "pressure")


@dataclass(frozen=True)
class SweepRow:
    x: float
    value: float
    error: float = math.nan
    failure: str | None = None


def evaluate_quantity(
    quantity: str,
    lam: float,
    tau: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    model: PressureModel | str = PressureModel.PLASMONIC,
    tau_hot: float | None = None,
) -> float:
    if quantity == "eta":
        return eta(lam, cfg)
    if quantity == "theta":
        return theta(lam, tau, cfg)
    if quantity == "phi":
        return phi(lam, tau, cfg).phi
    if quantity == "sigma":
        return sigma_integral(lam, tau, cfg).sigma
    if quantity == "phi_lif":
        return phi_lifshitz(lam, tau, cfg)
    if quantity == "sigma_lif":
        return sigma_lifshitz_lowT(lam, tau, cfg)
    if quantity == "pressure":
        return pressure(model, lam, tau, tau_hot, cfg).scaled
    raise DomainError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")


def _sweep_point(x, quantity, spec, cfg, model, tau_hot, estimate_error):
    lam, tau = (x, spec.fixed) if spec.axis is Axis.LAMBDA else (spec.fixed, x)
    try:
        value = evaluate_quantity(quantity, lam, tau, cfg, model, tau_hot)
        error = math.nan
        if estimate_error:
            loose = cfg.with_tolerances(rel_tol=cfg.rel_tol * 100)
            error = abs(value - evaluate_quantity(quantity, lam, tau, loose, model, tau_hot))
        return SweepRow(x, value, error)
    except (DomainError, ConvergenceError, ArithmeticError) as exc:
        return SweepRow(x, math.nan, math.nan, f"{type(exc).__name__}: {exc}")


def sweep(
    quantity: str,
    spec: SweepSpec,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    model: PressureModel | str = PressureModel.PLASMONIC,
    tau_hot: float | None = None,
    estimate_error: bool = False,
    workers: int = 1,
) -> list[SweepRow]:
    """Evaluate ``quantity`` along ``spec``; rows come back in axis order.

    With ``estimate_error`` the error column holds the change against a run at
    100 times looser tolerance. Failures are recorded in the row and do not
    stop the sweep.
    """
    if quantity not in QUANTITIES:
        raise DomainError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")
    task = partial(
        _sweep_point,
        quantity=quantity,
        spec=spec,
        cfg=cfg,
        model=PressureModel(model),
        tau_hot=tau_hot,
        estimate_error=estimate_error,
    )
    xs = spec.values()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(task, xs))
    return [task(x) for x in xs]


# ---------------------------------------------------------------- figure presets


@dataclass
class Table:
    title: str
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)


def _safe(fn, *args):
    try:
        return fn(*args)
    except (DomainError, ConvergenceError):
        return math.nan


def figure_dispersion(material: MaterialParams = GOLD, lam: float = 1.0, points: int = 60) -> Table:
    """Branches omega_a(k) in units of omega_p against k lambda_p, with the light cone."""
    L = lam * material.plasma_wavelength
    ks = np.geomspace(0.05, 20.0, points) / material.plasma_wavelength
    table = Table(
        f"surface plasmon dispersion at lambda = {lam:g}",
        ["k_lambda_p", "branch", "omega_over_omega_p", "nonretarded_over_omega_p", "light_cone_over_omega_p"],
    )
    wp = material.plasma_frequency
    for branch in BRANCHES:
        for point in dispersion_curve(branch, ks, L, material):
            k_scaled = point.k * material.plasma_wavelength
            table.rows.append(
                (
                    k_scaled,
                    branch.label,
                    point.omega / wp,
                    nonretarded_frequency(branch, point.k, L, material) / wp,
                    k_scaled / (2 * math.pi),
                )
            )
    return table


def figure_z_plus(points: int = 41) -> Table:
    table = Table("z_plus against lambda", ["lambda", "z_plus", "small_lambda", "large_lambda"])
    for lam in np.geomspace(1e-3, 1e3, points):
        table.rows.append((float(lam), z_plus(float(lam)), (2 * math.pi * lam) ** 2, math.pi**2))
    return table


def figure_phi(cfg: QuadratureConfig = DEFAULT_CONFIG, points: int = 25) -> Table:
    taus = (0.0, 0.018, 0.1)
    columns = ["lambda"] + [f"phi_tau={t:g}" for t in taus] + [f"short_tau={t:g}" for t in taus]
    table = Table("plasmonic free energy factor against distance", columns)
    for lam in np.geomspace(1e-2, 1e2, points):
        lam = float(lam)
        exact = [_safe(lambda t: phi(lam, t, cfg).phi, t) for t in taus]
        short = [eta_asymptotic_short(lam) + _safe(theta_asymptotic_short, lam, t, cfg) for t in taus]
        table.rows.append((lam, *exact, *short))
    return table


def figure_theta(cfg: QuadratureConfig = DEFAULT_CONFIG, points: int = 26) -> Table:
    taus = (1e-3, 1e-2, 1e-1)
    columns = ["lambda"] + [f"theta_tau={t:g}" for t in taus] + [f"short_tau={t:g}" for t in taus]
    table = Table("thermal factor at short distance", columns)
    for lam in np.geomspace(1e-6, 1e-1, points):
        lam = float(lam)
        exact = [_safe(theta, lam, t, cfg) for t in taus]
        short = [_safe(theta_asymptotic_short, lam, t, cfg) for t in taus]
        table.rows.append((lam, *exact, *short))
    return table


def figure_inversion(cfg: QuadratureConfig = DEFAULT_CONFIG, points: int = 11) -> Table:
    table = Table("plasmonic inversion distance against temperature", ["tau", "lambda_inv"])
    for tau in np.linspace(0.0, 0.2, points):
        result = inversion_distance(PressureModel.PLASMONIC, float(tau), cfg=cfg)
        table.rows.append((float(tau), result.lam if result.found else math.nan))
    return table


def figure_lifshitz(cfg: QuadratureConfig = DEFAULT_CONFIG, points: int = 13) -> Table:
    taus = (0.0, 0.018)
    columns = ["lambda"]
    for t in taus:
        columns += [f"phi_tau={t:g}", f"phi_lif_tau={t:g}"]
    table = Table("plasmonic against full free energy factor", columns)
    for lam in np.geomspace(5e-3, 1.0, points):
        lam = float(lam)
        row = [lam]
        for t in taus:
            row += [_safe(lambda x: phi(lam, x, cfg).phi, t), _safe(phi_lifshitz, lam, t, cfg)]
        table.rows.append(tuple(row))
    return table


def figure_entropy(cfg: QuadratureConfig = DEFAULT_CONFIG, points: int = 21) -> Table:
    lams = (0.01, 0.1, 1.0, 10.0, 100.0)
    columns = ["tau"] + [f"sigma_lambda={x:g}" for x in lams] + ["short_high_t", "large_t_lambda=100"]
    table = Table("plasmonic entropy factor against temperature", columns)
    for tau in np.geomspace(1e-3, 10.0, points):
        tau = float(tau)
        values = [_safe(lambda x: sigma_integral(x, tau, cfg).sigma, x) for x in lams]
        table.rows.append(
            (
                tau,
                *values,
                sigma_asymptote(Regime.SHORT_HIGH_T, 0.01, tau),
                sigma_asymptote(Regime.LARGE_T, 100.0, tau),
            )
        )
    return table


def figure_large_distance(cfg: QuadratureConfig = DEFAULT_CONFIG, points: int = 21) -> Table:
    taus = (0.0, 0.01, 0.1)
    columns = ["lambda"] + [f"phi_tau={t:g}" for t in taus] + ["eta_large"]
    columns += [f"intermediate_tau={t:g}" for t in taus[1:]] + [f"high_t_tau={t:g}" for t in taus[1:]]
    table = Table("plasmonic free energy factor at large distance", columns)
    for lam in np.geomspace(1.0, 1e3, points):
        lam = float(lam)
        exact = [_safe(lambda t: phi(lam, t, cfg).phi, t) for t in taus]
        large = eta_asymptotic_large(lam)
        inter = [large + theta_asymptotic_intermediate(lam, t) for t in taus[1:]]
        high = [phi_asymptotic_large(lam, t) for t in taus[1:]]
        table.rows.append((lam, *exact, large, *inter, *high))
    return table


def figure_noneq(cfg: QuadratureConfig = DEFAULT_CONFIG, points: int = 30, tau: float = 0.018, tau_hot: float = 0.04) -> Table:
    columns = ["lambda", "a_equilibrium", "b_plasmons_hot", "c_propagating_hot"]
    table = Table(f"normalized pressure, tau = {tau:g}, hot = {tau_hot:g}", columns)
    models = [
        (PressureModel.LIFSHITZ, None),
        (PressureModel.NONEQ_B, tau_hot),
        (PressureModel.NONEQ_C, tau_hot),
    ]
    for lam in np.linspace(1.0, 60.0, points):
        lam = float(lam)
        row = [lam]
        for model, hot in models:
            row.append(_safe(lambda x: pressure(model, x, tau, hot, cfg).normalized_fig9, lam))
        table.rows.append(tuple(row))
    return table


def figure_beta(cfg: QuadratureConfig = DEFAULT_CONFIG, points: int = 31) -> list[tuple]:
    return [(float(t), beta(float(t), cfg)) for t in np.geomspace(1e-2, 1e3, points)]


FIGURES: dict[int, Callable[..., Table]] = {
    1: lambda cfg, material: figure_dispersion(material),
    2: lambda cfg, material: figure_z_plus(),
    3: lambda cfg, material: figure_phi(cfg),
    4: lambda cfg, material: figure_theta(cfg),
    5: lambda cfg, material: figure_inversion(cfg),
    6: lambda cfg, material: figure_lifshitz(cfg),
    7: lambda cfg, material: figure_entropy(cfg),
    8: lambda cfg, material: figure_large_distance(cfg),
    9: lambda cfg, material: figure_noneq(cfg),
}


def figure(number: int, cfg: QuadratureConfig = DEFAULT_CONFIG, material: MaterialParams = GOLD) -> Table:
    try:
        build = FIGURES[number]
    except KeyError:
        raise DomainError(f"no figure preset {number!r}; choose 1 to 9") from None
    return build(cfg, material)

