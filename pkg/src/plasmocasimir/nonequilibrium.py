"""Free energies with some mode populations held at a different temperature.

Two base models are supported: ``"plasmonic"`` (surface plasmons only) and
``"full"`` (Lifshitz, all modes). A scenario describes which modes are hot.
Within one model every scenario reduces to equilibrium when all of its
temperatures coincide.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .dispersion import ModeBranch, g, g_plus_at_zero, z_plus
from .errors import DomainError
from .lifshitz import phi_lifshitz
from .plasmon_energy import eta, phi, theta
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate_finite
from .scales import ALEPH
from .specfun import L_combination, log1mexp


class ScenarioKind(enum.Enum):
    EQUILIBRIUM = "equilibrium"
    TWO_PLATE_AVERAGE = "two-plate-average"
    PLASMONS_HOT = "plasmons-hot"
    PROPAGATING_PLASMON_HOT = "propagating-plasmon-hot"


@dataclass(frozen=True)
class NoneqScenario:
    """Scenario with its temperatures.

    ``base`` is the temperature of everything not singled out; ``hot`` the
    temperature of the singled-out population (second plate, plasmons of one
    plate, or the propagating plasmon branch). For EQUILIBRIUM ``hot`` is ignored.
    """

    kind: ScenarioKind
    base: float
    hot: float | None = None

    def __post_init__(self):
        temps = [self.base] + ([] if self.hot is None else [self.hot])
        if any(not (t >= 0 and math.isfinite(t)) for t in temps):
            raise DomainError("scenario temperatures must be non-negative and finite")
        if self.kind is not ScenarioKind.EQUILIBRIUM and self.hot is None:
            raise DomainError(f"scenario {self.kind.value} needs a second temperature")

    @classmethod
    def equilibrium(cls, tau: float) -> "NoneqScenario":
        return cls(ScenarioKind.EQUILIBRIUM, tau)

    @classmethod
    def two_plate_average(cls, tau1: float, tau2: float) -> "NoneqScenario":
        return cls(ScenarioKind.TWO_PLATE_AVERAGE, tau1, tau2)

    @classmethod
    def plasmons_hot(cls, tau1: float, tau2: float) -> "NoneqScenario":
        return cls(ScenarioKind.PLASMONS_HOT, tau1, tau2)

    @classmethod
    def propagating_plasmon_hot(cls, tau: float, tau_pr: float) -> "NoneqScenario":
        return cls(ScenarioKind.PROPAGATING_PLASMON_HOT, tau, tau_pr)


def phi_noneq_plasmonic(lam: float, tau1: float, tau2: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Plasmonic factor for plates at ``tau1`` and ``tau2``: the mean of the thermal parts."""
    return eta(lam, cfg) + 0.5 * (theta(lam, tau2, cfg) + theta(lam, tau1, cfg))


def phi_noneq_full(lam: float, tau1: float, tau2: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """All modes at ``tau1`` except the surface plasmons of one plate, which sit at ``tau2``."""
    return phi_lifshitz(lam, tau1, cfg) + 0.5 * (theta(lam, tau2, cfg) - theta(lam, tau1, cfg))


def theta_propagating_plus(lam: float, tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Thermal free energy factor of the propagating part of the PLUS branch.

    The frequency of that part runs from ``sqrt(z_+)`` up to ``g_+(0)``, where
    the branch crosses the light cone.
    """
    if not lam > 0:
        raise DomainError(f"scaled distance must be positive, got {lam!r}")
    if not (tau >= 0 and math.isfinite(tau)):
        raise DomainError(f"scaled temperature must be non-negative, got {tau!r}")
    if tau == 0.0:
        return 0.0
    t = lam * tau
    zp = z_plus(lam)
    bulk = integrate_finite(lambda z: log1mexp(g(ModeBranch.PLUS, z, lam) / t), -zp, 0.0, cfg)
    bracket = L_combination(math.sqrt(zp) / t) - L_combination(g_plus_at_zero(lam) / t)
    return -ALEPH * t * bulk - 2.0 * ALEPH * t**3 * bracket


def phi_noneq_propagating(
    lam: float, tau: float, tau_pr: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """All modes at ``tau`` except the propagating plasmon branch, held at ``tau_pr``."""
    return (
        phi_lifshitz(lam, tau, cfg) + theta_propagating_plus(lam, tau_pr, cfg) - theta_propagating_plus(lam, tau, cfg)
    )


def scenario_phi(
    scenario: NoneqScenario, lam: float, model: str = "full", cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Free energy factor of ``scenario`` on top of the ``model`` equilibrium."""
    if model == "full":
        def equilibrium(t):
            return phi_lifshitz(lam, t, cfg)
    elif model == "plasmonic":
        def equilibrium(t):
            return phi(lam, t, cfg).phi
    else:
        raise DomainError(f"unknown model {model!r}; expected 'full' or 'plasmonic'")

    kind = scenario.kind
    base = scenario.base
    if kind is ScenarioKind.EQUILIBRIUM:
        return equilibrium(base)
    hot = scenario.hot
    if kind is ScenarioKind.TWO_PLATE_AVERAGE:
        if model == "plasmonic":
            return phi_noneq_plasmonic(lam, base, hot, cfg)
        return 0.5 * (equilibrium(base) + equilibrium(hot))
    if kind is ScenarioKind.PLASMONS_HOT:
        return equilibrium(base) + 0.5 * (theta(lam, hot, cfg) - theta(lam, base, cfg))
    return equilibrium(base) + theta_propagating_plus(lam, hot, cfg) - theta_propagating_plus(lam, base, cfg)
