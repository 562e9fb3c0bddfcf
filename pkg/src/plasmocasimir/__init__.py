"""Surface-plasmon and full Casimir free energy, entropy and pressure between plasma-model plates."""

__version__ = "0.1.0"

from .errors import ConvergenceError, DomainError  # noqa: E402
from .scales import GOLD, MaterialParams, ScaledGeometry, from_scaled, material, to_scaled  # noqa: E402
from .dispersion import BRANCHES, ModeBranch, g, z_plus  # noqa: E402
from .quadrature import DEFAULT_CONFIG, STRICT_CONFIG, QuadratureConfig  # noqa: E402
from .plasmon_energy import FreeEnergyResult, beta, eta, phi, theta  # noqa: E402
from .plasmon_entropy import EntropyResult, sigma_from_theta, sigma_integral  # noqa: E402
from .lifshitz import phi_lifshitz, sigma_lifshitz_lowT  # noqa: E402
from .nonequilibrium import NoneqScenario, ScenarioKind, scenario_phi  # noqa: E402
from .analysis import PressureModel, PressureResult, SweepSpec, inversion_distance, pressure, sweep  # noqa: E402

__all__ = [
    "BRANCHES",
    "ConvergenceError",
    "DEFAULT_CONFIG",
    "DomainError",
    "EntropyResult",
    "FreeEnergyResult",
    "GOLD",
    "MaterialParams",
    "ModeBranch",
    "NoneqScenario",
    "PressureModel",
    "PressureResult",
    "QuadratureConfig",
    "STRICT_CONFIG",
    "ScaledGeometry",
    "ScenarioKind",
    "SweepSpec",
    "beta",
    "eta",
    "from_scaled",
    "g",
    "inversion_distance",
    "material",
    "phi",
    "phi_lifshitz",
    "pressure",
    "scenario_phi",
    "sigma_from_theta",
    "sigma_integral",
    "sigma_lifshitz_lowT",
    "sweep",
    "theta",
    "to_scaled",
    "z_plus",
]
