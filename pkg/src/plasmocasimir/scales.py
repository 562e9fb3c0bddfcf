"""Physical constants, material presets and the dimensionless (lambda, tau) coordinates.

Every physics routine in the package works with the scaled plate distance
``lam = L / lambda_p`` and the scaled temperature ``tau = 2 pi k_B T / (hbar omega_p)``.
This module is the only place where SI units appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as _sc

from .errors import DomainError
from .specfun import ZETA3

HBAR = _sc.hbar
C_LIGHT = _sc.c
K_B = _sc.k
EV = _sc.electron_volt

#: 180 / pi^3, the perfect-mirror prefactor.
ALEPH = 180.0 / math.pi**3


@dataclass(frozen=True)
class MaterialParams:
    """Plasma-model metal characterised by its plasma frequency (rad/s)."""

    plasma_frequency: float
    name: str = "custom"

    def __post_init__(self):
        if not (self.plasma_frequency > 0 and math.isfinite(self.plasma_frequency)):
            raise DomainError(f"plasma frequency must be positive, got {self.plasma_frequency!r}")

    @classmethod
    def from_plasma_wavelength(cls, wavelength_m: float, name: str = "custom") -> "MaterialParams":
        if not wavelength_m > 0:
            raise DomainError(f"plasma wavelength must be positive, got {wavelength_m!r}")
        return cls(2 * math.pi * C_LIGHT / wavelength_m, name)

    @classmethod
    def from_plasma_energy_ev(cls, energy_ev: float, name: str = "custom") -> "MaterialParams":
        if not energy_ev > 0:
            raise DomainError(f"plasma energy must be positive, got {energy_ev!r}")
        return cls(energy_ev * EV / HBAR, name)

    @property
    def plasma_wavelength(self) -> float:
        """lambda_p = 2 pi c / omega_p in metres."""
        return 2 * math.pi * C_LIGHT / self.plasma_frequency

    @property
    def plasma_temperature(self) -> float:
        """Temperature scale T_p such that tau = T / T_p, i.e. hbar omega_p / (2 pi k_B)."""
        return HBAR * self.plasma_frequency / (2 * math.pi * K_B)

    @property
    def plasma_energy_ev(self) -> float:
        return HBAR * self.plasma_frequency / EV


# Gold is defined by lambda_p = 136 nm; hbar omega_p and T_p follow from it.
GOLD = MaterialParams.from_plasma_wavelength(136e-9, name="gold")

PRESETS = {"gold": GOLD}


def material(name: str | None = None, plasma_wavelength_nm: float | None = None) -> MaterialParams:
    """Look up a preset by name, or build a custom material from lambda_p in nm."""
    if plasma_wavelength_nm is not None:
        return MaterialParams.from_plasma_wavelength(plasma_wavelength_nm * 1e-9)
    key = (name or "gold").lower()
    try:
        return PRESETS[key]
    except KeyError:
        raise DomainError(f"unknown material {name!r}; known: {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class ScaledGeometry:
    lam: float
    tau: float = 0.0

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise DomainError(f"scaled distance must be positive, got {self.lam!r}")
        if not (self.tau >= 0 and math.isfinite(self.tau)):
            raise DomainError(f"scaled temperature must be non-negative, got {self.tau!r}")

    @property
    def lambda_tau(self) -> float:
        """k_B T L / (hbar c), independent of the material."""
        return self.lam * self.tau


def to_scaled(L: float, T: float, m: MaterialParams = GOLD) -> ScaledGeometry:
    if not L > 0:
        raise DomainError(f"plate separation must be positive, got {L!r}")
    if not T >= 0:
        raise DomainError(f"temperature must be non-negative, got {T!r}")
    return ScaledGeometry(L / m.plasma_wavelength, T / m.plasma_temperature)


def from_scaled(geom: ScaledGeometry, m: MaterialParams = GOLD) -> tuple[float, float]:
    """Inverse of :func:`to_scaled`; returns ``(L, T)`` in SI units."""
    return geom.lam * m.plasma_wavelength, geom.tau * m.plasma_temperature


@dataclass(frozen=True)
class Normalization:
    """Perfect-mirror reference values at separation ``L`` (SI, per unit area)."""

    L: float
    aleph: float
    casimir_energy: float
    casimir_force: float
    casimir_entropy: float


def casimir_energy(L: float) -> float:
    if not L > 0:
        raise DomainError(f"plate separation must be positive, got {L!r}")
    return -HBAR * C_LIGHT / (4 * math.pi * ALEPH * L**3)


def casimir_force(L: float) -> float:
    # written through casimir_energy so that F_C * L == 3 E_C holds to rounding
    return 3 * casimir_energy(L) / L


def casimir_entropy(L: float) -> float:
    if not L > 0:
        raise DomainError(f"plate separation must be positive, got {L!r}")
    return ZETA3 * K_B / (8 * math.pi * L**2)


def perfect_mirror_refs(L: float) -> Normalization:
    return Normalization(L, ALEPH, casimir_energy(L), casimir_force(L), casimir_entropy(L))
