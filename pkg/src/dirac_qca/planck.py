"""Digital-analog conversion through the three irreducible constants.

The lattice theory is parameterized by pure numbers; the Planck length,
time, and mass convert them to SI units.  Every derived constant is a
product or quotient of the three inputs (no square roots):

    c = l_P / t_P,   hbar = m_P c^2 t_P,   G = l_P c^2 / m_P.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Union

import numpy as np


@dataclass(frozen=True)
class PlanckUnits:
    """Planck length (m), time (s), and mass (kg); derived on demand."""

    length_m: float
    time_s: float
    mass_kg: float

    def __post_init__(self) -> None:
        for name, value in (
            ("length_m", self.length_m),
            ("time_s", self.time_s),
            ("mass_kg", self.mass_kg),
        ):
            v = float(value)
            if not np.isfinite(v) or v <= 0.0:
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
            object.__setattr__(self, name, v)

    @property
    def c(self) -> float:
        """Speed of light l_P / t_P (m/s)."""
        return self.length_m / self.time_s

    @property
    def hbar(self) -> float:
        """Reduced Planck constant m_P c^2 t_P (J s)."""
        return self.mass_kg * self.c ** 2 * self.time_s

    @property
    def gravitational_constant(self) -> float:
        """Newton constant l_P c^2 / m_P (m^3 kg^-1 s^-2)."""
        return self.length_m * self.c ** 2 / self.mass_kg


#: Named unit profiles; scenario configs select one by name or give an
#: explicit triple.
PROFILES: Dict[str, PlanckUnits] = {
    "natural": PlanckUnits(1.0, 1.0, 1.0),
    "codata2018": PlanckUnits(1.616255e-35, 5.391247e-44, 2.176434e-8),
    "codata2010": PlanckUnits(1.616199e-35, 5.39106e-44, 2.17651e-8),
}

DEFAULT_PROFILE = "codata2018"


def resolve_units(profile: Union[str, PlanckUnits, None]) -> PlanckUnits:
    """Profile name / explicit units / None (default) -> PlanckUnits."""
    if profile is None:
        return PROFILES[DEFAULT_PROFILE]
    if isinstance(profile, PlanckUnits):
        return profile
    try:
        return PROFILES[profile]
    except KeyError:
        raise ValueError(
            f"unknown units profile {profile!r}; known: {sorted(PROFILES)}"
        ) from None


def derive_constants(length_m: float, time_s: float, mass_kg: float) -> Dict[str, float]:
    """{c, hbar, G} from an explicit (l_P, t_P, m_P) triple."""
    units = PlanckUnits(length_m, time_s, mass_kg)
    return {"c": units.c, "hbar": units.hbar, "G": units.gravitational_constant}


def max_energy(units: PlanckUnits) -> float:
    """Single-particle energy bound hbar pi / t_P (J)."""
    return units.hbar * np.pi / units.time_s


def max_momentum(units: PlanckUnits) -> float:
    """De Broglie momentum bound hbar pi / l_P (kg m/s)."""
    return units.hbar * np.pi / units.length_m


def mass_to_kg(mass_adimensional: float, units: PlanckUnits) -> float:
    """Adimensional automaton mass in [0, 1] -> kilograms."""
    m = float(mass_adimensional)
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"adimensional mass must lie in [0, 1], got {mass_adimensional!r}")
    return m * units.mass_kg


def kg_to_adimensional(mass_kg: float, units: PlanckUnits) -> float:
    """Kilograms -> adimensional mass; rejects masses above the Planck mass."""
    m = float(mass_kg) / units.mass_kg
    if m < 0.0 or m > 1.0:
        raise ValueError(
            f"{mass_kg!r} kg maps to adimensional mass {m}, outside the unitarity bound [0, 1]"
        )
    return m
