"""Unit systems and point-source-at-a-step scenarios.

Everything downstream computes in whatever unit system a scenario carries;
nothing is silently normalized. Two systems are built in: "natural"
(hbar = mass = 1 exactly) and an electron-scale "eV-nm-fs" system with
frozen constants (documented to the digit so golden files stay stable).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

HBAR_EV_FS = 0.6582119569                 # eV*fs
SPEED_OF_LIGHT_NM_FS = 299.792458         # nm/fs
ELECTRON_REST_ENERGY_EV = 510998.95       # eV
# m = E_rest / c^2, in eV*fs^2/nm^2 (approx 5.685630e0)
ELECTRON_MASS_EV = ELECTRON_REST_ENERGY_EV / SPEED_OF_LIGHT_NM_FS**2

# |E0 - V0| below this relative size counts as degenerate.
DEGENERATE_RTOL = 1e-12


class DegenerateScenarioError(ValueError):
    """Source energy equals the step height within tolerance; both solution
    branches degenerate there, so the scenario is rejected outright."""


class WrongRegimeError(ValueError):
    """Operation is defined only in the other energy regime."""


class Regime(Enum):
    ABOVE = "above"
    BELOW = "below"


@dataclass(frozen=True)
class UnitSystem:
    """hbar and particle mass expressed in a coherent unit system."""

    hbar: float
    mass: float
    label: str

    def __post_init__(self) -> None:
        if not (self.hbar > 0.0 and math.isfinite(self.hbar)):
            raise ValueError("hbar must be positive and finite")
        if not (self.mass > 0.0 and math.isfinite(self.mass)):
            raise ValueError("mass must be positive and finite")


NATURAL = UnitSystem(hbar=1.0, mass=1.0, label="natural")
EV_NM_FS = UnitSystem(hbar=HBAR_EV_FS, mass=ELECTRON_MASS_EV, label="eV-nm-fs")

_BUILTIN_SYSTEMS = {"natural": NATURAL, "ev-nm-fs": EV_NM_FS}


def unit_system(label: str, mass: float | None = None) -> UnitSystem:
    """Return a built-in unit system, optionally with a custom particle mass."""
    try:
        base = _BUILTIN_SYSTEMS[label]
    except KeyError:
        raise ValueError(
            f"unknown unit system {label!r}; choose from {sorted(_BUILTIN_SYSTEMS)}"
        ) from None
    if mass is None:
        return base
    if not mass > 0.0:
        raise ValueError("mass override must be positive")
    return replace(base, mass=mass)


@dataclass(frozen=True)
class SourceScenario:
    """Monochromatic point source of energy E0 emitting into a step of height V0.

    The source sits at the step edge (x = 0) and switches on sharply at t = 0,
    so psi(0, t) = exp(-i*omega0*t) for t > 0. V0 and E0 are energies in the
    scenario's unit system.
    """

    units: UnitSystem
    V0: float
    E0: float

    def __post_init__(self) -> None:
        if not (self.V0 >= 0.0 and math.isfinite(self.V0)):
            raise ValueError("V0 must be non-negative and finite")
        if not (self.E0 > 0.0 and math.isfinite(self.E0)):
            raise ValueError("E0 must be positive and finite")
        if abs(self.E0 - self.V0) <= DEGENERATE_RTOL * max(self.E0, self.V0):
            raise DegenerateScenarioError(
                f"E0 = {self.E0} and V0 = {self.V0} coincide within tolerance; "
                "the on-threshold source is not supported"
            )

    @property
    def hbar(self) -> float:
        return self.units.hbar

    @property
    def mass(self) -> float:
        return self.units.mass

    @property
    def regime(self) -> Regime:
        return Regime.ABOVE if self.E0 > self.V0 else Regime.BELOW

    @property
    def omega0(self) -> float:
        """Source angular frequency omega0 = E0/hbar."""
        return self.E0 / self.hbar

    @property
    def potential_frequency(self) -> float:
        """Step height as an angular frequency, V = V0/hbar."""
        return self.V0 / self.hbar


def derive_wavenumber(s: SourceScenario) -> float:
    """Real wavenumber of the scenario's single propagating or evanescent mode.

    Above the step: k0 = sqrt(2m(E0-V0))/hbar. Below: q0 = sqrt(2m(V0-E0))/hbar.
    Exactly one of the two is defined for any valid scenario.
    """
    return math.sqrt(2.0 * s.mass * abs(s.E0 - s.V0)) / s.hbar


def group_velocity(s: SourceScenario) -> float:
    """Semiclassical group velocity hbar*k/m for the scenario's mode."""
    return s.hbar * derive_wavenumber(s) / s.mass


def penetration_length(s: SourceScenario) -> float:
    """Stationary evanescent decay length x_p = 1/q0 (below-barrier only)."""
    if s.regime is not Regime.BELOW:
        raise WrongRegimeError("penetration length is defined below the barrier only")
    return 1.0 / derive_wavenumber(s)


def traversal_time(s: SourceScenario, x_f: float) -> float:
    """Traversal time tau = x_f / v_q0 to a depth x_f inside the step."""
    if s.regime is not Regime.BELOW:
        raise WrongRegimeError("traversal time is defined below the barrier only")
    if not x_f > 0.0:
        raise ValueError("x_f must be positive")
    return x_f / group_velocity(s)


@dataclass(frozen=True)
class ScaleFactors:
    """Multiplicative factors mapping source-system coordinates to the target."""

    energy: float
    time: float
    length: float


def convert_scenario(
    s: SourceScenario, to_units: UnitSystem, energy_scale: float = 1.0
) -> tuple[SourceScenario, ScaleFactors]:
    """Re-express a scenario in another unit system.

    ``energy_scale`` fixes the remaining freedom (target energy units per
    source energy unit). The returned factors map coordinates so that all
    dimensionless combinations (omega0*t, q0*x, ...) are preserved; a
    round trip reproduces every derived quantity.
    """
    if not energy_scale > 0.0:
        raise ValueError("energy_scale must be positive")
    target = SourceScenario(
        units=to_units, V0=s.V0 * energy_scale, E0=s.E0 * energy_scale
    )
    time_factor = (to_units.hbar / s.units.hbar) / energy_scale
    length_factor = derive_wavenumber(s) / derive_wavenumber(target)
    return target, ScaleFactors(
        energy=energy_scale, time=time_factor, length=length_factor
    )
