"""Exact quantum waves from a sharply switched-on point source at a potential
step, plus analysis of the transient pulse (forerunner) they carry."""

from stepwave.units import (
    EV_NM_FS,
    NATURAL,
    Regime,
    SourceScenario,
    UnitSystem,
    derive_wavenumber,
    group_velocity,
    penetration_length,
    traversal_time,
    unit_system,
)
from stepwave.faddeeva import faddeeva_w, faddeeva_w_reference

__version__ = "0.1.0"

__all__ = [
    "EV_NM_FS",
    "NATURAL",
    "Regime",
    "SourceScenario",
    "UnitSystem",
    "derive_wavenumber",
    "group_velocity",
    "penetration_length",
    "traversal_time",
    "unit_system",
    "faddeeva_w",
    "faddeeva_w_reference",
    "__version__",
]
