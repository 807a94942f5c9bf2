"""Physical solutions assembled from the M-functions.

Exact fields for both regimes, the stationary limits, the closed-form
transient pulse and its density, the stationary-plus-pulse decomposition,
and the stationary/pulse interplay ratio R.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from stepwave.moshinsky import (
    ArgumentDomainError,
    argument_y,
    evanescent_modes,
    m_direct,
    propagating_modes,
)
from stepwave.units import (
    Regime,
    SourceScenario,
    WrongRegimeError,
    derive_wavenumber,
    group_velocity,
    penetration_length,
)

SQRT_PI = math.sqrt(math.pi)

# Opacity threshold q0*x >= OPAQUE_QX_MIN for the decomposition validity
# flag (desk-scale stand-in for the asymptotic statement q0*x >> 1).
OPAQUE_QX_MIN = 3.0

# 1/y factors in the pulse amplitude are refused closer to the pole than
# this; unreachable for real (x > 0, t > 0) but guarded anyway.
POLE_GUARD = 1e-8


class PoleProximityError(ValueError):
    """Pulse amplitude requested too close to a 1/y pole."""


class GridAxis(Enum):
    SPACE_CUT_AT_FIXED_T = "space_cut_at_fixed_t"
    TIME_CUT_AT_FIXED_X = "time_cut_at_fixed_x"


@dataclass(frozen=True)
class FieldSample:
    x: float
    t: float
    psi: complex
    density: float


@dataclass(frozen=True)
class FieldGrid:
    """Samples of psi along one coordinate with the other held fixed."""

    axis: GridAxis
    fixed_value: float
    samples: tuple[FieldSample, ...]
    scenario: SourceScenario


def psi_above(x: float, t: float, s: SourceScenario) -> complex:
    """Exact field e^{-iVt}[M(x, k0, t) + M(x, -k0, t)] above the step."""
    if s.regime is not Regime.ABOVE:
        raise WrongRegimeError("psi_above needs an above-the-step scenario")
    if not t > 0.0:
        raise ArgumentDomainError("t must be positive")
    if x == 0.0:
        return cmath.exp(-1j * s.omega0 * t)
    plus, minus = propagating_modes(s)
    phase = cmath.exp(-1j * s.potential_frequency * t)
    return phase * (m_direct(x, plus, t, s) + m_direct(x, minus, t, s))


def psi_below(x: float, t: float, s: SourceScenario) -> complex:
    """Exact field e^{-iVt}[M(x, iq0, t) + M(x, -iq0, t)] below the barrier."""
    if s.regime is not Regime.BELOW:
        raise WrongRegimeError("psi_below needs a below-the-barrier scenario")
    if not t > 0.0:
        raise ArgumentDomainError("t must be positive")
    if x == 0.0:
        # Analytic limit; avoids the 0/0 shape of the y arguments.
        return cmath.exp(-1j * s.omega0 * t)
    plus, minus = evanescent_modes(s)
    phase = cmath.exp(-1j * s.potential_frequency * t)
    return phase * (m_direct(x, plus, t, s) + m_direct(x, minus, t, s))


def psi_field(x: float, t: float, s: SourceScenario) -> complex:
    """Exact field for either regime."""
    if s.regime is Regime.ABOVE:
        return psi_above(x, t, s)
    return psi_below(x, t, s)


def psi_stationary(x: float, s: SourceScenario) -> complex:
    """Spatial part of the long-time solution (caller attaches e^{-i omega0 t}).

    Below: e^{-q0 x}. Above: the outgoing wave e^{+i k0 x}; the t -> infinity
    limit of the exact field fixes the sign of the exponent.
    """
    if x < 0.0:
        raise ValueError("x must be non-negative")
    k = derive_wavenumber(s)
    if s.regime is Regime.BELOW:
        return complex(math.exp(-k * x), 0.0)
    return cmath.exp(1j * k * x)


def psi_transient_pulse(x: float, t: float, s: SourceScenario) -> complex:
    """Closed-form pulse amplitude

        psi_tp = (1/2 sqrt(pi)) e^{i(m x^2/2 hbar t - V t)} [1/y_{iq0} + 1/y_{-iq0}].
    """
    if s.regime is not Regime.BELOW:
        raise WrongRegimeError("the transient pulse is a below-barrier object")
    if not x > 0.0:
        raise ValueError("x must be positive (the 1/y poles cancel only in sums)")
    if not t > 0.0:
        raise ArgumentDomainError("t must be positive")
    plus, minus = evanescent_modes(s)
    y_p = argument_y(x, plus, t, s)
    y_m = argument_y(x, minus, t, s)
    if y_p.magnitude < POLE_GUARD or y_m.magnitude < POLE_GUARD:
        raise PoleProximityError("argument too close to a 1/y pole")
    phase = cmath.exp(
        1j * (0.5 * s.mass * x * x / (s.hbar * t) - s.potential_frequency * t)
    )
    return phase / (2.0 * SQRT_PI) * (1.0 / y_p.y + 1.0 / y_m.y)


def pulse_density(x: float, t: float, s: SourceScenario) -> float:
    """|psi_tp|^2 = (2/pi) (hbar x^2 t / m) / [x^2 + (hbar q0 t / m)^2]^2."""
    if s.regime is not Regime.BELOW:
        raise WrongRegimeError("the transient pulse is a below-barrier object")
    if not t > 0.0:
        raise ArgumentDomainError("t must be positive")
    if x < 0.0:
        raise ValueError("x must be non-negative")
    vt = group_velocity(s) * t
    denom = x * x + vt * vt
    return (2.0 / math.pi) * (s.hbar * x * x * t / s.mass) / (denom * denom)


@dataclass(frozen=True)
class Decomposition:
    """Stationary + pulse split of the below-barrier field.

    ``stationary`` carries the full e^{-i omega0 t} phase so that
    ``total = stationary + pulse`` is directly comparable to the exact field.
    ``within_validity`` is False outside t > X0/v and q0*x >= OPAQUE_QX_MIN.
    """

    stationary: complex
    pulse: complex
    total: complex
    within_validity: bool


def psi_decomposed(x: float, t: float, s: SourceScenario) -> Decomposition:
    """Stationary-plus-pulse approximation of the exact below-barrier field."""
    if s.regime is not Regime.BELOW:
        raise WrongRegimeError("decomposition applies below the barrier only")
    stationary = psi_stationary(x, s) * cmath.exp(-1j * s.omega0 * t)
    pulse = psi_transient_pulse(x, t, s)
    q0 = derive_wavenumber(s)
    onset = 2.0 * penetration_length(s)
    valid = (t > onset / group_velocity(s)) and (q0 * x >= OPAQUE_QX_MIN)
    return Decomposition(
        stationary=stationary,
        pulse=pulse,
        total=stationary + pulse,
        within_validity=valid,
    )


def interplay_ratio(x: float, t: float, s: SourceScenario) -> float:
    """R = |psi_stationary / psi_tp|^2 = e^{-2 q0 x} / pulse_density."""
    if s.regime is not Regime.BELOW:
        raise WrongRegimeError("interplay ratio applies below the barrier only")
    if x < 0.0:
        raise ValueError("x must be non-negative")
    dens = pulse_density(x, t, s)
    stat = math.exp(-2.0 * derive_wavenumber(s) * x)
    if dens == 0.0:
        return math.inf
    return stat / dens


def _sample(x: float, t: float, s: SourceScenario) -> FieldSample:
    psi = psi_field(x, t, s)
    return FieldSample(x=x, t=t, psi=psi, density=abs(psi) ** 2)


def _check_strictly_increasing(values: Sequence[float], name: str) -> None:
    if len(values) < 2:
        raise ValueError(f"need at least 2 {name} samples")
    for a, b in zip(values, values[1:]):
        if not b > a:
            raise ValueError(f"{name} values must be strictly increasing")


def sample_space_cut(
    s: SourceScenario, t: float, xs: Sequence[float]
) -> FieldGrid:
    """|psi|^2 and psi over x at fixed t."""
    if not t > 0.0:
        raise ArgumentDomainError("t must be positive")
    _check_strictly_increasing(xs, "x")
    if xs[0] < 0.0:
        raise ValueError("x values must be non-negative")
    samples = tuple(_sample(x, t, s) for x in xs)
    return FieldGrid(GridAxis.SPACE_CUT_AT_FIXED_T, t, samples, s)


def sample_time_cut(
    s: SourceScenario, x: float, ts: Sequence[float]
) -> FieldGrid:
    """|psi|^2 and psi over t at fixed x."""
    if x < 0.0:
        raise ValueError("x must be non-negative")
    _check_strictly_increasing(ts, "t")
    if not ts[0] > 0.0:
        raise ValueError("t values must be positive")
    samples = tuple(_sample(x, t, s) for t in ts)
    return FieldGrid(GridAxis.TIME_CUT_AT_FIXED_X, x, samples, s)
