"""Transient-source M-functions built on the Faddeeva kernel.

M(x, q, t) = (1/2) exp(i m x^2 / 2 hbar t) w(i y_q) with the argument

    y_q = exp(-i pi/4) sqrt(m / 2 hbar t) * (x - (hbar q / m) t),

where q runs over the four scenario modes +-k0 (propagating) or +-i*q0
(evanescent). The direct w-kernel path is the production evaluator
everywhere; the truncated large-argument series exists to express the
one-term pulse decomposition and to validate the asymptotics, not as a
performance fallback.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from stepwave.faddeeva import faddeeva_w
from stepwave.units import Regime, SourceScenario, WrongRegimeError, derive_wavenumber

SQRT_PI = math.sqrt(math.pi)

# Phases closer than this to +-pi/2 sit on the branch boundary.
PHASE_BOUNDARY_TOL = 1e-12


class ArgumentDomainError(ValueError):
    """(x, t) outside the domain of the transient solution (t must be > 0)."""


class SeriesDomainError(ValueError):
    """Large-argument series requested where it is meaningless (|y| < 1)."""


class Branch(Enum):
    # Principal: only the inverse-power series. Exponential: the series
    # plus the 2*exp(y^2) term.
    PRINCIPAL = "principal"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class WaveMode:
    """One of the four modes q = +-k0 (above) or q = +-i*q0 (below)."""

    q: complex

    def __post_init__(self) -> None:
        if self.q == 0 or not (
            math.isfinite(self.q.real) and math.isfinite(self.q.imag)
        ):
            raise ValueError("mode wavenumber must be finite and nonzero")
        if self.q.real != 0.0 and self.q.imag != 0.0:
            raise ValueError("mode must be purely real or purely imaginary")


def propagating_modes(s: SourceScenario) -> tuple[WaveMode, WaveMode]:
    """(+k0, -k0) for an above-the-step scenario."""
    if s.regime is not Regime.ABOVE:
        raise WrongRegimeError("propagating modes exist above the step only")
    k0 = derive_wavenumber(s)
    return WaveMode(complex(k0, 0.0)), WaveMode(complex(-k0, 0.0))


def evanescent_modes(s: SourceScenario) -> tuple[WaveMode, WaveMode]:
    """(+i*q0, -i*q0) for a below-the-step scenario."""
    if s.regime is not Regime.BELOW:
        raise WrongRegimeError("evanescent modes exist below the step only")
    q0 = derive_wavenumber(s)
    return WaveMode(complex(0.0, q0)), WaveMode(complex(0.0, -q0))


@dataclass(frozen=True)
class MArgument:
    """y_q with its polar data and series-branch classification.

    ``phase`` is normalized to (-pi, pi]. ``boundary`` flags a phase within
    PHASE_BOUNDARY_TOL of +-pi/2, where the classification is a tie broken
    in favor of the principal branch (the principal series stays finite
    there while exp(y^2) is purely transitional).
    """

    y: complex
    magnitude: float
    phase: float
    branch: Branch
    boundary: bool = False


def classify_phase(phase: float) -> tuple[Branch, bool]:
    """Branch for a phase in (-pi, pi]: principal on (-pi/2, pi/2), else
    exponential (the paper-interval (pi/2, 3pi/2) taken mod 2*pi)."""
    if abs(abs(phase) - 0.5 * math.pi) <= PHASE_BOUNDARY_TOL:
        return Branch.PRINCIPAL, True
    if -0.5 * math.pi < phase < 0.5 * math.pi:
        return Branch.PRINCIPAL, False
    return Branch.EXPONENTIAL, False


def argument_y(x: float, q: WaveMode, t: float, s: SourceScenario) -> MArgument:
    """y_q = exp(-i pi/4) sqrt(m/2 hbar t) [x - (hbar q / m) t]."""
    if not t > 0.0:
        raise ArgumentDomainError("t must be positive (the source turns on at t = 0)")
    if x < 0.0:
        raise ArgumentDomainError("x must be non-negative (interior of the step)")
    root = math.sqrt(s.mass / (2.0 * s.hbar * t))
    y = cmath.exp(-0.25j * math.pi) * root * (x - (s.hbar * q.q / s.mass) * t)
    phase = cmath.phase(y)
    branch, boundary = classify_phase(phase)
    return MArgument(y=y, magnitude=abs(y), phase=phase, branch=branch, boundary=boundary)


def _quadratic_phase(x: float, t: float, s: SourceScenario) -> complex:
    return cmath.exp(0.5j * s.mass * x * x / (s.hbar * t))


def m_direct(x: float, q: WaveMode, t: float, s: SourceScenario) -> complex:
    """M(x, q, t) through the Faddeeva kernel (production path)."""
    arg = argument_y(x, q, t, s)
    return 0.5 * _quadratic_phase(x, t, s) * faddeeva_w(1j * arg.y)


def m_series(
    y: MArgument, n_terms: int, x: float, t: float, s: SourceScenario
) -> complex:
    """Truncated large-argument series for M(y_q); y must come from
    argument_y(x, q, t, s) for the same (x, t).

    Principal branch: (1/2) e^{i m x^2/2 hbar t} [1/(sqrt(pi) y) - 1/(2 sqrt(pi) y^3)].
    Exponential branch: the same plus the 2 exp(y^2) term. Only one or two
    series terms are supported; note the 1/2 on the second coefficient,
    which the asymptotics of w(iy) require (checked against m_direct).
    """
    if n_terms not in (1, 2):
        raise SeriesDomainError("n_terms must be 1 or 2")
    if y.magnitude < 1.0:
        raise SeriesDomainError("series requires |y| >= 1")
    inv = 1.0 / (SQRT_PI * y.y)
    series = inv
    if n_terms == 2:
        series -= inv / (2.0 * y.y * y.y)
    if y.branch is Branch.EXPONENTIAL:
        series += 2.0 * cmath.exp(y.y * y.y)
    return 0.5 * _quadratic_phase(x, t, s) * series


def m_one_term_pulse_pieces(
    x: float, t: float, s: SourceScenario
) -> tuple[complex, complex]:
    """One-term approximants for the two evanescent M-functions.

    Returns (piece for -i*q0, piece for +i*q0):
        M(y_{-iq0}) ~ (1/2) e^{i m x^2/2 hbar t} [1/(sqrt(pi) y_{-iq0})]
        M(y_{+iq0}) ~ (1/2) e^{i m x^2/2 hbar t} [2 e^{y^2} + 1/(sqrt(pi) y_{+iq0})]
    Their sum times e^{-iVt} is exactly the stationary-plus-pulse split of
    the full solution (an algebraic identity, tested as such).
    """
    if s.regime is not Regime.BELOW:
        raise WrongRegimeError("pulse pieces are defined below the barrier only")
    if not x > 0.0:
        raise ArgumentDomainError("x must be positive")
    plus, minus = evanescent_modes(s)
    y_p = argument_y(x, plus, t, s).y
    y_m = argument_y(x, minus, t, s).y
    pref = 0.5 * _quadratic_phase(x, t, s)
    piece_minus = pref * (1.0 / (SQRT_PI * y_m))
    piece_plus = pref * (2.0 * cmath.exp(y_p * y_p) + 1.0 / (SQRT_PI * y_p))
    return piece_minus, piece_plus
