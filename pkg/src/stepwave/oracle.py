"""Independent ground truth for the analytic pipeline.

Two cross-checks that share nothing with the M-function path:

* a driven-boundary Crank-Nicolson integrator of the Schrodinger equation
  on [0, L] with psi(0, t) = exp(-i omega0 t), psi(L, t) = 0, V = V0 on the
  interior (the source sits exactly at the step edge);
* a numerical inverse Laplace transform of the closed-form transform
  psi_bar(x; s) = exp(i p x) / (s + i omega0), p = sqrt(2m(is - V)/hbar),
  evaluated on a deformed (Talbot) contour after shifting out the step
  frequency and extracting the stationary pole analytically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from stepwave.units import Regime, SourceScenario, derive_wavenumber, group_velocity

# Accuracy heuristic dt <= CFL_C * (m/hbar) * dx^2. Crank-Nicolson is
# unconditionally stable; the bound keeps the time error commensurate with
# the spatial one while still admitting dt ~ dx refinement ladders.
CFL_C = 16.0

# The far wall is a hard wall; nothing may reach it. Signal fronts are
# bounded by FRONT_SPEED_FACTOR times the scenario group velocity.
FRONT_SPEED_FACTOR = 3.0

# Grid-scale content (the sharp onset excites it) travels at up to about
# GRID_SPEED_FACTOR * hbar / (m * dx) on the discrete grid; comparisons
# against the open-domain analytic field are trustworthy only where its
# wall reflection cannot have returned.
GRID_SPEED_FACTOR = 0.9

# Talbot contour s(theta) = (sigma/t) * theta * (cot theta + i*lam),
# theta in (-pi, pi), trapezoid rule at midpoints. sigma trades quadrature
# reach against the exp(sigma) round-off floor; it grows with the node
# count and is capped so the floor stays near 1e-8 of the scale.
TALBOT_LAMBDA = 1.0
TALBOT_SIGMA_PER_NODE = 0.4
TALBOT_SIGMA_MAX = 20.0


class PreflightError(ValueError):
    """Grid fails the containment or accuracy preflight."""


class ContourError(ValueError):
    """Talbot contour would touch a singularity of the transform."""


@dataclass(frozen=True)
class GridSpec:
    """Discretization of [0, L]: nx points, n_steps steps of size dt."""

    L: float
    nx: int
    dt: float
    n_steps: int

    def __post_init__(self) -> None:
        if not self.L > 0.0:
            raise ValueError("L must be positive")
        if self.nx < 64:
            raise ValueError("nx must be at least 64")
        if not self.dt > 0.0:
            raise ValueError("dt must be positive")
        if self.n_steps < 1:
            raise ValueError("n_steps must be at least 1")

    @property
    def dx(self) -> float:
        return self.L / (self.nx - 1)

    @property
    def t_final(self) -> float:
        return self.n_steps * self.dt


@dataclass(frozen=True)
class CNState:
    """Field snapshot; psi[0] carries the driven boundary value exactly."""

    t: float
    psi: np.ndarray


def preflight(s: SourceScenario, g: GridSpec) -> None:
    """Reject grids whose far wall could be reached, or whose dt is out of
    proportion with dx^2."""
    front = FRONT_SPEED_FACTOR * group_velocity(s) * g.t_final
    if front >= g.L:
        raise PreflightError(
            f"signal front bound {front:g} reaches the far wall L={g.L:g}; "
            "enlarge L or shorten the run"
        )
    dt_max = CFL_C * (s.mass / s.hbar) * g.dx**2
    if g.dt > dt_max:
        raise PreflightError(
            f"dt={g.dt:g} exceeds the accuracy heuristic {dt_max:g} "
            f"(CFL_C={CFL_C:g})"
        )


def cn_evolve(
    s: SourceScenario,
    g: GridSpec,
    snapshot_stride: int | None = None,
    source_amplitude: float = 1.0,
    source_off_after: float | None = None,
) -> list[CNState]:
    """Crank-Nicolson evolution of the driven-boundary problem.

    Second order in dt and dx. The boundary feeds the interior update at the
    step midpoint t_n + dt/2 (the sharp switch-on is represented by the
    first midpoint value rather than an averaged jump). Snapshots are taken
    every ``snapshot_stride`` steps (default: only t=0 and the final step).
    ``source_off_after``: boundary frozen to zero for t >= that time.
    """
    preflight(s, g)
    nx = g.nx
    dx = g.dx
    dt = g.dt
    hbar, m = s.hbar, s.mass
    omega0 = s.omega0
    kin = hbar * hbar / (2.0 * m * dx * dx)
    lam = dt / (2.0 * hbar)
    diag_a = 1.0 + 1j * lam * (2.0 * kin + s.V0)
    off_a = -1j * lam * kin
    diag_b = 1.0 - 1j * lam * (2.0 * kin + s.V0)
    off_b = 1j * lam * kin

    n_int = nx - 2
    ab = np.zeros((3, n_int), dtype=complex)
    ab[0, 1:] = off_a
    ab[1, :] = diag_a
    ab[2, :-1] = off_a

    def boundary(t: float) -> complex:
        if t <= 0.0:
            return 0.0
        if source_off_after is not None and t >= source_off_after:
            return 0.0
        return source_amplitude * cmath.exp(-1j * omega0 * t)

    psi = np.zeros(nx, dtype=complex)
    states = [CNState(t=0.0, psi=psi.copy())]
    interior = psi[1:-1].copy()
    for n in range(g.n_steps):
        t_n = n * dt
        t_mid = t_n + 0.5 * dt
        rhs = diag_b * interior
        rhs[1:] += off_b * interior[:-1]
        rhs[:-1] += off_b * interior[1:]
        # Driven Dirichlet value enters both time levels at the midpoint;
        # the far wall contributes nothing (psi = 0 there).
        rhs[0] += (off_b - off_a) * boundary(t_mid)
        interior = solve_banded((1, 1), ab, rhs)
        if not np.all(np.isfinite(interior)):
            raise RuntimeError("tridiagonal solve produced non-finite values")
        t_next = t_n + dt
        psi[1:-1] = interior
        psi[0] = boundary(t_next)
        psi[-1] = 0.0
        if (snapshot_stride and (n + 1) % snapshot_stride == 0) or n + 1 == g.n_steps:
            states.append(CNState(t=t_next, psi=psi.copy()))
    return states


def interior_norm(state: CNState, dx: float) -> float:
    """Discrete L2 norm of the interior field."""
    return math.sqrt(float(np.sum(np.abs(state.psi[1:-1]) ** 2)) * dx)


def comparison_window(s: SourceScenario, g: GridSpec) -> float:
    """Largest x up to which the final state may be compared against the
    open-domain analytic solution.

    Two effects cap the window: beyond ~FRONT_SPEED_FACTOR * v * t the field
    is an under-resolved fast tail, and wall reflections of grid-scale
    onset content pollute positions it can round-trip to within t_final.
    """
    v_grid = GRID_SPEED_FACTOR * s.hbar / (s.mass * g.dx)
    x_round_trip = 2.0 * g.L - v_grid * g.t_final
    x_front = FRONT_SPEED_FACTOR * group_velocity(s) * g.t_final
    window = min(0.5 * g.L, x_front, x_round_trip)
    if window <= g.dx:
        raise PreflightError(
            "no trustworthy comparison window: wall reflections of grid-scale "
            "content cover the domain; enlarge L or shorten the run"
        )
    return window


def _talbot_nodes(t: float, n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    sigma = min(TALBOT_SIGMA_PER_NODE * n_nodes, TALBOT_SIGMA_MAX)
    theta = (np.arange(n_nodes) + 0.5) * (2.0 * math.pi / n_nodes) - math.pi
    cot = np.cos(theta) / np.sin(theta)
    r = sigma / t
    nodes = r * theta * (cot + 1j * TALBOT_LAMBDA)
    dsdtheta = r * (cot - theta / np.sin(theta) ** 2 + 1j * TALBOT_LAMBDA)
    return nodes, dsdtheta


def talbot_invert(x: float, t: float, s: SourceScenario, n_nodes: int = 64) -> complex:
    """psi(x, t) by numerical Bromwich inversion on a Talbot contour.

    After the shift s -> s - iV the branch cut of p lies along the negative
    real axis (canonical Talbot geometry) and the only pole, at i(V-omega0),
    is removed by extracting its residue analytically; the residue term is
    exactly the stationary wave. The branch of p has Im(p) >= 0 on the
    Bromwich line, so exp(ipx) is the outgoing/decaying solution.
    """
    if not t > 0.0:
        raise ValueError("t must be positive")
    if x < 0.0:
        raise ValueError("x must be non-negative")
    if n_nodes < 8:
        raise ValueError("need at least 8 contour nodes")
    hbar, m = s.hbar, s.mass
    beta = 2.0 * m / hbar
    omega0 = s.omega0
    V = s.potential_frequency
    d_omega = V - omega0  # pole of the shifted transform at i*d_omega
    root_beta = math.sqrt(beta)
    quarter_turn = cmath.exp(0.25j * math.pi)

    def p_of(sp: complex) -> complex:
        return quarter_turn * root_beta * cmath.sqrt(sp)

    p0 = p_of(1j * d_omega)
    if s.regime is Regime.BELOW:
        # Continuity fix of the residue branch: p0 = +i q0 exactly.
        p0 = 1j * derive_wavenumber(s)
    else:
        p0 = complex(derive_wavenumber(s), 0.0)

    nodes, weights = _talbot_nodes(t, n_nodes)
    pole = 1j * d_omega
    scale = abs(nodes[0]) + abs(pole)
    total = 0.0 + 0.0j
    stat_factor = cmath.exp(1j * p0 * x)
    for sp, dsd in zip(nodes, weights):
        sp = complex(sp)
        den = sp - pole
        if abs(den) < 1e-13 * scale or (sp.real < 0.0 and abs(sp.imag) < 1e-13 * scale):
            raise ContourError(
                "contour node touches the transform's pole or branch cut; "
                "change n_nodes"
            )
        p = p_of(sp)
        total += (cmath.exp(1j * p * x) - stat_factor) / den * cmath.exp(sp * t) * complex(dsd)
    integral = total * (2.0 * math.pi / n_nodes) / (2.0j * math.pi)
    stationary = stat_factor * cmath.exp(1j * d_omega * t)
    return cmath.exp(-1j * V * t) * (stationary + integral)
