import cmath
import math

import numpy as np
import pytest

from stepwave import oracle as orc
from stepwave.units import NATURAL, SourceScenario, group_velocity, traversal_time
from stepwave.wavefield import psi_field


def _final_error(s, grid, x_max):
    states = orc.cn_evolve(s, grid)
    final = states[-1]
    xs = np.linspace(0.0, grid.L, grid.nx)
    win = xs <= x_max
    exact = np.array(
        [
            psi_field(float(x), final.t, s)
            if x > 0
            else cmath.exp(-1j * s.omega0 * final.t)
            for x in xs[win]
        ]
    )
    return float(np.linalg.norm(final.psi[win] - exact) / np.linalg.norm(exact))


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        orc.GridSpec(L=0.0, nx=128, dt=1e-3, n_steps=10)
    with pytest.raises(ValueError):
        orc.GridSpec(L=10.0, nx=32, dt=1e-3, n_steps=10)
    with pytest.raises(ValueError):
        orc.GridSpec(L=10.0, nx=128, dt=0.0, n_steps=10)
    with pytest.raises(ValueError):
        orc.GridSpec(L=10.0, nx=128, dt=1e-3, n_steps=0)


def test_preflight_rejects_uncontained_front(below_natural):
    grid = orc.GridSpec(L=5.0, nx=128, dt=1e-2, n_steps=1000)  # front = 30
    with pytest.raises(orc.PreflightError):
        orc.preflight(below_natural, grid)


def test_preflight_rejects_oversized_dt(below_natural):
    grid = orc.GridSpec(L=60.0, nx=128, dt=10.0, n_steps=1)
    with pytest.raises(orc.PreflightError):
        orc.preflight(below_natural, grid)


def test_comparison_window_shrinks_and_raises(below_natural):
    ok = orc.GridSpec(L=60.0, nx=961, dt=5e-4, n_steps=3000)
    assert orc.comparison_window(below_natural, ok) > 1.0
    # Fine grid + long run: grid-scale reflections cover the domain.
    bad = orc.GridSpec(L=60.0, nx=3841, dt=5e-4, n_steps=4400)
    with pytest.raises(orc.PreflightError):
        orc.comparison_window(below_natural, bad)


def test_zero_amplitude_source_stays_zero(below_natural):
    grid = orc.GridSpec(L=60.0, nx=128, dt=1e-3, n_steps=50)
    states = orc.cn_evolve(below_natural, grid, source_amplitude=0.0)
    assert all(np.all(st.psi == 0) for st in states)


def test_boundary_values_exact(below_natural):
    grid = orc.GridSpec(L=60.0, nx=128, dt=1e-3, n_steps=40)
    states = orc.cn_evolve(below_natural, grid, snapshot_stride=10)
    for st in states[1:]:
        assert st.psi[0] == cmath.exp(-1j * below_natural.omega0 * st.t)
        assert st.psi[-1] == 0.0
    assert states[0].psi[0] == 0.0  # pre-onset


def test_free_propagation_matches_analytic():
    s = SourceScenario(units=NATURAL, V0=0.0, E0=1.0)
    grid = orc.GridSpec(L=60.0, nx=3841, dt=1.5 / 12224, n_steps=12224)
    err = _final_error(s, grid, 3.0 * group_velocity(s) * grid.t_final)
    assert err <= 1e-3


def test_below_barrier_convergence_pair(below_natural):
    window = 3.0 * group_velocity(below_natural) * 1.5
    coarse = _final_error(
        below_natural, orc.GridSpec(L=60.0, nx=961, dt=1.5 / 3056, n_steps=3056), window
    )
    fine = _final_error(
        below_natural, orc.GridSpec(L=60.0, nx=1921, dt=1.5 / 6112, n_steps=6112), window
    )
    assert 3.0 <= coarse / fine <= 5.0


def test_interior_unitarity_with_frozen_source(below_natural):
    dt = 1e-3
    grid = orc.GridSpec(L=60.0, nx=512, dt=dt, n_steps=400)
    states = orc.cn_evolve(
        below_natural, grid, snapshot_stride=1, source_off_after=0.2
    )
    dx = grid.dx
    norms = [orc.interior_norm(st, dx) for st in states if st.t >= 0.25]
    for a, b in zip(norms, norms[1:]):
        assert abs(b - a) <= 1e-10 * max(a, 1e-30)


def test_talbot_boundary_value(below_natural):
    got = orc.talbot_invert(0.0, 3.7, below_natural, 64)
    assert abs(got - cmath.exp(-1j * below_natural.omega0 * 3.7)) <= 1e-8


def test_talbot_matches_analytic_below(below_natural):
    x = 2.0
    t = traversal_time(below_natural, x)
    exact = psi_field(x, t, below_natural)
    got = orc.talbot_invert(x, t, below_natural, 64)
    assert abs(got - exact) <= 1e-6 * abs(exact)


def test_talbot_matches_analytic_above(above_natural):
    exact = psi_field(3.0, 2.0, above_natural)
    got = orc.talbot_invert(3.0, 2.0, above_natural, 64)
    assert abs(got - exact) <= 1e-6 * abs(exact)


def test_talbot_converges_with_nodes(below_natural):
    x, t = 3.0, 2.5
    exact = psi_field(x, t, below_natural)
    errs = [
        abs(orc.talbot_invert(x, t, below_natural, n) - exact) / abs(exact)
        for n in (16, 32, 64)
    ]
    assert errs[2] < errs[0]
    assert errs[2] <= 1e-6


def test_talbot_input_validation(below_natural):
    with pytest.raises(ValueError):
        orc.talbot_invert(1.0, 0.0, below_natural)
    with pytest.raises(ValueError):
        orc.talbot_invert(-1.0, 1.0, below_natural)
    with pytest.raises(ValueError):
        orc.talbot_invert(1.0, 1.0, below_natural, n_nodes=4)
