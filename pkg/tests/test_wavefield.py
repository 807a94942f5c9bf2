import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from stepwave import wavefield as wf
from stepwave.moshinsky import ArgumentDomainError, argument_y, evanescent_modes, propagating_modes
from stepwave.units import (
    NATURAL,
    SourceScenario,
    WrongRegimeError,
    derive_wavenumber,
    group_velocity,
    penetration_length,
)

positive_times = st.floats(min_value=0.05, max_value=50.0)


def test_boundary_recovery(below_natural, above_natural):
    for s in (below_natural, above_natural):
        x = 1e-9 / derive_wavenumber(s)
        for t in np.logspace(-2, 1, 16):
            psi = wf.psi_field(x, float(t), s)
            assert abs(psi - cmath.exp(-1j * s.omega0 * t)) <= 1e-6


def test_exact_origin_limit(below_natural, above_natural):
    for s in (below_natural, above_natural):
        psi = wf.psi_field(0.0, 3.21, s)
        assert psi == cmath.exp(-1j * s.omega0 * 3.21)


def test_regime_guards(below_natural, above_natural):
    with pytest.raises(WrongRegimeError):
        wf.psi_above(1.0, 1.0, below_natural)
    with pytest.raises(WrongRegimeError):
        wf.psi_below(1.0, 1.0, above_natural)
    with pytest.raises(ArgumentDomainError):
        wf.psi_below(1.0, 0.0, below_natural)


def test_above_stationary_density(above_natural):
    # Density tends to 1; the spatial phase is the outgoing e^{+i k0 x}.
    s = above_natural
    k0 = derive_wavenumber(s)
    t = 2000.0
    for x in (1.0, 5.0):
        psi = wf.psi_above(x, t, s)
        assert abs(psi) ** 2 == pytest.approx(1.0, abs=0.05)
        target = cmath.exp(1j * k0 * x) * cmath.exp(-1j * s.omega0 * t)
        assert abs(psi - target) <= 0.05


def test_above_main_front_bracket(above_natural):
    v = group_velocity(above_natural)
    x_i = 20.0
    t_sc = x_i / v
    assert abs(wf.psi_above(x_i, 0.5 * t_sc, above_natural)) ** 2 < 0.1
    assert abs(wf.psi_above(x_i, 1.5 * t_sc, above_natural)) ** 2 > 0.5


def test_below_stationary_convergence(below_natural):
    s = below_natural
    _, minus = evanescent_modes(s)
    for x in (0.5, 1.5, 3.0):
        t = 1900.0
        assert argument_y(x, minus, t, s).magnitude > 30.0
        dens = abs(wf.psi_below(x, t, s)) ** 2
        stat = math.exp(-2.0 * x)
        assert abs(dens - stat) <= 0.05 * stat


def test_psi_stationary_values(below_natural, above_natural):
    assert wf.psi_stationary(0.0, below_natural) == 1.0
    xp = penetration_length(below_natural)
    amp = wf.psi_stationary(xp, below_natural)
    assert abs(amp) == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert abs(amp) ** 2 == pytest.approx(math.exp(-2.0), rel=1e-12)
    assert abs(wf.psi_stationary(7.3, above_natural)) ** 2 == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(ValueError):
        wf.psi_stationary(-1.0, below_natural)


@given(
    st.floats(min_value=0.1, max_value=40.0),
    positive_times,
)
def test_pulse_amplitude_matches_closed_form_density(x, t):
    s = SourceScenario(units=NATURAL, V0=1.0, E0=0.5)
    dens = wf.pulse_density(x, t, s)
    assert abs(wf.psi_transient_pulse(x, t, s)) ** 2 == pytest.approx(dens, rel=1e-12)


def test_pulse_density_peak_value(below_natural):
    # At x = v t the density equals 1/(2 pi q0 x).
    for t in (3.0, 12.0):
        x = group_velocity(below_natural) * t
        assert wf.pulse_density(x, t, below_natural) == pytest.approx(
            1.0 / (2.0 * math.pi * derive_wavenumber(below_natural) * x), rel=1e-12
        )


def test_pulse_density_large_time_decay(below_natural):
    x = 4.0
    d1 = wf.pulse_density(x, 100.0, below_natural)
    d2 = wf.pulse_density(x, 200.0, below_natural)
    assert d1 / d2 == pytest.approx(8.0, rel=0.1)  # 1/t^3 tail


def test_pulse_density_zero_at_origin(below_natural):
    assert wf.pulse_density(0.0, 1.0, below_natural) == 0.0


@given(
    st.floats(min_value=0.1, max_value=20.0),
    st.floats(min_value=0.1, max_value=20.0),
    st.floats(min_value=0.1, max_value=20.0),
)
def test_pulse_density_scaling_exact(x, t, eta):
    s = SourceScenario(units=NATURAL, V0=1.0, E0=0.5)
    lhs = eta * wf.pulse_density(eta * x, eta * t, s)
    assert lhs == pytest.approx(wf.pulse_density(x, t, s), rel=1e-13)


def test_pulse_time_argmax_against_grid_scan(below_natural):
    # Independent check of the tau/sqrt(3) law by dense scanning.
    x_f = 9.0
    tau = x_f / group_velocity(below_natural)
    ts = np.linspace(0.1 * tau, 3.0 * tau, 20001)
    dens = [wf.pulse_density(x_f, float(t), below_natural) for t in ts]
    t_best = float(ts[int(np.argmax(dens))])
    assert t_best == pytest.approx(tau / math.sqrt(3.0), rel=1e-3)


def test_pulse_domain_errors(below_natural, above_natural):
    with pytest.raises(WrongRegimeError):
        wf.psi_transient_pulse(1.0, 1.0, above_natural)
    with pytest.raises(ValueError):
        wf.psi_transient_pulse(0.0, 1.0, below_natural)
    with pytest.raises(WrongRegimeError):
        wf.pulse_density(1.0, 1.0, above_natural)


def test_exact_density_near_pulse_prediction(below_natural):
    # Opaque point on the pulse ridge: closed form within 25 percent.
    dens = abs(wf.psi_below(10.0, 10.0, below_natural)) ** 2
    assert dens == pytest.approx(wf.pulse_density(10.0, 10.0, below_natural), rel=0.25)


def test_decomposition_accuracy(below_natural):
    d = wf.psi_decomposed(10.0, 2.4, below_natural)
    assert d.within_validity
    exact = abs(wf.psi_below(10.0, 2.4, below_natural)) ** 2
    assert abs(d.total) ** 2 == pytest.approx(exact, rel=0.05)


def test_decomposition_validity_flag(below_natural):
    assert not wf.psi_decomposed(0.5, 10.0, below_natural).within_validity
    assert not wf.psi_decomposed(10.0, 1.0, below_natural).within_validity
    assert wf.psi_decomposed(10.0, 3.0, below_natural).within_validity


def test_interplay_ratio_limits(below_natural):
    t = 10.0
    assert wf.interplay_ratio(0.05, t, below_natural) > 1e2
    assert wf.interplay_ratio(40.0, t, below_natural) < 1e-2
    assert wf.interplay_ratio(0.0, t, below_natural) == math.inf


def test_interplay_ratio_monotone_before_peak(below_natural):
    t = 10.0
    peak = group_velocity(below_natural) * t
    xs = np.linspace(0.05 * peak, peak, 400)
    ratios = [wf.interplay_ratio(float(x), t, below_natural) for x in xs]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_fluctuation_regime_sign_changes(below_natural):
    # Inside the onset bound the density oscillates around the
    # stationary value before settling.
    x0 = 2.0 * penetration_length(below_natural)
    for x in (0.4 * x0, 0.8 * x0):
        ts = np.linspace(0.05, 60.0, 1200)
        diff = [
            abs(wf.psi_below(float(x), float(t), below_natural)) ** 2
            - math.exp(-2.0 * derive_wavenumber(below_natural) * x)
            for t in ts
        ]
        signs = np.sign(diff)
        changes = int(np.sum(np.abs(np.diff(signs)) > 0))
        assert changes >= 2


def test_field_grids(below_natural):
    grid = wf.sample_space_cut(below_natural, 2.0, [0.0, 0.5, 1.0])
    assert grid.axis is wf.GridAxis.SPACE_CUT_AT_FIXED_T
    assert [s.x for s in grid.samples] == [0.0, 0.5, 1.0]
    for smp in grid.samples:
        assert smp.density == abs(smp.psi) ** 2
    grid = wf.sample_time_cut(below_natural, 1.0, [0.5, 1.5])
    assert grid.fixed_value == 1.0
    with pytest.raises(ValueError):
        wf.sample_space_cut(below_natural, 2.0, [1.0])
    with pytest.raises(ValueError):
        wf.sample_space_cut(below_natural, 2.0, [1.0, 0.5])
    with pytest.raises(ValueError):
        wf.sample_time_cut(below_natural, 1.0, [0.0, 1.0])
