import math

import pytest
from hypothesis import given, strategies as st

from stepwave.units import (
    EV_NM_FS,
    HBAR_EV_FS,
    NATURAL,
    DegenerateScenarioError,
    Regime,
    SourceScenario,
    UnitSystem,
    WrongRegimeError,
    convert_scenario,
    derive_wavenumber,
    group_velocity,
    penetration_length,
    traversal_time,
    unit_system,
)

# Independent arithmetic for the electron-scale constants.
HBAR_SQ_OVER_2M = HBAR_EV_FS**2 / (2.0 * 510998.95 / 299.792458**2)


def test_builtin_systems():
    assert NATURAL.hbar == 1.0 and NATURAL.mass == 1.0
    assert EV_NM_FS.hbar == 0.6582119569
    assert EV_NM_FS.mass == pytest.approx(5.685630, rel=1e-6)
    assert HBAR_SQ_OVER_2M == pytest.approx(0.03809982, rel=1e-6)


def test_unit_system_lookup():
    assert unit_system("natural") is NATURAL
    custom = unit_system("ev-nm-fs", mass=2.0 * EV_NM_FS.mass)
    assert custom.mass == 2.0 * EV_NM_FS.mass
    with pytest.raises(ValueError):
        unit_system("cgs")
    with pytest.raises(ValueError):
        unit_system("natural", mass=-1.0)
    with pytest.raises(ValueError):
        UnitSystem(hbar=0.0, mass=1.0, label="bad")


def test_regime_dichotomy():
    below = SourceScenario(units=EV_NM_FS, V0=1.0, E0=0.5)
    above = SourceScenario(units=EV_NM_FS, V0=1.0, E0=2.0)
    assert below.regime is Regime.BELOW
    assert above.regime is Regime.ABOVE
    with pytest.raises(DegenerateScenarioError):
        SourceScenario(units=EV_NM_FS, V0=1.0, E0=1.0)
    with pytest.raises(ValueError):
        SourceScenario(units=EV_NM_FS, V0=-0.1, E0=1.0)
    with pytest.raises(ValueError):
        SourceScenario(units=EV_NM_FS, V0=1.0, E0=0.0)


def test_evanescent_wavenumber_ev(below_ev):
    expected = math.sqrt(0.5 / HBAR_SQ_OVER_2M)
    q0 = derive_wavenumber(below_ev)
    assert q0 == pytest.approx(expected, rel=1e-12)
    # Four-digit reference value, recomputed rather than trusted.
    assert q0 == pytest.approx(3.6228, rel=1e-3)


def test_wavenumber_ratio_between_regimes(below_ev, above_ev):
    # (E0 - V0) = 1.0 eV above vs (V0 - E0) = 0.5 eV below.
    assert derive_wavenumber(above_ev) / derive_wavenumber(below_ev) == pytest.approx(
        math.sqrt(2.0), rel=1e-12
    )


def test_free_particle_wavenumber_natural():
    for E in (0.3, 1.0, 4.5):
        s = SourceScenario(units=NATURAL, V0=0.0, E0=E)
        assert derive_wavenumber(s) == pytest.approx(math.sqrt(2.0 * E), rel=1e-12)


def test_group_velocity(below_ev):
    v = group_velocity(below_ev)
    assert v == pytest.approx(0.4194, rel=1e-3)
    # Energy closure: (1/2) m v^2 = V0 - E0.
    assert 0.5 * below_ev.mass * v * v == pytest.approx(0.5, rel=1e-12)


def test_group_velocity_linearity():
    s1 = SourceScenario(units=NATURAL, V0=1.0, E0=0.5)   # q0 = 1
    s2 = SourceScenario(units=NATURAL, V0=2.5, E0=0.5)   # q0 = 2
    assert group_velocity(s1) == pytest.approx(1.0, rel=1e-12)
    assert group_velocity(s2) == pytest.approx(2.0 * group_velocity(s1), rel=1e-12)


def test_penetration_length(below_ev, below_natural, above_ev):
    assert penetration_length(below_ev) == pytest.approx(0.2760, rel=1e-3)
    assert penetration_length(below_natural) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(WrongRegimeError):
        penetration_length(above_ev)


def test_traversal_time(below_ev, below_natural, above_ev):
    v = group_velocity(below_natural)
    assert traversal_time(below_natural, v * 1.0) == pytest.approx(1.0, rel=1e-12)
    assert traversal_time(below_natural, 6.0) == pytest.approx(
        2.0 * traversal_time(below_natural, 3.0), rel=1e-12
    )
    assert traversal_time(below_ev, 8.0) == pytest.approx(19.07, rel=1e-3)
    with pytest.raises(WrongRegimeError):
        traversal_time(above_ev, 1.0)
    with pytest.raises(ValueError):
        traversal_time(below_natural, 0.0)


scenario_energies = st.tuples(
    st.floats(min_value=0.05, max_value=8.0),
    st.floats(min_value=0.05, max_value=8.0),
).filter(lambda ev: abs(ev[0] - ev[1]) > 1e-6 * max(ev))


@given(scenario_energies, st.sampled_from(["natural", "ev-nm-fs"]))
def test_dispersion_consistency(energies, label):
    V0, E0 = energies
    s = SourceScenario(units=unit_system(label), V0=V0, E0=E0)
    k = derive_wavenumber(s)
    lhs = s.hbar * k * k / (2.0 * s.mass)
    assert lhs == pytest.approx(abs(E0 - V0) / s.hbar, rel=1e-12)
    if s.regime is Regime.BELOW:
        assert penetration_length(s) * k == pytest.approx(1.0, rel=1e-12)


@given(scenario_energies, st.floats(min_value=0.01, max_value=100.0))
def test_unit_covariance_roundtrip(energies, scale):
    V0, E0 = energies
    s = SourceScenario(units=EV_NM_FS, V0=V0, E0=E0)
    natural, fwd = convert_scenario(s, NATURAL, energy_scale=scale)
    back, rev = convert_scenario(natural, EV_NM_FS, energy_scale=1.0 / scale)
    assert back.V0 == pytest.approx(s.V0, rel=1e-12)
    assert back.E0 == pytest.approx(s.E0, rel=1e-12)
    assert derive_wavenumber(back) == pytest.approx(derive_wavenumber(s), rel=1e-12)
    assert group_velocity(back) == pytest.approx(group_velocity(s), rel=1e-12)
    # Dimensionless combinations are preserved by the coordinate factors.
    assert derive_wavenumber(natural) * fwd.length == pytest.approx(
        derive_wavenumber(s), rel=1e-12
    )
    assert fwd.length * rev.length == pytest.approx(1.0, rel=1e-12)
    assert fwd.time * rev.time == pytest.approx(1.0, rel=1e-12)
