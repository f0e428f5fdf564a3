import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multijcm.dynamics import JointState, ModelConfig, evolve, evolve_eha
from multijcm.errors import ConfigError, HeadroomError, NormDriftError
from multijcm.observables import (
    OBSERVABLES,
    FluctuationPair,
    TimeSeries,
    atomic_inversion,
    mean_photon_number,
    moment,
    normal_fluctuations,
    quadrature_variances,
    reference_a_a2_m1,
    reference_inversion,
    reference_inversion_m1,
    rescaled_q1,
    rescaled_q2,
    squared_fluctuations,
    sweep,
)
from multijcm.states import (
    AtomState,
    FieldState,
    coherent_state,
    k_photon_coherent_state,
    natural_phenomenon_class,
    orthogonal_even_coherent_state,
    parity_coherent_state,
    vacuum,
)


def dense_moment(joint: JointState, s1: int, s2: int) -> complex:
    """<a^+^s2 a^s1> from explicit annihilation matrices on each atomic level."""
    plus = joint.excited()
    minus = joint.ground()
    out = 0.0
    for psi in (plus, minus):
        dim = psi.size
        a = np.diag(np.sqrt(np.arange(1, dim)), 1)
        op = np.linalg.matrix_power(a.T, s2) @ np.linalg.matrix_power(a, s1)
        out += np.vdot(psi, op @ psi)
    return complex(out)


ATOMS = [AtomState(0, 0), AtomState(math.pi / 2, 0), AtomState(math.pi / 4, math.pi / 3)]


class TestMoment:
    def test_norm(self):
        j = evolve(coherent_state(2.0), ATOMS[2], ModelConfig(m=2), 3.0)
        assert moment(j, 0, 0).real == pytest.approx(1.0, abs=1e-14)

    def test_initial_mean(self, coherent5, excited, eha1):
        assert moment(evolve(coherent5, excited, eha1, 0.0), 1, 1).real == pytest.approx(25.0, abs=1e-10)

    def test_support_selection(self, excited, eha1):
        field = k_photon_coherent_state(1.5, 3)
        for T in (0.0, 1.3, 17.0):
            assert abs(moment(evolve(field, excited, eha1, T), 1, 0)) <= 1e-12

    @pytest.mark.parametrize("atom", ATOMS)
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_matches_dense_operators(self, atom, m):
        j = evolve(coherent_state(1.7), atom, ModelConfig(m=m), 2.9)
        for s1, s2 in [(1, 0), (2, 0), (1, 1), (2, 2), (4, 0), (3, 1)]:
            assert moment(j, s1, s2) == pytest.approx(dense_moment(j, s1, s2), abs=1e-10)

    def test_headroom(self, excited, eha1):
        # a field filling its cutoff leaves no room for a shift
        flat = FieldState.from_amplitudes(np.ones(4))
        j = evolve(flat, excited, eha1, 0.0)
        with pytest.raises(HeadroomError):
            moment(j, 2, 0)
        with pytest.raises(HeadroomError):
            moment(j, 9, 0)

    def test_negative_order(self, excited, eha1):
        with pytest.raises(ConfigError):
            moment(evolve(vacuum(), excited, eha1, 0.0), -1, 0)


class TestInversion:
    def test_pure_atoms(self, coherent5, eha1):
        assert atomic_inversion(evolve(coherent5, AtomState(0, 0), eha1, 0.0)) == pytest.approx(1.0)
        assert atomic_inversion(evolve(coherent5, AtomState(math.pi / 2, 0), eha1, 0.0)) == pytest.approx(-1.0)

    @pytest.mark.parametrize("T", [0.0, 0.4, 1.0, 2.5])
    def test_vacuum_rabi(self, T, excited, eha1):
        assert atomic_inversion(evolve(vacuum(), excited, eha1, T)) == pytest.approx(math.cos(2 * T), abs=1e-14)

    @pytest.mark.parametrize("atom", ATOMS)
    @pytest.mark.parametrize("m", [1, 2, 4])
    def test_series_path(self, atom, m):
        field = coherent_state(2.2)
        for T in (0.0, 0.7, 9.1):
            direct = atomic_inversion(evolve(field, atom, ModelConfig(m=m), T))
            assert direct == pytest.approx(reference_inversion(field, atom, m, T), abs=1e-10)

    def test_m1_series(self, coherent5, excited, eha1):
        for T in (0.3, 12.0, 31.0):
            assert atomic_inversion(evolve(coherent5, excited, eha1, T)) == pytest.approx(
                reference_inversion_m1(coherent5, T), abs=1e-10
            )


class TestFluctuations:
    def test_vacuum_quarter_period(self, excited, eha1):
        pair = normal_fluctuations(evolve(vacuum(), excited, eha1, math.pi / 2))
        assert pair.f == pytest.approx(1.0, abs=1e-14)
        assert pair.s == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("alpha", [0.5, 2.0, 5.0])
    def test_coherent_vacuum_level(self, alpha, excited, eha1):
        j = evolve(coherent_state(alpha), excited, eha1, 0.0)
        n, f = normal_fluctuations(j), squared_fluctuations(j)
        for v in (n.f, n.s):
            assert v == pytest.approx(0.0, abs=1e-10 * alpha**2 + 1e-12)
        for v in (f.f, f.s):
            assert v == pytest.approx(0.0, abs=1e-10 * alpha**4 + 1e-12)

    def test_vacuum_squared(self, excited, eha1):
        pair = squared_fluctuations(evolve(vacuum(), excited, eha1, 0.0))
        assert (pair.f, pair.s) == (0.0, 0.0)

    def test_orthogonal_even_reduces(self, ortho7, excited, eha1):
        for T in (0.0, 3.0, 11.2):
            j = evolve(ortho7, excited, eha1, T)
            pair = normal_fluctuations(j)
            n = mean_photon_number(j)
            assert pair.f == pytest.approx(n, abs=1e-10)
            assert pair.s == pytest.approx(n, abs=1e-10)

    def test_three_photon_squared_reduces(self, three_photon, excited, eha1):
        for T in (0.0, 2.0, 20.0):
            j = evolve(three_photon, excited, eha1, T)
            pair = squared_fluctuations(j)
            n2 = moment(j, 2, 2).real
            assert pair.f == pytest.approx(n2, abs=1e-10)
            assert pair.s == pytest.approx(n2, abs=1e-10)

    def test_pair_validation(self):
        with pytest.raises(ConfigError):
            FluctuationPair(0.0, 0.0, 3)
        with pytest.raises(ArithmeticError):
            FluctuationPair(-0.6, 0.0, 1)
        with pytest.raises(ArithmeticError):
            FluctuationPair(float("nan"), 0.0, 2)
        FluctuationPair(-3.0, 0.0, 2)


FIELDS = st.one_of(
    st.builds(coherent_state, st.floats(0.0, 4.0)),
    st.builds(k_photon_coherent_state, st.floats(0.0, 2.0), st.integers(1, 4)),
    st.builds(orthogonal_even_coherent_state, st.floats(0.0, 4.0)),
    st.builds(lambda a, p: parity_coherent_state(a, p), st.floats(0.1, 4.0), st.sampled_from(["even", "odd"])),
)


def config_strategy():
    return st.builds(ModelConfig, m=st.integers(1, 4))


@settings(max_examples=80, deadline=None)
@given(FIELDS, st.floats(0, math.pi), st.floats(0, 2 * math.pi), config_strategy(), st.floats(0, 60))
def test_heisenberg_bounds(field, theta, phi, cfg, T):
    j = evolve(field, AtomState(theta, phi), cfg, T)
    vx, vy = quadrature_variances(j, 1)
    assert vx * vy >= 1 / 16 - 1e-12
    vx2, vy2 = quadrature_variances(j, 2)
    n = mean_photon_number(j)
    assert vx2 * vy2 >= (2 * n + 1) ** 2 / 64 - 1e-10 * max(1.0, n * n)


@settings(max_examples=60, deadline=None)
@given(FIELDS, st.floats(0, math.pi), st.floats(0, 2 * math.pi), config_strategy(), st.floats(0, 60))
def test_excitation_transfer(field, theta, phi, cfg, T):
    atom = AtomState(theta, phi)
    start = evolve(field, atom, cfg, 0.0)
    j = evolve(field, atom, cfg, T)
    lhs = mean_photon_number(j) - mean_photon_number(start)
    rhs = cfg.m / 2 * (atomic_inversion(start) - atomic_inversion(j))
    assert lhs == pytest.approx(rhs, abs=1e-8)


@settings(max_examples=60, deadline=None)
@given(
    st.one_of(
        st.builds(k_photon_coherent_state, st.floats(0.0, 2.0), st.integers(3, 5)),
        st.builds(orthogonal_even_coherent_state, st.floats(0.0, 4.0)),
    ),
    st.floats(0, 60),
)
def test_natural_phenomenon_identity(field, T):
    assert natural_phenomenon_class(field)
    j = evolve(field, AtomState(0, 0), ModelConfig(), T)
    pair = normal_fluctuations(j)
    n = mean_photon_number(j)
    assert pair.f == pytest.approx(n, abs=1e-10)
    assert pair.s == pytest.approx(n, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 4.0), st.floats(0, 40))
def test_reference_a_a2_path(alpha, T):
    field = coherent_state(alpha)
    j = evolve(field, AtomState(0, 0), ModelConfig(), T)
    a, a2 = reference_a_a2_m1(field, T)
    assert a == pytest.approx(moment(j, 1, 0), abs=1e-10)
    assert a2 == pytest.approx(moment(j, 2, 0), abs=1e-10)


class TestReferenceA:
    def test_examples(self):
        field = coherent_state(2.0)
        a, a2 = reference_a_a2_m1(field, 0.0)
        assert a == pytest.approx(2.0, abs=1e-12)
        assert a2 == pytest.approx(4.0, abs=1e-12)
        j = evolve(field, AtomState(0, 0), ModelConfig(), 1.0)
        a, a2 = reference_a_a2_m1(field, 1.0)
        assert a == pytest.approx(moment(j, 1, 0), abs=1e-10)
        assert a2 == pytest.approx(moment(j, 2, 0), abs=1e-10)

    def test_three_photon_zero(self, three_photon):
        assert reference_a_a2_m1(three_photon, 3.0) == (0, 0)


class TestRescaled:
    def test_initial_values(self, coherent5, excited):
        assert rescaled_q1(coherent5, excited, 0.0) == pytest.approx(-1.0, abs=1e-10)
        assert rescaled_q2(coherent5, excited, 0.0) == pytest.approx(-1.0, abs=1e-10)

    def test_time_scaling(self, coherent5, excited):
        T = 6.0
        s1 = normal_fluctuations(evolve_eha(coherent5, excited, ModelConfig(m=3), 4.0)).s
        assert rescaled_q1(coherent5, excited, T) == pytest.approx((s1 - 25) / 25, abs=1e-12)
        s2 = squared_fluctuations(evolve_eha(coherent5, excited, ModelConfig(m=3), 2.0)).s
        assert rescaled_q2(coherent5, excited, T) == pytest.approx((s2 - 625) / 625, abs=1e-12)

    def test_vacuum_rejected(self, excited):
        with pytest.raises(ZeroDivisionError):
            rescaled_q1(vacuum(), excited, 1.0)
        with pytest.raises(ZeroDivisionError):
            rescaled_q2(vacuum(), excited, 1.0)


class TestSweep:
    def test_columns(self, excited, eha1):
        ts = sweep(coherent_state(2.0), excited, eha1, 5.0, 11, ["inversion", "F1", "Q1", "uncertainty_product"])
        assert ts.t_grid.size == 11
        assert ts["inversion"][0] == pytest.approx(1.0)
        assert ts["Q1"][0] == pytest.approx(-1.0)
        assert ts.metadata["m"] == 1 and ts.metadata["steps"] == 11

    def test_all_registered(self, excited):
        ts = sweep(coherent_state(1.0), excited, ModelConfig(m=2), 2.0, 3, list(OBSERVABLES))
        assert set(ts.columns) == set(OBSERVABLES)
        assert all(np.all(np.isfinite(c)) for c in ts.columns.values())

    def test_order_independent(self, excited, eha1):
        field = coherent_state(2.0)
        a = sweep(field, excited, eha1, 5.0, 7, ["F1", "inversion"])
        b = sweep(field, excited, eha1, 5.0, 7, ["inversion", "F1"])
        for name in ("F1", "inversion"):
            np.testing.assert_array_equal(a[name], b[name])

    @pytest.mark.parametrize("t_max,steps", [(0.0, 2), (5.0, 1), (-1.0, 5), (5.0, 2.5)])
    def test_bad_grid(self, t_max, steps, excited, eha1):
        with pytest.raises(ConfigError):
            sweep(vacuum(), excited, eha1, t_max, steps, ["inversion"])

    def test_unknown_observable(self, excited, eha1):
        with pytest.raises(ConfigError, match="nope"):
            sweep(vacuum(), excited, eha1, 1.0, 2, ["nope"])
        with pytest.raises(ConfigError):
            sweep(vacuum(), excited, eha1, 1.0, 2, [])

    def test_timeseries_validation(self):
        with pytest.raises(ConfigError):
            TimeSeries(np.array([0.0, 0.0]), {})
        with pytest.raises(ConfigError):
            TimeSeries(np.array([0.0, 1.0]), {"x": np.zeros(3)})

    def test_norm_drift_error_type(self):
        assert issubclass(NormDriftError, ArithmeticError)
