"""Pulse shape, closed-form potential, and impulse checks."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from pairvortex import PulseConfig, electric_field, net_impulse, vector_potential

CFG = PulseConfig(e0_ratio=0.1, omega=1.0, n_cycles=3)


def quad_potential(cfg, t):
    """Adaptive-quadrature oracle for the potential, independent of the closed form."""
    val, _ = quad(lambda s: electric_field(cfg, s), 0.0, t, limit=400, epsabs=1e-13, epsrel=1e-13)
    return val


class TestElectricField:
    def test_zero_at_start(self):
        assert electric_field(CFG, 0.0) == 0.0

    def test_midpoint_value(self):
        # envelope is 1 and the carrier is cos(3*pi) = -1 at the pulse center
        t_mid = 0.5 * CFG.duration
        assert electric_field(CFG, t_mid) == pytest.approx(-0.1, abs=1e-15)

    def test_zero_outside_support(self):
        assert electric_field(CFG, -0.5) == 0.0
        assert electric_field(CFG, CFG.duration + 1e-9) == 0.0
        assert electric_field(CFG, 10 * CFG.duration) == 0.0

    def test_amplitude_bound(self):
        t = np.linspace(-1.0, CFG.duration + 1.0, 20001)
        assert np.max(np.abs(electric_field(CFG, t))) <= CFG.e0_ratio + 1e-15

    def test_array_matches_scalar(self):
        t = np.linspace(0.0, CFG.duration, 57)
        arr = electric_field(CFG, t)
        scalars = [electric_field(CFG, float(ti)) for ti in t]
        assert arr == pytest.approx(scalars, rel=1e-13, abs=1e-16)


class TestVectorPotential:
    def test_zero_at_start(self):
        assert vector_potential(CFG, 0.0) == 0.0
        assert vector_potential(CFG, -3.0) == 0.0

    def test_vanishes_after_pulse(self):
        assert abs(vector_potential(CFG, CFG.duration)) < 1e-12
        assert abs(vector_potential(CFG, CFG.duration + 5.0)) < 1e-12

    def test_midpoint_against_quadrature(self):
        t_mid = 0.5 * CFG.duration
        assert vector_potential(CFG, t_mid) == pytest.approx(quad_potential(CFG, t_mid), abs=1e-10)

    @pytest.mark.parametrize("seed", [0, 1])
    def test_closed_form_against_quadrature_random_times(self, seed):
        rng = np.random.default_rng(seed)
        cfg = CFG if seed == 0 else PulseConfig(0.37, 1.7, 4)
        times = rng.uniform(0.0, cfg.duration, 500)
        for t in times:
            assert abs(vector_potential(cfg, t) - quad_potential(cfg, t)) < 1e-10

    def test_amplitude_scales_inversely_with_frequency(self):
        t = np.linspace(0.0, CFG.duration, 4001)
        peak1 = np.max(np.abs(vector_potential(CFG, t)))
        cfg2 = PulseConfig(CFG.e0_ratio, 2.0 * CFG.omega, CFG.n_cycles)
        t2 = np.linspace(0.0, cfg2.duration, 4001)
        peak2 = np.max(np.abs(vector_potential(cfg2, t2)))
        assert peak2 == pytest.approx(0.5 * peak1, rel=0.05)

    def test_array_matches_scalar(self):
        t = np.linspace(-0.5, CFG.duration + 0.5, 41)
        arr = vector_potential(CFG, t)
        scalars = [vector_potential(CFG, float(ti)) for ti in t]
        assert arr == pytest.approx(scalars, rel=1e-13, abs=1e-16)


class TestNetImpulse:
    def test_three_cycles(self):
        assert abs(net_impulse(CFG)) < 1e-12

    def test_zero_field(self):
        assert net_impulse(PulseConfig(0.0, 1.0, 3)) == 0.0

    def test_scaled_pulse(self):
        assert abs(net_impulse(PulseConfig(0.5, 2.0, 3))) < 1e-12

    @pytest.mark.parametrize("n", [3, 4, 5, 7])
    def test_more_cycles(self, n):
        assert abs(net_impulse(PulseConfig(0.2, 1.3, n))) < 1e-12


class TestPulseConfig:
    def test_rejects_negative_amplitude(self):
        with pytest.raises(ValueError):
            PulseConfig(-0.1, 1.0, 3)

    def test_rejects_nonpositive_frequency(self):
        with pytest.raises(ValueError):
            PulseConfig(0.1, 0.0, 3)

    def test_rejects_short_pulse(self):
        with pytest.raises(ValueError):
            PulseConfig(0.1, 1.0, 2)

    def test_duration(self):
        assert CFG.duration == pytest.approx(6.0 * math.pi)
