"""Dynamics contracts: kinematics, the three formulations, and their algebra."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from pairvortex import (
    IntegratorConfig,
    MomentumPoint,
    PulseConfig,
    TwoLevelState,
    bilinears,
    bloch_from_amplitudes,
    dhw_matrix,
    dhw_rhs,
    dhw_vacuum,
    dirac_rhs,
    electric_field,
    integrate,
    kinetic_momentum,
    negative_energy_init,
    omega_eff,
    rabi_eff,
    two_level_rhs,
)
from pairvortex.dynamics import (
    bilinears_grid,
    dhw_ode,
    dhw_ode_grid,
    dhw_vacuum_grid,
    dirac_ode,
    dirac_ode_grid,
    negative_energy_init_grid,
    two_level_ode,
    two_level_ode_grid,
)

CFG = PulseConfig(0.1, 1.0, 3)
ZERO_FIELD = PulseConfig(0.0, 1.0, 3)


def quad_potential(cfg, t):
    val, _ = quad(lambda s: electric_field(cfg, s), 0.0, t, limit=400, epsabs=1e-13, epsrel=1e-13)
    return val


class TestKinematics:
    def test_kinetic_momentum_before_pulse(self):
        assert np.array_equal(kinetic_momentum(MomentumPoint(0, 0), CFG, -1.0), np.zeros(3))

    def test_kinetic_momentum_after_pulse(self):
        q = kinetic_momentum(MomentumPoint(0.5, 1.0), CFG, CFG.duration + 2.0)
        assert q == pytest.approx([1.0, 0.0, 0.5], abs=1e-12)

    def test_kinetic_momentum_midpoint_against_quadrature(self):
        t_mid = 0.5 * CFG.duration
        q = kinetic_momentum(MomentumPoint(0, 0), CFG, t_mid)
        assert q[2] == pytest.approx(-quad_potential(CFG, t_mid), abs=1e-10)
        assert q[0] == 0.0 and q[1] == 0.0

    def test_omega_eff_rest(self):
        assert omega_eff(MomentumPoint(0, 0), ZERO_FIELD, 1.0) == 1.0

    def test_omega_eff_three_four_five(self):
        assert omega_eff(MomentumPoint(0.0, 0.75), ZERO_FIELD, 0.0) == pytest.approx(1.25, abs=1e-15)

    def test_omega_eff_matches_dirac_eigenvalue(self):
        # frozen-time 4x4 Hamiltonian spectrum is the independent oracle
        p = MomentumPoint(0.5, 0.5)
        t_mid = 0.5 * CFG.duration
        q = kinetic_momentum(p, CFG, t_mid)
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sz = np.array([[1, 0], [0, -1]], dtype=complex)
        sp = q[0] * sx + q[2] * sz
        h = np.block([[np.eye(2), sp], [sp, -np.eye(2)]])
        eigs = np.linalg.eigvalsh(h)
        assert omega_eff(p, CFG, t_mid) == pytest.approx(eigs.max(), abs=1e-12)
        assert -omega_eff(p, CFG, t_mid) == pytest.approx(eigs.min(), abs=1e-12)

    def test_rabi_outside_pulse(self):
        assert rabi_eff(MomentumPoint(0.3, 0.7), CFG, -1.0) == 0.0
        assert rabi_eff(MomentumPoint(0.3, 0.7), CFG, CFG.duration + 0.1) == 0.0

    def test_rabi_midpoint_value(self):
        # the coupled field e*E is +0.1 at the pulse center where E = -0.1
        t_mid = 0.5 * CFG.duration
        om = omega_eff(MomentumPoint(0, 0), CFG, t_mid)
        assert rabi_eff(MomentumPoint(0, 0), CFG, t_mid) == pytest.approx(
            0.1 / (2.0 * om * om), rel=1e-12
        )

    def test_rabi_even_in_p_perp(self):
        t = 0.37 * CFG.duration
        a = rabi_eff(MomentumPoint(0.2, 0.9), CFG, t)
        b = rabi_eff(MomentumPoint(0.2, -0.9), CFG, t)
        assert a == b


class TestTwoLevel:
    def test_vacuum_stays_vacuum_up_to_phase(self):
        state = TwoLevelState(1.0, 0.0)
        d = two_level_rhs(state, MomentumPoint(0.4, 0.3), ZERO_FIELD, 1.0)
        om = omega_eff(MomentumPoint(0.4, 0.3), ZERO_FIELD, 1.0)
        assert d.c1 == pytest.approx(-1j * om, abs=1e-15)
        assert d.c2 == 0.0

    def test_norm_derivative_vanishes(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            z = rng.normal(size=4)
            state = TwoLevelState(z[0] + 1j * z[1], z[2] + 1j * z[3])
            p = MomentumPoint(rng.uniform(-2, 2), rng.uniform(-2, 2))
            t = rng.uniform(0, CFG.duration)
            d = two_level_rhs(state, p, CFG, t)
            ddt_norm = 2.0 * (
                (np.conj(state.c1) * d.c1).real + (np.conj(state.c2) * d.c2).real
            )
            assert abs(ddt_norm) < 1e-14

    def test_full_pulse_matches_bispinor_oracle(self):
        from pairvortex.observables import pair_density, pair_density_bispinor

        p = MomentumPoint(0.2, 0.2)
        f_tl = pair_density(p, CFG).f
        f_bis = pair_density_bispinor(p, CFG)
        assert f_tl == pytest.approx(f_bis, abs=1e-6)

    def test_grid_rhs_matches_scalar(self):
        rng = np.random.default_rng(3)
        ppar = rng.uniform(-2, 2, 6)
        pperp = rng.uniform(-2, 2, 6)
        y = rng.normal(size=(6, 2)) + 1j * rng.normal(size=(6, 2))
        t = 0.4 * CFG.duration
        batched = two_level_ode_grid(ppar, pperp, CFG)(t, y)
        for k in range(6):
            single = two_level_ode(MomentumPoint(ppar[k], pperp[k]), CFG)(t, y[k])
            assert np.array_equal(batched[k], single)


class TestDhw:
    def test_matrix_antisymmetric(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            m = dhw_matrix(rng.uniform(-3, 3, 3))
            assert np.max(np.abs(m + m.T)) == 0.0

    def test_matrix_annihilates_vacuum(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            p = MomentumPoint(rng.uniform(-2, 2), rng.uniform(-2, 2))
            q = np.array([p.p_perp, 0.0, p.p_par])
            residual = dhw_matrix(q) @ dhw_vacuum(p).as_array()
            assert np.max(np.abs(residual)) < 1e-14

    def test_matrix_at_zero_momentum(self):
        m = dhw_matrix(np.zeros(3))
        expected = np.zeros((10, 10))
        expected[4:7, 7:10] = -2.0 * np.eye(3)
        expected[7:10, 4:7] = 2.0 * np.eye(3)
        assert np.array_equal(m, expected)

    def test_vacuum_rest_frame(self):
        v = dhw_vacuum(MomentumPoint(0, 0))
        assert v.h3 == -2.0
        assert np.all(v.h0 == 0) and np.all(v.h1 == 0) and np.all(v.h2 == 0)

    def test_vacuum_three_four_five(self):
        v = dhw_vacuum(MomentumPoint(0.0, 0.75))
        assert v.h3 == pytest.approx(-1.6, abs=1e-15)
        assert v.h1 == pytest.approx([-1.2, 0.0, 0.0], abs=1e-15)

    def test_vacuum_norm_two(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            p = MomentumPoint(rng.uniform(-3, 3), rng.uniform(-3, 3))
            assert dhw_vacuum(p).norm() == pytest.approx(2.0, abs=1e-13)

    def test_vacuum_stationary_without_field(self):
        p = MomentumPoint(0.6, -0.4)
        v = dhw_vacuum(p)
        d = dhw_rhs(v, p, ZERO_FIELD, 2.0)
        assert np.max(np.abs(d.as_array())) < 1e-14

    def test_rhs_matches_matrix_product(self):
        rng = np.random.default_rng(19)
        p = MomentumPoint(0.3, -0.8)
        t = 0.3 * CFG.duration
        v = rng.normal(size=10)
        from pairvortex.dynamics import DhwVector

        d = dhw_rhs(DhwVector.from_array(v), p, CFG, t).as_array()
        expected = dhw_matrix(kinetic_momentum(p, CFG, t)) @ v
        assert d == pytest.approx(expected, abs=1e-13)

    def test_zero_field_full_pulse_stays_vacuum(self):
        p = MomentumPoint(0.5, 0.25)
        res = integrate(dhw_ode(p, ZERO_FIELD), dhw_vacuum(p).as_array(), 0.0, ZERO_FIELD.duration)
        assert np.max(np.abs(res.y - dhw_vacuum(p).as_array())) < 1e-12

    def test_grid_rhs_matches_scalar(self):
        rng = np.random.default_rng(23)
        ppar = rng.uniform(-2, 2, 5)
        pperp = rng.uniform(-2, 2, 5)
        y = rng.normal(size=(5, 10))
        t = 0.6 * CFG.duration
        batched = dhw_ode_grid(ppar, pperp, CFG)(t, y)
        for k in range(5):
            single = dhw_ode(MomentumPoint(ppar[k], pperp[k]), CFG)(t, y[k])
            assert np.array_equal(batched[k], single)

    def test_vacuum_grid_matches_scalar(self):
        ppar = np.array([0.0, 0.4, -1.2])
        pperp = np.array([0.75, -0.3, 0.9])
        stacked = dhw_vacuum_grid(ppar, pperp)
        for k in range(3):
            assert np.array_equal(stacked[k], dhw_vacuum(MomentumPoint(ppar[k], pperp[k])).as_array())


class TestBispinor:
    def test_rest_frame_spinors(self):
        pair = negative_energy_init(MomentumPoint(0, 0))
        assert pair.phi1 == pytest.approx([0, 0, 1, 0], abs=0.0)
        assert pair.phi2 == pytest.approx([0, 0, 0, 1], abs=0.0)

    def test_orthonormality(self):
        rng = np.random.default_rng(29)
        for _ in range(20):
            p = MomentumPoint(rng.uniform(-3, 3), rng.uniform(-3, 3))
            pair = negative_energy_init(p)
            g = np.array(
                [
                    [pair.phi1 @ np.conj(pair.phi1), pair.phi2 @ np.conj(pair.phi1)],
                    [pair.phi1 @ np.conj(pair.phi2), pair.phi2 @ np.conj(pair.phi2)],
                ]
            )
            assert np.max(np.abs(g - np.eye(2))) < 1e-14

    def test_init_is_negative_energy_eigenpair(self):
        p = MomentumPoint(0.8, -0.5)
        energy = omega_eff(p, ZERO_FIELD, 0.0)
        pair = negative_energy_init(p)
        d = dirac_rhs(pair, p, ZERO_FIELD, 0.0)
        # -iH w = +iE w for an eigenvector with eigenvalue -E
        assert np.max(np.abs(d.phi1 - 1j * energy * pair.phi1)) < 1e-13
        assert np.max(np.abs(d.phi2 - 1j * energy * pair.phi2)) < 1e-13

    def test_free_evolution_is_pure_phase(self):
        p = MomentumPoint(0.4, 1.1)
        energy = omega_eff(p, ZERO_FIELD, 0.0)
        pair = negative_energy_init(p)
        span = 5.0
        res = integrate(dirac_ode(p, ZERO_FIELD), pair.as_array(), 0.0, span)
        expected = np.exp(1j * energy * span) * pair.as_array()
        assert np.max(np.abs(res.y - expected)) < 1e-8

    def test_norm_conserved(self):
        p = MomentumPoint(-0.3, 0.6)
        icfg = IntegratorConfig(dense_samples=100)
        res = integrate(dirac_ode(p, CFG), negative_energy_init(p).as_array(), 0.0, CFG.duration, icfg)
        norms = np.linalg.norm(res.dense_y, axis=2)
        assert np.max(np.abs(norms - 1.0)) < 1e-9

    def test_bilinears_rest_vacuum(self):
        v = bilinears(negative_energy_init(MomentumPoint(0, 0)))
        assert v.h3 == -2.0
        assert np.all(v.h0 == 0) and np.all(v.h1 == 0) and np.all(v.h2 == 0)

    def test_bilinears_reproduce_vacuum_vector(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            p = MomentumPoint(rng.uniform(-2, 2), rng.uniform(-2, 2))
            got = bilinears(negative_energy_init(p)).as_array()
            assert got == pytest.approx(dhw_vacuum(p).as_array(), abs=1e-13)

    def test_bilinears_norm_two_during_evolution(self):
        p = MomentumPoint(0.2, -0.7)
        icfg = IntegratorConfig(dense_samples=60)
        res = integrate(dirac_ode(p, CFG), negative_energy_init(p).as_array(), 0.0, CFG.duration, icfg)
        norms = np.linalg.norm(bilinears_grid(res.dense_y), axis=1)
        assert np.max(np.abs(norms - 2.0)) < 1e-8

    def test_evolved_bilinears_match_direct_dhw(self):
        p = MomentumPoint(0.2, 0.2)
        icfg = IntegratorConfig(dense_samples=40)
        res_b = integrate(dirac_ode(p, CFG), negative_energy_init(p).as_array(), 0.0, CFG.duration, icfg)
        res_v = integrate(dhw_ode(p, CFG), dhw_vacuum(p).as_array(), 0.0, CFG.duration, icfg)
        diff = bilinears_grid(res_b.dense_y) - res_v.dense_y
        assert np.max(np.abs(diff)) < 1e-6

    def test_grid_rhs_and_init_match_scalar(self):
        rng = np.random.default_rng(37)
        ppar = rng.uniform(-2, 2, 4)
        pperp = rng.uniform(-2, 2, 4)
        y = rng.normal(size=(4, 2, 4)) + 1j * rng.normal(size=(4, 2, 4))
        t = 0.52 * CFG.duration
        batched = dirac_ode_grid(ppar, pperp, CFG)(t, y)
        inits = negative_energy_init_grid(ppar, pperp)
        for k in range(4):
            p = MomentumPoint(ppar[k], pperp[k])
            assert np.array_equal(batched[k], dirac_ode(p, CFG)(t, y[k]))
            assert np.max(np.abs(inits[k] - negative_energy_init(p).as_array())) < 1e-15


class TestRepresentationIndependence:
    def test_bilinears_agree_with_chiral_representation(self):
        """Evolving in a different gamma-matrix representation gives the same bilinears."""
        p = MomentumPoint(0.3, 0.4)
        icfg = IntegratorConfig(rel_tol=1e-11, abs_tol=1e-13)

        ident = np.eye(2, dtype=complex)
        sig = [
            np.array([[0, 1], [1, 0]], dtype=complex),
            np.array([[0, -1j], [1j, 0]], dtype=complex),
            np.array([[1, 0], [0, -1]], dtype=complex),
        ]
        zero = np.zeros((2, 2), dtype=complex)
        gamma0 = np.block([[zero, ident], [ident, zero]])
        alphas = [np.block([[-s, zero], [zero, s]]) for s in sig]
        sigmas = [np.block([[s, zero], [zero, s]]) for s in sig]
        minus_i_gammas = [np.block([[zero, -1j * s], [1j * s, zero]]) for s in sig]
        observables = [gamma0] + sigmas + alphas + minus_i_gammas

        def hamiltonian(t):
            q = kinetic_momentum(p, CFG, t)
            return q[0] * alphas[0] + q[2] * alphas[2] + gamma0

        eigvals, eigvecs = np.linalg.eigh(hamiltonian(0.0))
        init = eigvecs[:, :2].T.copy()  # the two lowest (negative-energy) states

        def rhs(t, y):
            return -1j * (y @ hamiltonian(t).T)

        res = integrate(rhs, init, 0.0, CFG.duration, icfg)
        s_chiral = np.array(
            [sum(np.conj(row) @ (g @ row) for row in res.y).real for g in observables]
        )

        res_dirac = integrate(
            dirac_ode(p, CFG), negative_energy_init(p).as_array(), 0.0, CFG.duration, icfg
        )
        s_dirac = bilinears_grid(res_dirac.y[None])[0]
        assert np.max(np.abs(s_chiral - s_dirac)) < 1e-8


class TestBloch:
    def test_vacuum_points_up(self):
        u = bloch_from_amplitudes(TwoLevelState(1.0, 0.0))
        assert np.array_equal(u, [0.0, 0.0, 1.0])

    def test_excited_points_down(self):
        u = bloch_from_amplitudes(TwoLevelState(0.0, 1.0))
        assert np.array_equal(u, [0.0, 0.0, -1.0])

    def test_matches_explicit_pauli_bilinear(self):
        # direct sigma-matrix evaluation is the oracle
        sig = [
            np.array([[0, 1], [1, 0]], dtype=complex),
            np.array([[0, -1j], [1j, 0]], dtype=complex),
            np.array([[1, 0], [0, -1]], dtype=complex),
        ]
        rng = np.random.default_rng(41)
        samples = [np.array([(1 + 1j) / 2, (1 - 1j) / 2])]
        for _ in range(10):
            z = rng.normal(size=4)
            chi = np.array([z[0] + 1j * z[1], z[2] + 1j * z[3]])
            samples.append(chi / np.linalg.norm(chi))
        for chi in samples:
            expected = np.array([(np.conj(chi) @ (s @ chi)).real for s in sig])
            got = bloch_from_amplitudes(TwoLevelState(chi[0], chi[1]))
            assert got == pytest.approx(expected, abs=1e-14)

    def test_unit_norm_preserved_by_map(self):
        rng = np.random.default_rng(43)
        for _ in range(10):
            z = rng.normal(size=4)
            chi = np.array([z[0] + 1j * z[1], z[2] + 1j * z[3]])
            chi = chi / np.linalg.norm(chi)
            u = bloch_from_amplitudes(TwoLevelState(chi[0], chi[1]))
            assert np.linalg.norm(u) == pytest.approx(1.0, abs=1e-14)
            assert u[2] == pytest.approx(abs(chi[0]) ** 2 - abs(chi[1]) ** 2, abs=1e-14)


class TestAxialSymmetry:
    def test_amplitude_even_in_p_perp(self):
        from pairvortex.observables import pair_density

        a = pair_density(MomentumPoint(0.3, 0.8), CFG)
        b = pair_density(MomentumPoint(0.3, -0.8), CFG)
        assert a.c2 == b.c2
        assert a.f == b.f

    def test_zero_field_gives_empty_distribution(self):
        from pairvortex.observables import pair_density

        amp = pair_density(MomentumPoint(0.4, 0.2), ZERO_FIELD)
        assert amp.f <= 1e-24
        assert not amp.phase_defined and math.isnan(amp.phase)
