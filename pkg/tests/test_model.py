import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photonic_kondo import (
    AnisotropicCoupling,
    EmitterSpec,
    JonesPolarization,
    KondoParams,
    NegativeCoupling,
    NonPositiveOmega3,
    NonUnitVector,
    ZeroEffectiveField,
    ZeroField,
    amplitudes_for,
    build_driven_config,
    config_from_lambda_psi,
    derive_kondo_coupling,
    jones_from_amplitudes,
    scattering_phase,
)
from photonic_kondo.model import PAULI, E_X, E_Y, E_Z, pauli_bilinear

from oracles import random_unit


class TestKondoCoupling:
    def test_isotropic(self):
        c = derive_kondo_coupling(EmitterSpec(1.0, 1.0, 4.0))
        assert (c.J, c.J_par, c.J_perp) == (1.0, 1.0, 1.0)
        assert not c.anisotropic
        assert c.require_isotropic() == 1.0

    def test_zero_coupling(self):
        assert derive_kondo_coupling(EmitterSpec(0.0, 0.0, 1.0)).J == 0.0

    def test_anisotropic_flagged(self):
        c = derive_kondo_coupling(EmitterSpec(1.0, 2.0, 10.0))
        assert c.J_par == pytest.approx(1.0, abs=1e-15)
        assert c.J_perp == pytest.approx(0.8, abs=1e-15)
        assert c.anisotropic
        with pytest.raises(AnisotropicCoupling):
            c.require_isotropic()

    @pytest.mark.parametrize("w3", [0.0, -1.0])
    def test_nonpositive_omega3(self, w3):
        with pytest.raises(NonPositiveOmega3):
            EmitterSpec(1.0, 1.0, w3)

    def test_far_detuning_warning(self):
        with pytest.warns(UserWarning):
            spec = EmitterSpec(1.0, 1.0, 1.0, delta=0.5)
        assert not spec.far_detuned
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert EmitterSpec(1.0, 1.0, 100.0, delta=0.5).far_detuned


class TestScatteringPhase:
    def test_examples(self):
        assert scattering_phase(0.0).phi == 0.0
        assert scattering_phase(1 / np.pi).phi == pytest.approx(np.pi / 2, abs=1e-15)
        assert scattering_phase(0.2).phi == pytest.approx(2 * np.arctan(0.2 * np.pi), abs=1e-15)

    def test_negative(self):
        with pytest.raises(NegativeCoupling):
            scattering_phase(-0.1)

    @given(st.floats(0.0, 1e3))
    def test_cayley_form(self, J):
        # e^{i phi} as the ratio of (1 + i pi J) and its conjugate
        ph = scattering_phase(J)
        target = (1 + 1j * np.pi * J) / (1 - 1j * np.pi * J)
        assert abs(ph.unitary - target) < 1e-14
        assert 0.0 <= ph.phi < np.pi

    def test_singlet_eigenvalue(self):
        # two-body unitary 1 + (e^{i phi} - 1) P_singlet: triplet eigenvalue 1 (x3), singlet e^{i phi}
        ph = scattering_phase(0.3)
        exchange = sum(np.kron(p / 2, p / 2) for p in PAULI)
        u = np.eye(4) + (ph.unitary - 1) * (0.25 * np.eye(4) - exchange)
        eig = np.sort_complex(np.linalg.eigvals(u))
        assert np.sum(np.isclose(eig, 1.0)) == 3
        assert np.any(np.isclose(eig, ph.unitary))


class TestJones:
    def test_circular(self):
        j = jones_from_amplitudes(JonesPolarization(1.0, 0.0, 1.0))
        assert j.f == 1.0
        np.testing.assert_allclose(j.n_cl, E_Z, atol=1e-15)

    def test_linear_x(self):
        j = jones_from_amplitudes(JonesPolarization(1.0, 1.0, 2.0))
        assert j.f == 1.0
        np.testing.assert_allclose(j.n_cl, E_X, atol=1e-15)

    def test_relative_phase_follows_sigma_y_convention(self):
        # conj(1, i) . sigma_y . (1, i) = +2 with sigma_y = ((0, -i), (i, 0))
        j = jones_from_amplitudes(JonesPolarization(1.0, 1j, 2.0))
        np.testing.assert_allclose(j.n_cl, E_Y, atol=1e-15)

    def test_zero_field(self):
        with pytest.raises(ZeroField):
            jones_from_amplitudes(JonesPolarization(0.0, 0.0))

    def test_bilinear_reconstruction(self, rng):
        amps = rng.normal(size=(1000, 2)) + 1j * rng.normal(size=(1000, 2))
        lengths = rng.uniform(0.1, 5.0, size=1000)
        for a, length in zip(amps, lengths):
            j = jones_from_amplitudes(JonesPolarization(a[0], a[1], length))
            direct = np.einsum("s,ist,t->i", a.conj(), PAULI, a).real / length
            assert np.max(np.abs(j.f * j.n_cl - direct)) < 1e-14 * max(1.0, j.f)
            assert abs(np.linalg.norm(j.s_cl) - j.f / 2) < 1e-14 * max(1.0, j.f)

    def test_amplitudes_roundtrip(self, rng):
        for _ in range(50):
            n = random_unit(rng)
            j = jones_from_amplitudes(amplitudes_for(n, 1.7, 0.4))
            np.testing.assert_allclose(j.n_cl, n, atol=1e-14)
            assert j.f == pytest.approx(1.7, rel=1e-14)

    def test_pauli_bilinear_hermitian_form(self):
        u = np.array([0.3 + 0.1j, -0.2j])
        assert pauli_bilinear(u).dtype == float


class TestDrivenConfig:
    def test_zero_detuning_aligns_axis(self, rng):
        for _ in range(20):
            n = random_unit(rng)
            c = build_driven_config(KondoParams(J=0.3, f=2.0), n)
            np.testing.assert_allclose(c.n_h, n, atol=1e-15)
            assert c.psi == pytest.approx(0.0, abs=1e-7)

    def test_undriven_limit(self):
        c = build_driven_config(KondoParams(J=0.1, f=0.0, delta=1.0), E_X)
        assert (c.Omega0, c.Gamma, c.Omega) == (0.0, 0.0, 1.0)
        np.testing.assert_array_equal(c.h_eff, E_Z)
        np.testing.assert_array_equal(c.n_h, E_Z)
        assert c.psi == pytest.approx(np.pi / 2, abs=1e-15)
        assert c.lam == np.inf

    def test_reference_point(self):
        c = build_driven_config(KondoParams(J=0.1, f=1.0, delta=0.5), E_X)
        phi = 2 * np.arctan(0.1 * np.pi)
        omega0 = np.pi * 0.1 * np.cos(phi / 2) ** 2
        gamma = 0.5 * np.pi * 0.1 * np.sin(phi)
        assert c.Omega0 == pytest.approx(omega0, rel=1e-14)
        assert c.Gamma == pytest.approx(gamma, rel=1e-14)
        # law of cosines for |Omega0 n_cl + delta e_z|
        assert c.Omega**2 == pytest.approx(omega0**2 + 0.25, rel=1e-14)
        assert c.lam == pytest.approx(c.Omega / gamma, rel=1e-14)
        assert np.cos(c.psi) == pytest.approx(omega0 / c.Omega, rel=1e-12)

    def test_rate_identities(self, rng):
        # Omega0 = (f/2) sin(phi) and Gamma = f sin^2(phi/2) follow from tan(phi/2) = pi J
        for _ in range(100):
            J, f = rng.uniform(0, 3), rng.uniform(0, 5)
            c = build_driven_config(KondoParams(J=J, f=f), E_Z)
            assert c.Omega0 == pytest.approx(0.5 * f * np.sin(c.phi), rel=1e-13, abs=1e-300)
            assert c.Gamma == pytest.approx(f * np.sin(c.phi / 2) ** 2, rel=1e-13, abs=1e-300)
            assert (c.Gamma == 0) == (J * f == 0)

    def test_in_plane_axis(self, rng):
        for _ in range(100):
            a = rng.uniform(0, 2 * np.pi)
            n = np.array([np.sin(a), 0.0, np.cos(a)])
            c = build_driven_config(KondoParams(J=0.2, f=1.0, delta=rng.normal()), n)
            assert c.n_h[1] == 0.0

    def test_cos_psi_identity(self, rng):
        for _ in range(200):
            n = random_unit(rng)
            p = KondoParams(J=rng.uniform(0.01, 1), f=rng.uniform(0.1, 3), delta=rng.normal())
            c = build_driven_config(p, n)
            expected = (c.Omega0 + p.delta * n[2]) / c.Omega
            assert np.cos(c.psi) == pytest.approx(expected, abs=1e-12)

    def test_degenerate_axis(self):
        # Omega0 n_cl cancelled by the detuning
        probe = build_driven_config(KondoParams(J=0.2, f=1.0), E_Z)
        c = build_driven_config(KondoParams(J=0.2, f=1.0, delta=-probe.Omega0), E_Z)
        assert c.degenerate and c.Omega == 0.0
        np.testing.assert_array_equal(c.n_h, E_Z)
        with pytest.raises(ZeroEffectiveField):
            c.require_axis()

    def test_non_unit_drive(self):
        with pytest.raises(NonUnitVector):
            build_driven_config(KondoParams(J=0.1, f=1.0), [1.0, 1.0, 0.0])

    @pytest.mark.parametrize("kw", [dict(J=-1, f=1), dict(J=1, f=-1), dict(J=1, f=1, omega0=0)])
    def test_param_domain(self, kw):
        with pytest.raises(ValueError):
            KondoParams(**kw)

    def test_lambda_psi_constructor(self, rng):
        for _ in range(100):
            lam, psi = 10 ** rng.uniform(-1, 2), rng.uniform(0, np.pi)
            c = config_from_lambda_psi(lam, psi, J=rng.uniform(0.01, 1), Gamma=rng.uniform(0.1, 5))
            assert c.lam == pytest.approx(lam, rel=1e-10)
            assert c.psi == pytest.approx(psi, abs=1e-7)

    def test_immutable(self):
        c = build_driven_config(KondoParams(J=0.1, f=1.0), E_X)
        with pytest.raises(ValueError):
            c.n_cl[0] = 2.0
