"""Gamma family, chi, omega and the theta phase."""

import math

import numpy as np
import pytest

from hardyz import specfun
from hardyz.errors import DomainError, PoleError

import oracles

PI = math.pi


class TestLogGamma:
    def test_gamma_one_is_zero(self):
        assert abs(specfun.log_gamma(1.0)) < 1e-14

    def test_gamma_five_is_log_24(self):
        assert specfun.log_gamma(5.0).real == pytest.approx(math.log(24.0), abs=1e-13)

    def test_gamma_half(self):
        # Gamma(1/2) = sqrt(pi), value frozen from the high-precision oracle
        assert specfun.log_gamma(0.5).real == pytest.approx(0.5723649429247001, abs=1e-13)

    def test_pole_raises(self):
        for bad in [0.0, -1.0, -2.0, -7.0 + 1e-12j]:
            with pytest.raises(PoleError):
                specfun.log_gamma(bad)

    @pytest.mark.parametrize("z", [2.5 + 3j, 0.25 + 50j, -1.5 + 2j, 9.0 + 0.1j, 0.25 + 2500j])
    def test_against_reference(self, z):
        import mpmath as mp

        ref = complex(mp.loggamma(mp.mpc(z.real, z.imag)))
        got = specfun.log_gamma(z)
        assert abs(got - ref) < 1e-10 * max(1.0, abs(ref))

    def test_conjugate_symmetry(self):
        z = 1.7 + 8.1j
        assert specfun.log_gamma(np.conj(z)) == pytest.approx(np.conj(specfun.log_gamma(z)), abs=1e-13)


class TestDigamma:
    @pytest.mark.parametrize("z", [1.0, 4.5 + 2j, 0.25 + 10j, -2.5 + 1j, 0.25 + 1000j])
    def test_against_reference(self, z):
        import mpmath as mp

        ref = complex(mp.psi(0, mp.mpc(z).real + 1j * mp.mpc(z).imag))
        assert abs(specfun.digamma(z) - ref) < 1e-11 * max(1.0, abs(ref))

    def test_pole_raises(self):
        with pytest.raises(PoleError):
            specfun.digamma(-3.0)


class TestChi:
    def test_symmetry_point(self):
        assert specfun.chi(0.5) == pytest.approx(1.0, abs=1e-12)

    def test_modulus_one_on_critical_line(self):
        t = np.linspace(2.0, 500.0, 250)
        vals = specfun.chi(0.5 + 1j * t)
        assert np.abs(np.abs(vals) - 1.0).max() < 1e-10

    def test_chi_two(self):
        # chi(2) = zeta(2)/zeta(-1) = -2 pi^2 via the functional equation
        assert specfun.chi(2.0) == pytest.approx(-2.0 * PI**2, rel=1e-12)

    def test_reflection_identity(self):
        for s in [0.3 + 7j, -0.2 + 3.5j, 1.4 + 90j]:
            assert specfun.chi(s) * specfun.chi(1 - s) == pytest.approx(1.0, rel=1e-10)

    def test_pole_at_three(self):
        with pytest.raises(PoleError):
            specfun.chi(3.0)

    def test_conjugate_symmetry(self):
        s = 0.7 + 40j
        assert specfun.chi(np.conj(s)) == pytest.approx(np.conj(specfun.chi(s)), rel=1e-12)


class TestOmega:
    def test_value_at_large_t(self):
        # frozen from the digamma oracle; close to -log(1000/2pi)
        got = specfun.omega(0.5 + 1000j)
        assert got.real == pytest.approx(-5.0698781709061176, abs=1e-10)
        assert abs(got.imag) < 1e-10
        assert got.real == pytest.approx(-math.log(1000.0 / (2 * PI)), abs=1e-4)

    def test_near_zero_at_two_pi(self):
        got = specfun.omega(0.5 + 2j * PI)
        assert abs(got) < 0.01  # log(t/2pi) = 0 there, remainder is O(1/t)

    def test_pair_difference_vanishes(self):
        # chi(s) chi(1-s) = 1, so 0 = d/ds log[chi(s) chi(1-s)]
        #                           = omega(s) - omega(1-s)  (chain rule)
        s = 0.3 + 50j
        assert abs(specfun.omega(s) - specfun.omega(1 - s)) < 1e-10

    def test_asymptotic_envelope(self):
        # |omega(s) + log(t/2pi)| <= C/t on sigma in [-2,3]; C frozen at 5
        # from calibration (max observed 2.5).
        for sig in (-2.0, 0.0, 0.5, 3.0):
            for t in (1.0, 2.0, 10.0, 300.0, 5000.0):
                dev = abs(specfun.omega(complex(sig, t)) + math.log(t / (2 * PI)))
                assert dev <= 5.0 / t

    def test_matches_finite_difference_of_log_chi(self):
        rng = np.random.default_rng(3)
        h = 1e-5
        for _ in range(20):
            sig = rng.uniform(-1.0, 2.0)
            t = rng.uniform(3.0, 300.0)
            s = complex(sig, t)
            fd = (np.log(specfun.chi(s + h)) - np.log(specfun.chi(s - h))) / (2 * h)
            assert abs(specfun.omega(s) - fd) < 1e-6

    def test_domain_error_below_one(self):
        with pytest.raises(DomainError):
            specfun.omega(0.5 + 0.5j)


class TestTheta:
    def test_stationary_point(self):
        # root of theta' located by the independent bisection oracle
        root = oracles.bisect_root(oracles.mp_theta_prime, 6.0, 6.6)
        assert specfun.theta_deriv(root) == pytest.approx(0.0, abs=1e-10)
        assert root == pytest.approx(6.289835988836903, abs=1e-9)

    def test_first_gram_point(self):
        # theta itself crosses zero near 17.8456
        g0 = oracles.bisect_root(lambda t: specfun.riemann_siegel_theta(t), 17.0, 18.5)
        assert g0 == pytest.approx(17.845599540512238, abs=1e-9)

    def test_stirling_limit(self):
        t = 1e4
        assert abs(specfun.theta_deriv(t) - 0.5 * math.log(t / (2 * PI))) < 1e-4

    def test_branch_continuity(self):
        t = np.arange(10.0, 1000.0, 0.01)
        th = specfun.riemann_siegel_theta(t)
        assert np.abs(np.diff(th)).max() <= 0.1

    def test_phase_convention(self):
        # e^{2 i theta(t)} chi(1/2 + it) = 1
        t = np.linspace(2.0, 300.0, 60)
        resid = np.exp(2j * specfun.riemann_siegel_theta(t)) * specfun.chi(0.5 + 1j * t) - 1.0
        assert np.abs(resid).max() < 1e-10

    def test_domain_error(self):
        with pytest.raises(DomainError):
            specfun.riemann_siegel_theta(0.5)
