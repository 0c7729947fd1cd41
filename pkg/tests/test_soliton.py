"""Closed-form spectral solutions against the system they claim to solve.

The Jost identity is checked with analytic derivatives (no discretization in
the loop), the auxiliary (a, b) pair is differentiated by complex step, and a
plain fixed-step RK4 march provides a fully independent numerical route.
"""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinorsurf.errors import ConfigurationError, IntegrationError, PoleError
from spinorsurf.soliton import (
    SolitonParams,
    SpectralParam,
    bargmann_potential,
    jost_pair,
    jost_solution,
    revolve_spinors,
    zs_integrate,
    zs_residual,
)

XS = np.linspace(-10.0, 10.0, 2001)


class TestParams:
    def test_mu_positive(self):
        with pytest.raises(ConfigurationError):
            SolitonParams(mu=0.0)
        with pytest.raises(ConfigurationError):
            SolitonParams(mu=-1.0)

    def test_sign_branch(self):
        with pytest.raises(ConfigurationError):
            SolitonParams(mu=1.0, sign=2)

    def test_pole_detection(self):
        params = SolitonParams(mu=1.0)
        with pytest.raises(PoleError):
            SpectralParam(-0.5j).check_against(params)
        SpectralParam(0.5j).check_against(params)  # opposite half-plane is fine

    def test_jost_pair_pole(self):
        with pytest.raises(PoleError):
            jost_pair(SolitonParams(mu=2.0), -1j)


class TestBargmannPotential:
    def test_peak_value(self):
        u, _, _ = bargmann_potential(SolitonParams(mu=1.0), 0.0)
        assert u == 1.0

    @pytest.mark.parametrize("mu", [0.5, 1.0, 2.0])
    def test_norm_identity(self, mu):
        _, a, b = bargmann_potential(SolitonParams(mu=mu, phi0=0.3), XS)
        assert np.abs(a**2 + b**2 - 4 * mu**2).max() < 1e-12

    @pytest.mark.parametrize("mu", [0.5, 1.0, 2.0])
    def test_first_order_pair_system(self, mu):
        """a_x = u b and b_x + u a = 0 at 1000 random points, derivatives by
        complex step (truncation ~h^2, no cancellation)."""
        rng = np.random.default_rng(7)
        x = rng.uniform(-12, 12, 1000)
        params = SolitonParams(mu=mu, phi0=-0.4, sign=-1)
        u, a, b = bargmann_potential(params, x)
        h = 1e-7
        _, a_h, b_h = bargmann_potential(params, x + 1j * h)
        a_x, b_x = a_h.imag / h, b_h.imag / h
        assert np.abs(a_x - u * b).max() < 1e-10
        assert np.abs(b_x + u * a).max() < 1e-10

    def test_squared_coefficient_breaks_the_pair_system(self):
        # the 4*mu^2 tanh coefficient misses a_x = u*b by 2 mu^2 |2 mu - 1| sech^2
        mu = 1.0
        params = SolitonParams(mu=mu)
        u, _, b = bargmann_potential(params, XS)
        th = mu * XS
        a_bad_x = 4 * mu**3 / np.cosh(th) ** 2
        violation = np.abs(a_bad_x - u * b).max()
        assert violation == pytest.approx(2.0, abs=1e-12)
        assert violation > 0.1

    def test_chain_identities(self):
        for mu in (0.5, 1.0, 2.0):
            params = SolitonParams(mu=mu, phi0=0.7)
            _, a, b = bargmann_potential(params, XS)
            h = 1e-7
            a_x = bargmann_potential(params, XS + 1j * h)[1].imag / h
            assert np.abs(b**2 - 2 * a_x).max() < 1e-10
            assert np.abs(a_x + a**2 / 2 - 2 * mu**2).max() < 1e-10

    def test_cosh_substitution_chain(self):
        # w = cosh(mu x - phi0) solves w_xx = mu^2 w; a = 2 w_x / w
        mu, phi0 = 1.4, 0.2
        w = np.cosh(mu * XS - phi0)
        w_x = mu * np.sinh(mu * XS - phi0)
        _, a, _ = bargmann_potential(SolitonParams(mu=mu, phi0=phi0), XS)
        assert np.abs(2 * w_x / w - a).max() < 1e-12

    @given(
        delta=st.floats(-3, 3),
        mu=st.floats(0.5, 2.0),
        x=st.floats(-5, 5),
    )
    def test_phase_covariance(self, delta, mu, x):
        # changing the phase offset only translates the profile
        shifted = bargmann_potential(SolitonParams(mu=mu, phi0=delta), x)[0]
        base = bargmann_potential(SolitonParams(mu=mu, phi0=0.0), x - delta / mu)[0]
        assert shifted == pytest.approx(base, rel=1e-12, abs=1e-13)


class TestJostPair:
    def test_left_asymptotics(self):
        # e^{i lam x} phi1 -> 1 and e^{i lam x} phi2 -> 0 as x -> -inf
        params = SolitonParams(mu=1.0)
        lam = 1.0
        f1, f2 = jost_solution(params, lam, -30.0)
        strip = np.exp(1j * lam * (-30.0))
        assert abs(strip * f1 - 1.0) < 1e-12
        assert abs(strip * f2) < 1e-12

    def test_residual_at_random_points(self):
        """System residual at 1000 random (x, lambda) pairs, closed-form
        derivatives; mixes real and imaginary spectral parameters."""
        rng = np.random.default_rng(11)
        worst = 0.0
        for k in range(50):
            params = SolitonParams(
                mu=rng.uniform(0.5, 2.0),
                phi0=rng.uniform(-2.0, 2.0),
                sign=int(rng.choice([-1, 1])),
            )
            mag = rng.uniform(0.5, 2.0)
            lam = mag * 1j if k % 2 else mag
            pair = jost_pair(params, lam)
            xs = rng.uniform(-10.0, 10.0, 20)
            res = zs_residual(
                pair.phi1,
                pair.phi2,
                lambda x, p=params: bargmann_potential(p, x)[0],
                lam,
                xs,
                r_x=pair.phi1_x,
                s_x=pair.phi2_x,
            )
            worst = max(worst, *res)
        assert worst < 1e-12

    def test_derivative_closures_match_central_differences(self):
        params = SolitonParams(mu=1.3, phi0=0.5, sign=-1)
        pair = jost_pair(params, 0.9)
        h = 1e-6
        x = np.linspace(-4, 4, 101)
        fd1 = (pair.phi1(x + h) - pair.phi1(x - h)) / (2 * h)
        fd2 = (pair.phi2(x + h) - pair.phi2(x - h)) / (2 * h)
        assert np.abs(fd1 - pair.phi1_x(x)).max() < 1e-7
        assert np.abs(fd2 - pair.phi2_x(x)).max() < 1e-7


class TestZsResidualEvaluator:
    def test_free_solution(self):
        lam = 1.7
        r = lambda x: np.exp(-1j * lam * x)
        r_x = lambda x: -1j * lam * np.exp(-1j * lam * x)
        zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        res = zs_residual(r, zero, zero, lam, XS, r_x=r_x, s_x=zero)
        assert res == (0.0, 0.0)

    def test_constants_measure_the_spectral_term(self):
        one = lambda x: np.ones_like(np.asarray(x, dtype=complex))
        zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        res = zs_residual(one, one, zero, 1.0, XS, r_x=zero, s_x=zero)
        assert res[0] == pytest.approx(1.0, abs=1e-15)
        assert res[1] == pytest.approx(1.0, abs=1e-15)

    def test_finite_difference_fallback_is_second_order(self):
        params = SolitonParams(mu=1.0)
        lam = 1.0
        pair = jost_pair(params, lam)
        u = lambda x: bargmann_potential(params, x)[0]
        errs = []
        for n in (201, 401):
            xs = np.linspace(-5, 5, n)
            errs.append(max(zs_residual(pair.phi1, pair.phi2, u, lam, xs)))
        order = np.log2(errs[0] / errs[1])
        assert order > 1.7

    def test_needs_three_points(self):
        one = lambda x: np.ones_like(np.asarray(x, dtype=complex))
        real_one = lambda x: np.ones_like(np.asarray(x, dtype=float))
        with pytest.raises(ConfigurationError):
            zs_residual(one, one, real_one, 1.0, np.array([0.0, 1.0]))


class TestZsIntegrate:
    def test_free_exponentials(self):
        lam = 1.1
        zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        xs, vals = zs_integrate(zero, lam, 0.0, 5.0, 1e-3, (1.0, 1.0))
        assert np.abs(vals[:, 0] - np.exp(-1j * lam * xs)).max() < 1e-10
        assert np.abs(vals[:, 1] - np.exp(1j * lam * xs)).max() < 1e-10

    def test_cross_checks_closed_form(self):
        params = SolitonParams(mu=1.0)
        lam = 1.0
        pair = jost_pair(params, lam)
        u = lambda x: bargmann_potential(params, x)[0]
        init = (complex(pair.phi1(-20.0)), complex(pair.phi2(-20.0)))
        xs, vals = zs_integrate(u, lam, -20.0, 20.0, 1e-3, init)
        dev = max(
            np.abs(vals[:, 0] - pair.phi1(xs)).max(),
            np.abs(vals[:, 1] - pair.phi2(xs)).max(),
        )
        assert dev < 1e-6

    def test_rejects_bad_step(self):
        zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
        with pytest.raises(ConfigurationError):
            zs_integrate(zero, 1.0, 0.0, 1.0, 0.0, (1.0, 0.0))

    def test_nonfinite_potential_reports_location(self):
        def bad(x):
            x = np.asarray(x, dtype=float)
            out = np.ones_like(x)
            out[x > 0.5] = np.nan
            return out

        with pytest.raises(IntegrationError) as err:
            zs_integrate(bad, 1.0, 0.0, 1.0, 1e-2, (1.0, 0.0))
        assert err.value.location == pytest.approx(0.5, abs=0.1)


class TestRevolveSpinors:
    def test_y_zero_matches_jost(self):
        params = SolitonParams(mu=1.0, phi0=0.2)
        field = revolve_spinors(params, 1.0)
        x = np.linspace(-3, 3, 31)
        psi, phi = field.values(x, np.zeros_like(x))
        f1, f2 = jost_solution(params, 1.0, x)
        assert np.array_equal(psi, f1)
        assert np.array_equal(phi, f2)

    def test_zero_phase_shift_is_static_field(self):
        params = SolitonParams(mu=1.0)
        a = revolve_spinors(params, 1.0)
        b = revolve_spinors(params, 1.0, phase_shift=0.0)
        x = np.linspace(-2, 2, 11)
        y = np.linspace(0, 1, 11)
        assert np.array_equal(a.values(x, y)[0], b.values(x, y)[0])

    def test_exponential_prefactor_structure(self):
        # e^{lam(y - ix)} decomposes exactly into the implemented product
        params = SolitonParams(mu=1.0)
        lam = 0.3 + 0.7j
        field = revolve_spinors(params, lam)
        x = np.linspace(-2, 2, 41)
        y = np.linspace(0, 2, 41)
        psi, _ = field.values(x, y)
        mu = params.mu
        direct = (
            np.exp(lam * (y - 1j * x))
            * (2j * lam + mu * np.tanh(mu * x))
            / (2j * lam - mu)
        )
        assert np.abs(psi - direct).max() < 1e-13
