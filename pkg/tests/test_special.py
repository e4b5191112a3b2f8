import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate
from scipy.special import j0 as scipy_j0
from scipy.special import j1 as scipy_j1
from scipy.special import kv as scipy_kv

from latzeta import special
from latzeta.errors import DomainError

mp.mp.dps = 30


class TestZeta:
    def test_exact_even_values(self):
        assert special.riemann_zeta(2.0).value.real == pytest.approx(math.pi**2 / 6, rel=1e-14)
        assert special.riemann_zeta(4.0).value.real == pytest.approx(math.pi**4 / 90, rel=1e-14)

    def test_zeta3(self):
        assert special.riemann_zeta(3.0).value.real == pytest.approx(1.2020569031595942, rel=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            special.riemann_zeta(1.0)
        with pytest.raises(DomainError):
            special.riemann_zeta(0.5 + 3j)

    def test_complex_vs_mpmath(self):
        for s in (2.5 + 10j, 1.2 - 4j, 6.0 + 0.5j):
            got = special.riemann_zeta(s).value
            want = complex(mp.zeta(mp.mpc(s)))
            assert abs(got - want) / abs(want) < 1e-12

    def test_bernoulli_formula_at_even_integers(self):
        # zeta(2n) = (-1)^{n+1} 2^{2n-1} B_2n pi^{2n} / (2n)!
        for n in range(1, 7):
            em = special.riemann_zeta(float(2 * n)).value.real
            exact = special.zeta_even_exact(n)
            assert abs(em - exact) / exact < 1e-13

    def test_error_estimates_are_honest(self):
        r = special.riemann_zeta(2.0)
        assert abs(r.value.real - math.pi**2 / 6) <= 10 * max(r.est_error, 1e-15)


class TestL4:
    def test_known_closed_values(self):
        assert special.dirichlet_L4(1.0).value.real == pytest.approx(math.pi / 4, rel=1e-14)
        assert special.dirichlet_L4(3.0).value.real == pytest.approx(math.pi**3 / 32, rel=1e-14)

    def test_catalan(self):
        assert special.dirichlet_L4(2.0).value.real == pytest.approx(float(mp.catalan), rel=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            special.dirichlet_L4(0.0)

    def test_grid_vs_mpmath(self):
        for s in (0.25, 0.75, 1.0 + 1e-9, 1.5, 5.0, 2.0 + 3j, 0.5 - 2j):
            got = special.dirichlet_L4(s).value
            want = complex(
                4.0 ** (-mp.mpc(s))
                * (mp.zeta(mp.mpc(s), mp.mpf(1) / 4) - mp.zeta(mp.mpc(s), mp.mpf(3) / 4))
            )
            assert abs(got - want) / abs(want) < 1e-12


class TestBesselJ:
    def test_j0_at_zero(self):
        assert special.bessel_J0(0.0) == 1.0

    def test_j0_first_zero(self):
        assert abs(special.bessel_J0(2.404825557695773)) < 1e-10

    def test_j0_against_scipy(self):
        for x in (0.1, 1.0, 5.0, 11.9, 12.1, 50.0, 250.0, 1000.0):
            assert special.bessel_J0(x) == pytest.approx(scipy_j0(x), abs=1e-12)

    def test_j0_integral_definition(self):
        # (1/2pi) int_0^{2pi} e^{i x cos t} dt = J0(x)
        for x in (0.7, 3.3):
            quad, _ = integrate.quad(lambda t: math.cos(x * math.cos(t)), 0, 2 * math.pi)
            assert quad / (2 * math.pi) == pytest.approx(special.bessel_J0(x), abs=1e-12)

    def test_j1(self):
        for x in (0.3, 2.0, 15.0):
            assert special.bessel_J1(x) == pytest.approx(scipy_j1(x), abs=1e-12)

    def test_product_integral_identity(self):
        # int_0^{pi/2} J0(sin t) J0(cos t) sin t cos t dt = J1(sqrt 2)/sqrt 2
        quad, _ = integrate.quad(
            lambda t: special.bessel_J0(math.sin(t))
            * special.bessel_J0(math.cos(t))
            * math.sin(t)
            * math.cos(t),
            0,
            math.pi / 2,
        )
        want = special.bessel_J1(math.sqrt(2)) / math.sqrt(2)
        assert quad == pytest.approx(want, abs=1e-8)


class TestBesselK:
    def test_negative_order_symmetry(self):
        for ell in (1, 3, 7):
            assert special.bessel_K(-ell, 2.3) == special.bessel_K(ell, 2.3)

    def test_small_argument_limit(self):
        assert special.bessel_K(1, 1e-6) * 1e-6 == pytest.approx(1.0, abs=1e-5)

    def test_k1_quadrature_oracle(self):
        want, _ = integrate.quad(lambda t: math.exp(-math.cosh(t)) * math.cosh(t), 0, 30)
        assert special.bessel_K(1, 1.0) == pytest.approx(want, rel=1e-13)
        assert special.bessel_K(1, 1.0) == pytest.approx(0.6019072301972346, rel=1e-12)

    def test_grid_vs_scipy(self):
        xs = np.array([1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0])
        for ell in range(0, 13):
            mine = special.bessel_K_array(ell, xs)
            ref = scipy_kv(ell, xs)
            assert np.max(np.abs(mine - ref) / ref) < 1e-11

    def test_domain(self):
        with pytest.raises(DomainError):
            special.bessel_K(1, 0.0)
        with pytest.raises(DomainError):
            special.bessel_K(0, -2.0)

    def test_derivative_recurrence_order_n(self):
        # (1/s d/ds)(s^2 K_2(s)) = -s K_1(s), checked by central differences
        for s in (0.5, 1.0, 2.0):
            h = 1e-4 * s
            f = lambda t: t * t * special.bessel_K(2, t)
            d = (f(s + h) - f(s - h)) / (2 * h)
            got = d / s
            want = -s * special.bessel_K(1, s)
            assert got == pytest.approx(want, rel=1e-6)

    def test_derivative_k0(self):
        for s in (0.7, 1.5):
            h = 1e-4 * s
            d = (special.bessel_K(0, s + h) - special.bessel_K(0, s - h)) / (2 * h)
            assert d == pytest.approx(-special.bessel_K(1, s), rel=1e-6)


class TestBesselIntegral:
    def test_closed_form_vs_quadrature(self):
        # lam=0, mu=1, a=1, b=2pi: int x J0(2 pi x)/(x^2+1)^2 dx = pi K_1(2 pi)
        quad, _ = integrate.quad(
            lambda x: x * scipy_j0(2 * math.pi * x) / (x * x + 1) ** 2, 0, 400, limit=4000
        )
        closed = special.bessel_J_int_closed(0, 1, 1.0, 2 * math.pi)
        assert closed == pytest.approx(math.pi * scipy_kv(1, 2 * math.pi), rel=1e-12)
        assert quad == pytest.approx(closed, abs=1e-8)

    def test_second_case(self):
        # lam=1, mu=2, a=2, b=1: closed form vs quadrature
        quad, _ = integrate.quad(
            lambda x: x * x * scipy_j1(x) / (x * x + 4) ** 3, 0, 400, limit=4000
        )
        closed = special.bessel_J_int_closed(1, 2, 2.0, 1.0)
        assert quad == pytest.approx(closed, abs=1e-8)


class TestSphereArea:
    def test_exact_values(self):
        assert special.sphere_area(1) == pytest.approx(2 * math.pi, rel=1e-15)
        assert special.sphere_area(2) == pytest.approx(4 * math.pi, rel=1e-15)
        assert special.sphere_area(3) == pytest.approx(2 * math.pi**2, rel=1e-15)

    def test_gamma_half(self):
        assert special.gamma_half(1) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
        assert special.gamma_half(2) == 1.0
        assert special.gamma_half(3) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-15)
        assert special.gamma_half(7) == pytest.approx(math.gamma(3.5), rel=1e-14)
