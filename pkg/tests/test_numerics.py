import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coulomb_sphere.errors import DomainError, IntegrationError
from coulomb_sphere.measure import mass_tail, scaled, spherical
from coulomb_sphere.numerics import (bernoulli, compensated_sum, euler_maclaurin_remainder_bound,
                                     euler_maclaurin_sum, find_critical_point, integrate_half_line,
                                     integrate_interval, integrate_tail)
from coulomb_sphere.specfun import log_factorial


def test_half_line_examples():
    assert integrate_half_line(lambda r: np.exp(-r), 1.0, rel_tol=1e-14).value == \
        pytest.approx(1.0, abs=1e-13)
    assert integrate_half_line(lambda r: 2 * r / (1 + r * r) ** 2, 1.0).value == \
        pytest.approx(1.0, abs=1e-12)
    beta = integrate_half_line(lambda r: 2 * r**3 * (1 + r * r) ** -5, 1.0).value
    assert beta == pytest.approx(math.gamma(2) * math.gamma(3) / math.gamma(5), rel=1e-12)


@pytest.mark.parametrize("k", [0, 1, 2, 3, 6, 10])
def test_polynomial_times_gaussian(k):
    # int_0^inf r^k e^{-r^2} dr = Gamma((k+1)/2) / 2
    res = integrate_half_line(lambda r: r**k * np.exp(-r * r), 1.0, rel_tol=1e-14)
    assert res.value == pytest.approx(0.5 * math.gamma((k + 1) / 2.0), rel=1e-13)
    assert res.abs_error_estimate < 1e-12 * res.value


def test_interval_and_tail():
    assert integrate_interval(np.sin, 0.0, math.pi).value == pytest.approx(2.0, abs=1e-13)
    assert integrate_tail(lambda r: r**-2, 2.0).value == pytest.approx(0.5, rel=1e-13)
    with pytest.raises(DomainError):
        integrate_tail(lambda r: r, 0.0)
    with pytest.raises(DomainError):
        integrate_half_line(lambda r: r, -1.0)


def test_quadrature_gives_up_on_singular_integrand():
    with pytest.raises(IntegrationError):
        integrate_interval(lambda x: 1.0 / x, 0.0, 1.0)


def test_critical_point_examples():
    sp = spherical()
    assert find_critical_point(sp, 0.5) == pytest.approx(1.0, rel=1e-14)
    assert find_critical_point(sp, 0.8) == pytest.approx(2.0, rel=1e-14)
    for a in (0.3, 2.0, 7.0):
        assert find_critical_point(scaled(a), 0.3) == pytest.approx(
            a * find_critical_point(sp, 0.3), rel=1e-13)


@pytest.mark.parametrize("tau", [0.0, 1.0, -0.1, 1.5])
def test_critical_point_rejects_endpoints(tau):
    with pytest.raises(DomainError):
        find_critical_point(spherical(), tau)


@pytest.mark.parametrize("tau", list(np.logspace(-4, math.log10(0.5), 9))
                         + list(1.0 - np.logspace(-4, math.log10(0.5), 9)))
def test_critical_point_residual_grid(tau):
    sp = spherical()
    t = find_critical_point(sp, tau)
    assert abs(mass_tail(sp, t) - (1.0 - tau)) <= 1e-14
    assert t == pytest.approx(math.sqrt(tau / (1.0 - tau)), rel=1e-12)


def test_bernoulli_numbers():
    from fractions import Fraction
    assert [bernoulli(k) for k in range(7)] == [
        Fraction(1), Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]
    with pytest.raises(DomainError):
        bernoulli(-1)


def test_euler_maclaurin_examples():
    lin = euler_maclaurin_sum(lambda x: x, 0, 10, 1, [lambda x: 1.0], integral=50.0)
    assert lin == 55.0
    sq = euler_maclaurin_sum(lambda x: x * x, 1, 100, 1, [lambda x: 2.0 * x],
                             integral=(100**3 - 1) / 3.0)
    assert sq == pytest.approx(338350.0, abs=1e-9)


def test_euler_maclaurin_log_factorial_within_bound():
    # f = log x on [1, 50], two corrections; f^(6) = -120 / x^6
    odd = [lambda x: 1.0 / x, lambda x: 2.0 / x**3]
    integral = 50.0 * math.log(50.0) - 49.0
    approx = euler_maclaurin_sum(math.log, 1, 50, 2, odd, integral=integral)
    bound = euler_maclaurin_remainder_bound(2, 24.0 * (1.0 - 50.0**-5))
    assert abs(approx - log_factorial(50)) <= bound


@given(st.lists(st.floats(-5, 5), min_size=8, max_size=8), st.integers(0, 3),
       st.integers(0, 30), st.integers(1, 30))
def test_euler_maclaurin_exact_for_low_degree(coefs, k, m, span):
    # degree <= 2k+1 polynomials are summed exactly with k corrections
    deg = 2 * k + 1
    p = np.polynomial.Polynomial(coefs[: deg + 1])
    n = m + span
    derivs = [p.deriv(2 * i - 1) for i in range(1, k + 1)]
    P = p.integ()
    got = euler_maclaurin_sum(p, m, n, k, derivs, integral=P(n) - P(m))
    exact = math.fsum(p(j) for j in range(m, n + 1))
    scale = math.fsum(abs(np.polynomial.Polynomial(np.abs(p.coef))(j)) for j in range(m, n + 1))
    assert abs(got - exact) <= 1e-12 * max(1.0, scale)


def test_euler_maclaurin_validation():
    with pytest.raises(DomainError):
        euler_maclaurin_sum(lambda x: x, 3, 1, 0, [])
    with pytest.raises(DomainError):
        euler_maclaurin_sum(lambda x: x, 0, 1, 2, [lambda x: 1.0])


def test_compensated_sum_examples():
    assert compensated_sum([1e16, 1.0, -1e16]) == 1.0
    assert abs(compensated_sum(np.full(10**7, 0.1)) - 1e6) <= 1e-6


@given(st.lists(st.floats(-1e12, 1e12), min_size=1, max_size=200), st.randoms())
def test_compensated_sum_order_independent(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert compensated_sum(xs) == compensated_sum(ys)
