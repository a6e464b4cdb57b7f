import cmath
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import rel, theta_series
from ellmult.errors import DomainError, PrecisionError, SingularParameterError
from ellmult.sampling import draw_nome, draw_param
from ellmult.theta import (EvalConfig, LogProduct, ipow, log_theta, qp_factorial,
                           theta, theta_product)


def polar(r, phi):
    return r * cmath.exp(1j * phi)


def away_from_zeros(x, p):
    return log_theta(x, p)[1] > 1e-6


moduli = st.floats(0.2, 3.0)
phases = st.floats(0, 2 * math.pi)
nomes = st.builds(polar, st.floats(0.01, 0.6), phases)
points = st.builds(polar, moduli, phases)


def test_zero_nome_is_linear():
    assert theta(2, 0) == -1
    assert theta(0.25 + 1j, 0) == 1 - (0.25 + 1j)


def test_vanishes_on_nome_powers():
    assert theta(1, 0.3) == 0
    assert abs(theta(0.3**3, 0.3)) < 1e-13


def test_quasi_periodicity_example():
    x, p = 0.5, 0.1
    assert rel(theta(p * x, p), -theta(x, p) / x) < 1e-12
    assert rel(theta(x, p), theta_series(x, p)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(points, nomes)
def test_matches_triple_product_series(x, p):
    assume(away_from_zeros(x, p))
    assert rel(theta(x, p), theta_series(x, p)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(points, nomes)
def test_inversion_and_quasi_periodicity(x, p):
    assume(away_from_zeros(x, p))
    tx = theta(x, p)
    assert abs(tx + x * theta(1 / x, p)) <= 1e-10 * abs(tx)
    assert abs(theta(p * x, p) + tx / x) <= 1e-10 * abs(tx / x)


def test_far_arguments_reduce_consistently():
    p = 0.3 + 0.2j
    x = 0.7 - 0.4j
    for n in range(1, 25):
        lhs = theta(ipow(p, n) * x, p)
        # theta(p^n x) = (-1)^n x^{-n} p^{-n(n-1)/2} theta(x)
        rhs = (-1) ** n * ipow(x, -n) * ipow(p, -(n * (n - 1)) // 2) * theta(x, p)
        assert rel(lhs, rhs) < 1e-10
        lg, _ = log_theta(ipow(p, -n) * x, p)
        assert rel(cmath.exp(lg), theta(ipow(p, -n) * x, p)) < 1e-10


def test_products():
    assert theta_product([], 0.4) == 1
    assert theta_product([2, 3], 0) == pytest.approx(2, abs=1e-15)
    p = 0.2 + 0.1j
    xs = [0.5, 1.2j, -0.8 + 0.3j]
    assert rel(theta_product(xs, p), theta(xs[0], p) * theta(xs[1], p) * theta(xs[2], p)) < 1e-13


def test_factorial_boundaries():
    a, q, p = 0.7 + 0.2j, 0.9 - 0.3j, 0.15 + 0.1j
    assert qp_factorial(a, q, p, 0) == 1
    # p = 0 gives the ordinary q-shifted factorial
    expected = 1
    for k in range(4):
        expected *= 1 - a * q**k
    assert rel(qp_factorial(a, q, 0, 4), expected) < 1e-14
    # negative n is the reciprocal of the reflected product
    assert rel(qp_factorial(a, q, p, -2), 1 / (theta(a / q**2, p) * theta(a / q, p))) < 1e-13


def test_factorial_telescoping(rng):
    for _ in range(10):
        a, q, p = draw_param(rng), draw_param(rng), draw_nome(rng)
        for n in range(-5, 6):
            for m in range(-5, 6):
                lhs = qp_factorial(a, q, p, n + m)
                rhs = qp_factorial(a, q, p, n) * qp_factorial(a * ipow(q, n), q, p, m)
                assert rel(lhs, rhs) < 1e-10


def test_domain_errors():
    with pytest.raises(DomainError):
        theta(0, 0.1)
    with pytest.raises(DomainError):
        theta(1.5, 1.0)
    with pytest.raises(DomainError):
        theta(1.5, float("nan"))


def test_precision_error_carries_bound():
    cfg = EvalConfig(max_terms=8)
    with pytest.raises(PrecisionError) as info:
        theta(0.5, 0.9, cfg)
    assert info.value.bound == pytest.approx(0.9**8)


def test_truncation_length_follows_nome():
    # |p| = 0.9 needs several hundred terms but stays under the cap
    assert rel(theta(0.5 + 0.5j, 0.9), theta_series(0.5 + 0.5j, 0.9)) < 1e-11


def test_singular_denominator():
    q, p = 0.8 + 0.1j, 0.2
    with pytest.raises(SingularParameterError):
        qp_factorial(q, q, p, -1)
    with pytest.raises(SingularParameterError):
        LogProduct(p).theta(p**2, -1)
    # a vanishing numerator is just zero
    assert LogProduct(p).theta(1).theta(0.5, -1).value() == 0


def test_log_product_survives_huge_factors():
    p = 0.1
    x = 0.37 + 0.1j
    acc = LogProduct(p)
    for n in range(1, 40):
        acc.theta(ipow(p, -n) * x).theta(ipow(p, -n) * x, -1)
    acc.theta(x)
    assert rel(acc.value(), theta(x, p)) < 1e-10
    with pytest.raises(PrecisionError):
        theta(ipow(p, -200) * x, p)


def test_ipow_is_exact_on_integers():
    assert ipow(1 + 1j, 8) == 16
    assert ipow(2, -3) == 0.125
    assert ipow(-1, 7) == -1
    with pytest.raises(DomainError):
        ipow(0, -1)
