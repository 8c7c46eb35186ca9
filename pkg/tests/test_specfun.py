import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoharmonic_nu.errors import DomainError, EvaluationError, QuadratureError
from pseudoharmonic_nu.specfun import (
    gamma,
    gauss_legendre,
    integrate,
    jacobi,
    laguerre,
    log_gamma,
    truncation_point,
)


@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (6.0, math.log(120.0)), (2.5, 0.2846828704729192)])
def test_log_gamma_known_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, abs=1e-12)


def test_log_gamma_matches_stdlib_on_grid():
    xs = np.linspace(0.5, 100.0, 2001)
    ref = np.array([math.lgamma(x) for x in xs])
    assert np.max(np.abs(log_gamma(xs) - ref)) < 1e-12


@given(st.floats(min_value=1e-3, max_value=0.5))
def test_log_gamma_small_arguments(x):
    assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-12)


def test_gamma_half_integers():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert gamma(2.5) == pytest.approx(0.75 * math.sqrt(math.pi), rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_log_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_laguerre_low_degrees():
    a, x = 0.7, np.linspace(0.0, 5.0, 11)
    assert np.all(laguerre(0, a, x) == 1.0)
    np.testing.assert_allclose(laguerre(1, a, x), 1.0 + a - x, rtol=0, atol=1e-15)
    assert laguerre(2, 0.5, 1.0) == pytest.approx(-0.125, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 12), st.floats(-0.9, 6.0), st.floats(0.0, 20.0))
def test_laguerre_against_mpmath(n, alpha, x):
    ref = float(mpmath.laguerre(n, alpha, x))
    assert laguerre(n, alpha, x) == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1.0, abs(ref)))


def test_laguerre_orthogonality():
    # int_0^inf x^a e^-x L_m L_n dx = Gamma(n + a + 1)/n! delta_mn, with x = t^2 to remove the x^a kink
    a = 1.5

    def f(m, n):
        return integrate(lambda t: 2 * t ** (2 * a + 1) * np.exp(-t * t) * laguerre(m, a, t * t) * laguerre(n, a, t * t),
                         0.0, 10.0)
    assert abs(f(1, 3)) < 1e-11
    assert f(2, 2) == pytest.approx(math.gamma(2 + a + 1) / 2.0, rel=1e-12)


def test_laguerre_domain():
    with pytest.raises(DomainError):
        laguerre(-1, 0.0, 1.0)
    with pytest.raises(DomainError):
        laguerre(2, -1.0, 1.0)


def test_jacobi_low_degrees():
    x = np.linspace(-1.0, 1.0, 9)
    assert np.all(jacobi(0, 0.3, 1.2, x) == 1.0)
    np.testing.assert_allclose(jacobi(1, 0.4, 0.4, x), 1.4 * x, atol=1e-15)
    assert jacobi(2, 1.0, 1.0, 0.5) == pytest.approx(0.1875, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10), st.floats(-0.9, 5.0), st.floats(-0.9, 5.0), st.floats(-1.0, 1.0))
def test_jacobi_against_mpmath(n, a, b, x):
    # explicit finite sum in extended precision
    with mpmath.workdps(40):
        xm, xp = (mpmath.mpf(x) - 1) / 2, (mpmath.mpf(x) + 1) / 2
        ref = float(mpmath.fsum(mpmath.binomial(n + a, n - k) * mpmath.binomial(n + b, k) * xm**k * xp ** (n - k)
                                for k in range(n + 1)))
    assert jacobi(n, a, b, x) == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1.0, abs(ref)))


def test_jacobi_domain():
    with pytest.raises(DomainError):
        jacobi(1, 0.0, 0.0, 1.5)
    with pytest.raises(DomainError):
        jacobi(1, -1.0, 0.0, 0.0)


def test_gauss_legendre_small_rules():
    r1 = gauss_legendre(1)
    assert r1.nodes.tolist() == [0.0] and r1.weights.tolist() == pytest.approx([2.0])
    r2 = gauss_legendre(2)
    np.testing.assert_allclose(r2.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    np.testing.assert_allclose(r2.weights, [1.0, 1.0], atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 7, 20, 64])
def test_gauss_legendre_exactness(n):
    rule = gauss_legendre(n)
    assert np.sum(rule.weights * rule.nodes**2) == pytest.approx(2.0 / 3.0, abs=1e-14)
    # exact for degree 2n - 1
    deg = 2 * n - 2
    assert np.sum(rule.weights * rule.nodes**deg) == pytest.approx(2.0 / (deg + 1), abs=1e-13)
    assert np.all(np.diff(rule.nodes) > 0)


@pytest.mark.parametrize("f, a, b, expected", [
    (lambda x: x**2, 0.0, 1.0, 1.0 / 3.0),
    (np.sin, 0.0, math.pi, 2.0),
    (lambda x: np.exp(-x), 0.0, 40.0, 1.0),
])
def test_integrate_examples(f, a, b, expected):
    assert integrate(f, a, b) == pytest.approx(expected, abs=1e-12)


def test_integrate_errors():
    with pytest.raises(EvaluationError), np.errstate(invalid="ignore"):
        integrate(lambda x: np.sqrt(x - 0.5), 0.0, 1.0)
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.sign(x - 1.0 / 3.0), 0.0, 1.0, tol=1e-16, max_panels=64)
    with pytest.raises(DomainError):
        integrate(np.sin, 1.0, 0.0)


def test_truncation_point_gaussian():
    # log envelope -x^2: drop of ln 1e16 from the peak at 0
    x = truncation_point(lambda x: -x * x, 0.0)
    assert x == pytest.approx(math.sqrt(math.log(1e16)), rel=1e-9)
