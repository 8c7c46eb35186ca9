import math

import numpy as np
import pytest

from pseudoharmonic_nu import angular, oracle, radial, system
from pseudoharmonic_nu.errors import ConvergenceError, DomainError

SQ2 = math.sqrt(2.0)


def test_grid():
    g = oracle.Grid1D(0.0, 2.0, 5)
    assert g.spacing == 0.5 and g.nodes.tolist() == [0.0, 0.5, 1.0, 1.5, 2.0]
    assert g.refined().points == 9 and g.refined().spacing == 0.25
    with pytest.raises(DomainError):
        oracle.Grid1D(1.0, 1.0, 5)
    with pytest.raises(DomainError):
        oracle.Grid1D(0.0, 1.0, 2)


def test_radial_oscillator():
    res = oracle.radial_fd_eigen(0.0, 2.0, 2)
    np.testing.assert_allclose(res.values, [3 * SQ2, 7 * SQ2], rtol=1e-8)
    assert res.extrapolated and np.all(res.error_estimates < 1e-3)


@pytest.mark.parametrize("gamma, expected", [(2.0, 5 * SQ2), (5.0, SQ2 * (2 + math.sqrt(21)))])
def test_radial_examples(gamma, expected):
    assert oracle.radial_fd_eigen(gamma, 2.0, 1).values[0] == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("gamma", [0.1, 0.75, 3.3, 40.0])
def test_radial_ladder(gamma):
    alpha = 1.7
    res = oracle.radial_fd_eigen(gamma, alpha, 4)
    exact = math.sqrt(alpha) * (4 * np.arange(4) + 2 + math.sqrt(4 * gamma + 1))
    np.testing.assert_allclose(res.values, exact, rtol=1e-7)


def test_radial_without_richardson_is_less_accurate():
    grid = oracle.Grid1D(0.0, 12.0, 1000)
    plain = oracle.radial_fd_eigen(2.0, 2.0, 1, grid=grid, richardson=False)
    rich = oracle.radial_fd_eigen(2.0, 2.0, 1, grid=grid)
    assert not plain.extrapolated
    assert abs(rich.values[0] - 5 * SQ2) < abs(plain.values[0] - 5 * SQ2)


def test_radial_validation():
    with pytest.raises(DomainError):
        oracle.radial_fd_eigen(1.0, 0.0, 1)
    with pytest.raises(DomainError):
        oracle.radial_fd_eigen(1.0, 1.0, 1, grid=oracle.Grid1D(0.1, 5.0, 100))
    with pytest.raises(DomainError):
        oracle.frobenius_exponent(-1.0)


def test_convergence_guard():
    # a grid far too coarse for the requested level moves under refinement
    with pytest.raises(ConvergenceError):
        oracle.radial_fd_eigen(0.0, 1.0, 3, grid=oracle.Grid1D(0.0, 3.0, 6), tol=1e-6)


def test_angular_examples():
    np.testing.assert_allclose(oracle.angular_fd_eigen(0.0, 4).values, [0.0, 2.0, 6.0, 12.0], atol=1e-7)
    assert oracle.angular_fd_eigen(1.0, 1).values[0] == pytest.approx(2.0, abs=1e-7)
    assert oracle.angular_fd_eigen(1.5, 1).values[0] == pytest.approx(3.75, abs=1e-7)


def test_angular_validation():
    with pytest.raises(DomainError):
        oracle.angular_fd_eigen(-0.5, 1)
    with pytest.raises(DomainError):
        oracle.angular_fd_eigen(1.0, 1, grid=oracle.Grid1D(0.1, math.pi, 100))


def test_ode_residual_zero_function_and_guard():
    x = np.linspace(0.1, 1.0, 50)
    assert oracle.ode_residual(np.zeros_like(x), x, "radial", eps2=1.0, alpha=1.0, gamma=0.0) == 0.0
    with pytest.raises(DomainError):
        oracle.require_nonzero(np.zeros_like(x))
    with pytest.raises(DomainError):
        oracle.ode_residual(np.ones(3), np.array([0.0, 0.1, 0.3]), "radial", eps2=1, alpha=1, gamma=0)
    with pytest.raises(ValueError):
        oracle.ode_residual(np.ones_like(x), x, "bogus")


def test_radial_ground_state_residual():
    spec = system.PotentialSpec()
    st = system.make_state(0, 0, 0, spec)
    rp = st.radial_params
    r = np.linspace(0.05, oracle.radial_extent(rp.gamma, rp.alpha, 1), 4000)
    g = radial.reduced_wavefunction(r, st.radial, rp)
    res = oracle.ode_residual(g, r, "radial", eps2=radial.eps2_of_energy(st.energy, rp), alpha=rp.alpha,
                              gamma=rp.gamma)
    bumped = oracle.ode_residual(g, r, "radial", eps2=radial.eps2_of_energy(1.01 * st.energy, rp),
                                 alpha=rp.alpha, gamma=rp.gamma)
    assert res < 1e-5 and bumped > 10 * res


@pytest.mark.parametrize("n, m, beta", [(0, 0, 0.0), (2, 1, 0.0), (1, 0, 0.125), (3, 2, 1.3)])
def test_angular_residual(n, m, beta):
    spec = system.PotentialSpec(beta=beta, D=4)
    st = system.make_state(0, n, m, spec)
    kappa = spec.angular_params(m).kappa
    theta = np.linspace(0.1, math.pi - 0.1, 2000)
    H = angular.angular_wavefunction(theta, st.angular)
    res = oracle.ode_residual(H, theta, "angular", ell_term=st.nu_prime - kappa, m=m, kappa=kappa)
    assert res < 1e-5
    wrong = oracle.ode_residual(H, theta, "angular", ell_term=1.01 * st.nu_prime + 0.01 - kappa, m=m, kappa=kappa)
    assert wrong > 10 * res


def test_orthonormality_single_and_identity():
    one = oracle.orthonormality_audit([lambda x: np.full_like(x, 1 / math.sqrt(2))], lambda x: np.ones_like(x),
                                      -1.0, 1.0)
    assert one.shape == (1, 1) and one[0, 0] == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(DomainError):
        oracle.orthonormality_audit([], np.ones_like, 0.0, 1.0)


def test_radial_gram():
    rp = radial.RadialParams(a=1.0, b=2.0, c=0.0, D=3, ell_prime=1.0)
    states = [radial.radial_state(N, rp) for N in range(4)]
    funcs = [(lambda r, s=s: radial.radial_wavefunction(np.maximum(r, 1e-300), s, rp)) for s in states]
    gram = oracle.orthonormality_audit(funcs, lambda r: r**2, 0.0, oracle.radial_extent(rp.gamma, rp.alpha, 4))
    assert max(oracle.gram_deviation(gram)) < 1e-8


def test_angular_gram():
    states = [angular.AngularState(n, 1.0, n + 1.0, (n + 1.0) * (n + 2.0)) for n in range(4)]
    funcs = [(lambda t, s=s: angular.angular_wavefunction(np.clip(t, 1e-300, math.pi - 1e-16), s)) for s in states]
    gram = oracle.orthonormality_audit(funcs, np.sin, 0.0, math.pi)
    assert max(oracle.gram_deviation(gram)) < 1e-10


def test_gram_deviation():
    off, diag = oracle.gram_deviation(np.array([[1.0, 0.2], [0.2, 0.7]]))
    assert off == pytest.approx(0.2) and diag == pytest.approx(0.3)


def test_oracle_is_independent_of_closed_forms():
    import ast
    import inspect
    tree = ast.parse(inspect.getsource(oracle))
    imported = {a.name for node in ast.walk(tree) if isinstance(node, ast.ImportFrom) for a in node.names}
    assert not imported & {"radial", "angular", "system", "nu_engine"}
