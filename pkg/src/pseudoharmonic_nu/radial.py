"""Radial factor: energies and normalized radial wavefunctions.

With V = a r^2 + b / r^2 + c (plus the ring term, folded into ell') and
g(r) = r^((D-1)/2) R(r), the radial equation reads

    g'' + [eps^2 - alpha r^2 - gamma / r^2] g = 0,

eps^2 = 2 mu (E - c) / hbar^2, alpha = 2 mu a / hbar^2 and
gamma = nu_tilde + 2 mu b / hbar^2. Everything below is expressed through
the barrier radicand

    4 gamma + 1 = (D-2)^2 + 4 ell'(ell' + D - 2) + 8 mu (b - beta) / hbar^2,

which must be nonnegative for a bound state to exist.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import nu_engine
from .angular import ell_effective
from .errors import CollapseError, DomainError
from .specfun import laguerre, log_gamma


@dataclass(frozen=True)
class RadialParams:
    a: float
    b: float
    c: float
    D: int = 3
    hbar: float = 1.0
    mu: float = 1.0
    ell_prime: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"a must be positive (confining), got {self.a!r}")
        if self.b < 0 or self.beta < 0 or self.ell_prime < 0:
            raise DomainError("b, beta and ell' must be nonnegative")
        if int(self.D) != self.D or self.D < 3:
            raise DomainError(f"D must be an integer >= 3, got {self.D!r}")
        if not (self.hbar > 0 and self.mu > 0):
            raise DomainError("hbar and mu must be positive")

    @property
    def alpha(self) -> float:
        return 2.0 * self.mu * self.a / self.hbar**2

    @property
    def barrier_radicand(self) -> float:
        """4 gamma + 1."""
        D, lp = self.D, self.ell_prime
        return (D - 2) ** 2 + 4.0 * lp * (lp + D - 2) + 8.0 * self.mu * (self.b - self.beta) / self.hbar**2

    @property
    def gamma(self) -> float:
        return (self.barrier_radicand - 1.0) / 4.0

    @property
    def nu_tilde(self) -> float:
        return self.gamma - 2.0 * self.mu * self.b / self.hbar**2


@dataclass(frozen=True)
class RadialState:
    N: int
    L: float
    energy: float
    norm_const: float
    eps: float


def abc_from_molecular(De: float, re: float):
    """(a, b, c) = (De / re^2, De re^2, -2 De)."""
    if not (De > 0 and re > 0):
        raise DomainError("De and re must be positive")
    return De / re**2, De * re**2, -2.0 * De


def centrifugal_constants(D: int, ell: float):
    """(M, nu_tilde) with M = D + 2 ell and nu_tilde = (M - 1)(M - 3) / 4."""
    M = D + 2.0 * ell
    return M, 0.25 * (M - 1.0) * (M - 3.0)


def _sqrt_barrier(params: RadialParams) -> float:
    rad = params.barrier_radicand
    if rad < 0:
        raise CollapseError(f"beta too large: centrifugal-barrier collapse (4 gamma + 1 = {rad:.6g} < 0)")
    return math.sqrt(rad)


def _bound(E, params):
    if not E > params.c:
        raise CollapseError(f"energy {E!r} is not above c={params.c!r}")
    return E


def energy(N: int, params: RadialParams) -> float:
    """E_N = c + sqrt(hbar^2 a / 2 mu) (4N + 2 + sqrt(4 gamma + 1))."""
    if N < 0:
        raise DomainError("N must be nonnegative")
    root = _sqrt_barrier(params)
    return _bound(params.c + math.sqrt(params.hbar**2 * params.a / (2.0 * params.mu)) * (4 * N + 2 + root),
                  params)


def energy_from_centrifugal(N: int, params: RadialParams) -> float:
    """Same spectrum written through M = D + 2 ell with ell recovered from ell'.

    Requires a real ell, i.e. ell'(ell' + D - 2) - 2 mu beta / hbar^2
    >= -(D-2)^2/4.
    """
    kappa = 2.0 * params.mu * params.beta / params.hbar**2
    ell = ell_effective(params.ell_prime, kappa, params.D)
    M, _ = centrifugal_constants(params.D, ell)
    rad = (M - 1.0) * (M - 3.0) + 8.0 * params.mu * params.b / params.hbar**2 + 1.0
    if rad < 0:
        raise CollapseError("centrifugal-barrier collapse")
    return _bound(params.c + math.sqrt(params.hbar**2 * params.a / (2.0 * params.mu))
                  * (4 * N + 2 + math.sqrt(rad)), params)


def energy_3d_ring(N, n, m_prime, De, re, beta, hbar=1.0, mu=1.0) -> float:
    """Three-dimensional spectrum in molecular parameters and (N, n, m')."""
    rad = (n + m_prime + 0.5) ** 2 + 2.0 * mu * (De * re**2 - beta) / hbar**2
    if rad < 0:
        raise CollapseError("beta too large: centrifugal-barrier collapse")
    return -2.0 * De + math.sqrt(2.0 * hbar**2 * De / (mu * re**2)) * (2 * N + 1 + math.sqrt(rad))


def energy_pseudoharmonic_3d(N, ell, De, re, hbar=1.0, mu=1.0) -> float:
    """Pure pseudoharmonic 3D spectrum (no ring term)."""
    return -2.0 * De + math.sqrt(2.0 * hbar**2 * De / (mu * re**2)) * (
        2 * N + 1 + math.sqrt((ell + 0.5) ** 2 + 2.0 * mu * De * re**2 / hbar**2))


def energy_pseudoharmonic_3d_no_De(N, ell, De, re, hbar=1.0, mu=1.0) -> float:
    """Variant whose level-spacing prefactor lacks the De factor.

    Kept only so verification can show it disagrees with the numerical
    spectrum whenever De != 1.
    """
    return -2.0 * De + math.sqrt(2.0 * hbar**2 / (mu * re**2)) * (
        2 * N + 1 + math.sqrt((ell + 0.5) ** 2 + 2.0 * mu * De * re**2 / hbar**2))


def L_parameter(params: RadialParams) -> float:
    """L = (sqrt(4 gamma + 1) - 1) / 2; the Laguerre index is L + 1/2."""
    return 0.5 * (_sqrt_barrier(params) - 1.0)


def normalization_constant(N: int, L: float, alpha: float) -> float:
    """C_{N,L} = sqrt(2 alpha^((L + 3/2)/2) N! / Gamma(N + L + 3/2)).

    Follows from int_0^inf z^eta e^-z [L_N^eta(z)]^2 dz = Gamma(N + eta + 1)/N!
    with eta = L + 1/2 and z = sqrt(alpha) r^2.
    """
    if not L + 1.5 > 0:
        raise DomainError("need L + 3/2 > 0")
    log_c2 = (math.log(2.0) + 0.5 * (L + 1.5) * math.log(alpha) + log_gamma(N + 1.0)
              - log_gamma(N + L + 1.5))
    return math.exp(0.5 * log_c2)


def radial_state(N: int, params: RadialParams) -> RadialState:
    E = energy(N, params)
    L = L_parameter(params)
    eps = math.sqrt(2.0 * params.mu * (E - params.c)) / params.hbar
    return RadialState(N=N, L=L, energy=E, norm_const=normalization_constant(N, L, params.alpha), eps=eps)


def radial_wavefunction(r, state: RadialState, params: RadialParams):
    """R(r) = C r^(L - (D-3)/2) exp(-sqrt(alpha) r^2 / 2) L_N^(L+1/2)(sqrt(alpha) r^2)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("r must be positive")
    sa = math.sqrt(params.alpha)
    z = sa * r * r
    val = (state.norm_const * r ** (state.L - (params.D - 3) / 2.0) * np.exp(-0.5 * z)
           * laguerre(state.N, state.L + 0.5, z))
    return val if np.ndim(val) else float(val)


def reduced_wavefunction(r, state: RadialState, params: RadialParams):
    """g(r) = r^((D-1)/2) R(r), the solution of the reduced radial equation."""
    r = np.asarray(r, dtype=float)
    return r ** ((params.D - 1) / 2.0) * radial_wavefunction(r, state, params)


def eps2_of_energy(E: float, params: RadialParams) -> float:
    return 2.0 * params.mu * (E - params.c) / params.hbar**2


def energy_of_eps2(eps2: float, params: RadialParams) -> float:
    return params.c + params.hbar**2 * eps2 / (2.0 * params.mu)


def hypergeometric_form(params: RadialParams, E: float) -> nu_engine.HypergeometricForm:
    """Radial equation in s = r^2 as an NU form on (0, inf)."""
    return nu_engine.HypergeometricForm(
        tau_tilde=(1.0, 0.0),
        sigma=(0.0, 2.0, 0.0),
        sigma_tilde=(-params.gamma, eps2_of_energy(E, params), -params.alpha),
        domain=(0.0, math.inf),
    )


def energy_via_nu(N: int, params: RadialParams) -> float:
    """E_N found by root-finding lambda(E) = lambda_N(E) in the NU engine."""

    def family(E):
        return hypergeometric_form(params, E)

    step = params.hbar**2 / (2.0 * params.mu) * max(1.0, math.sqrt(params.alpha))
    bracket = nu_engine.expanding_bracket(family, N, params.c, step)
    return nu_engine.eigen_solve(family, N, bracket)
