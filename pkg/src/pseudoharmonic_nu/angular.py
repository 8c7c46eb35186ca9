"""Polar and azimuthal factors of the separated wavefunction.

The ring term beta cos^2(theta) / (r^2 sin^2(theta)) shifts the azimuthal
index to m' = sqrt(m^2 + 2 mu beta / hbar^2) and the angular momentum to
ell', with ell'(ell' + D - 2) = (n + m')(n + m' + 1). The polar factor is
H(theta) = N sin^m'(theta) P_n^(m', m')(cos theta), normalized against
sin(theta) d(theta) on (0, pi).

D enters only through ell'; the theta equation itself carries the 3D
cot(theta) first-derivative term, exactly as the separation is set up.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import nu_engine
from .errors import DomainError, InconsistentInputError
from .specfun import jacobi, log_gamma


@dataclass(frozen=True)
class AngularParams:
    m: int
    beta: float = 0.0
    D: int = 3
    hbar: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise DomainError(f"m must be a nonnegative integer, got {self.m!r}")
        if self.beta < 0:
            raise DomainError(f"beta must be nonnegative, got {self.beta!r}")
        if int(self.D) != self.D or self.D < 3:
            raise DomainError(f"D must be an integer >= 3, got {self.D!r}")
        if not (self.hbar > 0 and self.mu > 0):
            raise DomainError("hbar and mu must be positive")

    @property
    def kappa(self) -> float:
        """Reduced ring strength 2 mu beta / hbar^2."""
        return 2.0 * self.mu * self.beta / self.hbar**2


@dataclass(frozen=True)
class AngularState:
    n: int
    m_prime: float
    ell_prime: float
    nu_prime: float
    D: int = 3


def m_prime(params: AngularParams) -> float:
    return math.sqrt(params.m**2 + params.kappa)


def ell_prime(n: int, m_prime: float, D: int) -> float:
    """Positive root of ell'(ell' + D - 2) = (n + m')(n + m' + 1)."""
    if n < 0 or m_prime < 0 or D < 3:
        raise DomainError("need n >= 0, m' >= 0 and D >= 3")
    j = n + m_prime
    return -(D - 2) / 2.0 + 0.5 * math.sqrt((D - 2) ** 2 + 4.0 * j * (j + 1.0))


def n_of_ell_prime(ell_prime: float, m_prime: float, D: int) -> int:
    """Jacobi degree n recovered from ell'; inverse of :func:`ell_prime`."""
    raw = -(1.0 + 2.0 * m_prime) / 2.0 + 0.5 * math.sqrt((2.0 * ell_prime + 1.0) ** 2
                                                         + 4.0 * ell_prime * (D - 3))
    n = int(round(raw))
    if abs(raw - n) >= 1e-8 or n < 0:
        raise InconsistentInputError(f"ell'={ell_prime!r} does not correspond to an integer n (got {raw!r})")
    return n


def nu_prime(ell_prime: float, D: int) -> float:
    return ell_prime * (ell_prime + D - 2)


def ell_effective(ell_prime: float, kappa: float, D: int) -> float:
    """Real ell with ell(ell + D - 2) = ell'(ell' + D - 2) - kappa.

    Raises :class:`DomainError` when the ring term pushes ell(ell + D - 2)
    below -(D - 2)^2 / 4, where no real ell exists.
    """
    disc = (D - 2) ** 2 + 4.0 * (nu_prime(ell_prime, D) - kappa)
    if disc < 0:
        raise DomainError("no real ell for this ell' and ring strength")
    return -(D - 2) / 2.0 + 0.5 * math.sqrt(disc)


def angular_state(n: int, params: AngularParams) -> AngularState:
    mp = m_prime(params)
    lp = ell_prime(n, mp, params.D)
    return AngularState(n=n, m_prime=mp, ell_prime=lp, nu_prime=nu_prime(lp, params.D), D=params.D)


def norm_constant(n: int, m_prime: float) -> float:
    """N with N^2 * int_{-1}^{1} (1 - s^2)^m' [P_n^(m',m')(s)]^2 ds = 1."""
    log_h = ((2.0 * m_prime + 1.0) * math.log(2.0) + 2.0 * log_gamma(n + m_prime + 1.0)
             - log_gamma(n + 1.0) - math.log(2.0 * n + 2.0 * m_prime + 1.0)
             - log_gamma(n + 2.0 * m_prime + 1.0))
    return math.exp(-0.5 * log_h)


def factorial_prefactor(ell_prime: float, m_prime: float) -> float:
    """sqrt((2l'+1)(l'-m')! / (2 (l'+m')!)), the associated-Legendre normalization.

    Only meaningful for integer ell' and m'. Multiplied by
    (l'+m')! / (2^m' l'!) it equals :func:`norm_constant` for n = l' - m',
    because P_l^m = (l+m)!/(2^m l!) (1-x^2)^(m/2) P_(l-m)^(m,m) up to sign.
    """
    lp, mp = ell_prime, m_prime
    return math.sqrt((2 * lp + 1) * math.exp(log_gamma(lp - mp + 1) - log_gamma(lp + mp + 1)) / 2.0)


def angular_wavefunction(theta, state: AngularState):
    """Normalized polar factor H(theta) for theta in (0, pi)."""
    theta = np.asarray(theta, dtype=float)
    if np.any((theta <= 0.0) | (theta >= math.pi)):
        raise DomainError("theta must lie strictly inside (0, pi)")
    mp = state.m_prime
    val = (norm_constant(state.n, mp) * np.sin(theta) ** mp
           * jacobi(state.n, mp, mp, np.clip(np.cos(theta), -1.0, 1.0)))
    return val if np.ndim(val) else float(val)


def azimuthal(phi, m: int, sign: int = 1):
    """Phi_m(phi) = exp(i sign m phi) / sqrt(2 pi)."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    val = np.exp(1j * sign * m * np.asarray(phi, dtype=float)) / math.sqrt(2.0 * math.pi)
    return val if np.ndim(val) else complex(val)


def hypergeometric_form(nu_prime: float, m_prime: float) -> nu_engine.HypergeometricForm:
    """Polar equation in s = cos(theta) as an NU form on (-1, 1)."""
    return nu_engine.HypergeometricForm(
        tau_tilde=(0.0, -2.0),
        sigma=(1.0, 0.0, -1.0),
        sigma_tilde=(nu_prime - m_prime**2, 0.0, -nu_prime),
        domain=(-1.0, 1.0),
    )


def nu_prime_via_nu(n: int, m_prime: float) -> float:
    """Solve lambda = lambda_n for nu' numerically through the NU engine."""

    def family(nu):
        return hypergeometric_form(nu, m_prime)

    start = m_prime * m_prime
    bracket = nu_engine.expanding_bracket(family, n, start, 1.0 + start)
    return nu_engine.eigen_solve(family, n, bracket)
