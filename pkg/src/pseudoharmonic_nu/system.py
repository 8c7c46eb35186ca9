"""Full potential, bound-state composition and spectrum enumeration."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import angular, radial
from .errors import CollapseError, DomainError


@dataclass(frozen=True)
class PotentialSpec:
    """Molecular parameters of V = De (r/re - re/r)^2 + beta cot^2(theta) / r^2.

    ``a``, ``b`` and ``c`` are derived on every access.
    """

    De: float = 1.0
    re: float = 1.0
    beta: float = 0.0
    D: int = 3
    hbar: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        if not (self.De > 0 and self.re > 0):
            raise DomainError("De and re must be positive")
        if self.beta < 0:
            raise DomainError("beta must be nonnegative")
        if int(self.D) != self.D or self.D < 3:
            raise DomainError("D must be an integer >= 3")
        if not (self.hbar > 0 and self.mu > 0):
            raise DomainError("hbar and mu must be positive")

    @property
    def a(self) -> float:
        return radial.abc_from_molecular(self.De, self.re)[0]

    @property
    def b(self) -> float:
        return radial.abc_from_molecular(self.De, self.re)[1]

    @property
    def c(self) -> float:
        return radial.abc_from_molecular(self.De, self.re)[2]

    def angular_params(self, m: int) -> angular.AngularParams:
        return angular.AngularParams(m=m, beta=self.beta, D=self.D, hbar=self.hbar, mu=self.mu)

    def radial_params(self, ell_prime: float) -> radial.RadialParams:
        a, b, c = radial.abc_from_molecular(self.De, self.re)
        return radial.RadialParams(a=a, b=b, c=c, D=self.D, hbar=self.hbar, mu=self.mu,
                                   ell_prime=ell_prime, beta=self.beta)


@dataclass(frozen=True)
class BoundState:
    N: int
    n: int
    m: int
    sign: int
    spec: PotentialSpec
    angular: angular.AngularState
    radial: radial.RadialState
    radial_params: radial.RadialParams = field(repr=False)

    @property
    def m_prime(self) -> float:
        return self.angular.m_prime

    @property
    def ell_prime(self) -> float:
        return self.angular.ell_prime

    @property
    def nu_prime(self) -> float:
        return self.angular.nu_prime

    @property
    def L(self) -> float:
        return self.radial.L

    @property
    def energy(self) -> float:
        return self.radial.energy

    @property
    def label(self):
        return (self.N, self.n, self.m, self.sign)


def potential_value(r, theta, spec: PotentialSpec):
    """V(r, theta), evaluated in both the molecular and the (a, b, c) forms.

    Raises if the two disagree beyond 1e-13 relative (plus a tiny absolute
    floor near the zero at r = re).
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    if np.any((theta <= 0) | (theta >= math.pi)):
        raise DomainError("theta must lie strictly inside (0, pi); the ring term is singular at the poles")
    ring = spec.beta * np.cos(theta) ** 2 / (r**2 * np.sin(theta) ** 2)
    molecular = spec.De * (r / spec.re - spec.re / r) ** 2 + ring
    a, b, c = radial.abc_from_molecular(spec.De, spec.re)
    expanded = a * r**2 + b / r**2 + c + ring
    scale = np.abs(a * r**2) + np.abs(b / r**2) + np.abs(c) + np.abs(ring)
    if np.any(np.abs(molecular - expanded) > 1e-13 * np.abs(molecular) + 1e-14 * scale):
        raise ArithmeticError("molecular and expanded potential forms disagree")
    return molecular if molecular.ndim else float(molecular)


def make_state(N: int, n: int, m: int, spec: PotentialSpec, sign: int = 1) -> BoundState:
    """Compose m' -> ell' -> (L, E, C) for the labels (N, n, m)."""
    for name, v in (("N", N), ("n", n), ("m", m)):
        if int(v) != v or v < 0:
            raise DomainError(f"{name} must be a nonnegative integer, got {v!r}")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    ang = angular.angular_state(n, spec.angular_params(m))
    rp = spec.radial_params(ang.ell_prime)
    rad = radial.radial_state(N, rp)
    return BoundState(N=N, n=n, m=m, sign=sign, spec=spec, angular=ang, radial=rad, radial_params=rp)


def total_wavefunction(r, theta, phi, state: BoundState):
    """psi = R(r) H(theta) Phi(phi), each factor separately normalized."""
    R = radial.radial_wavefunction(r, state.radial, state.radial_params)
    H = angular.angular_wavefunction(theta, state.angular)
    Phi = angular.azimuthal(phi, state.m, state.sign)
    return R * H * Phi


@dataclass
class Spectrum:
    """States sorted by energy plus the labels skipped because of collapse."""

    states: list
    skipped: list

    def __iter__(self):
        return iter(self.states)

    def __len__(self):
        return len(self.states)

    def __getitem__(self, i):
        return self.states[i]


def enumerate_spectrum(spec: PotentialSpec, N_max: int, n_max: int, m_max: int) -> Spectrum:
    """All states with N <= N_max, n <= n_max, m <= m_max, ascending in energy.

    Ties are broken by (N, n, m). Labels whose barrier collapses are skipped
    with a :class:`RuntimeWarning` and listed in ``Spectrum.skipped``.
    """
    if min(N_max, n_max, m_max) < 0:
        raise DomainError("label bounds must be nonnegative")
    states, skipped = [], []
    for N in range(N_max + 1):
        for n in range(n_max + 1):
            for m in range(m_max + 1):
                try:
                    states.append(make_state(N, n, m, spec))
                except CollapseError as exc:
                    skipped.append(((N, n, m), str(exc)))
                    warnings.warn(f"skipping state (N={N}, n={n}, m={m}): {exc}", RuntimeWarning,
                                  stacklevel=2)
    # round so that degenerate levels computed along different paths tie exactly
    states.sort(key=lambda s: (float(f"{s.energy:.12g}"), s.N, s.n, s.m))
    return Spectrum(states=states, skipped=skipped)
