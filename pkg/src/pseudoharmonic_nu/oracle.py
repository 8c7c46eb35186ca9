"""Independent numerical checks of the closed forms.

Nothing here imports the closed-form radial or angular modules. The
eigen-solvers discretize the radial and polar equations directly:

* radial: -g'' + (alpha r^2 + gamma / r^2) g = eps^2 g on (0, inf)
* polar:  -(1/sin)(sin H')' + m'^2 / sin^2 H = nu' H on (0, pi)

The polar equation, and the radial one when its Frobenius exponent s
(s(s-1) = gamma) is small and non-integer, are put in self-adjoint form
after factoring out the power at the singular endpoint (sin^m' or r^s),
so the remaining unknown is smooth there; a cell-centred finite-volume
scheme discretizes them. For s >= 2 the plain Dirichlet three-point
Laplacian on g is already accurate and is used instead. Either way the
matrix is symmetric tridiagonal and its lowest eigenvalues come from
Sturm-sequence bisection (LAPACK stebz). The schemes are second order, so
one Richardson step on a halved grid removes the leading error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, DomainError
from .specfun import gauss_legendre, integrate

DEFAULT_POINTS = 4000
_DECAY = math.log(1e16)


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of ``points`` nodes from lo to hi (endpoints included)."""

    lo: float
    hi: float
    points: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError("grid needs lo < hi")
        if self.points < 3:
            raise DomainError("grid needs at least 3 points")

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)

    def refined(self) -> "Grid1D":
        return Grid1D(self.lo, self.hi, 2 * self.points - 1)


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray
    residuals: np.ndarray
    grid: Grid1D
    extrapolated: bool
    error_estimates: np.ndarray | None = None


def _finite_volume(p_face, weight, potential, h):
    """Symmetric tridiagonal form of -(p y')' + q w y = lam w y, zero flux at both ends."""
    diag = np.zeros_like(weight)
    diag[:-1] += p_face
    diag[1:] += p_face
    diag = diag / (h * h * weight) + potential
    off = -p_face / (h * h * np.sqrt(weight[:-1] * weight[1:]))
    return diag, off


def _lowest_eigs(diag, off, count):
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1),
                                  lapack_driver="stebz")
    tv = diag[:, None] * vecs
    tv[:-1] += off[:, None] * vecs[1:]
    tv[1:] += off[:, None] * vecs[:-1]
    norm = np.max(np.abs(diag)) + 2.0 * np.max(np.abs(off))
    res = np.max(np.abs(tv - vecs * vals[None, :]), axis=0) / norm
    return vals, res


def _solve(discretize, grid, count, richardson, tol):
    coarse, res_c = discretize(grid, count)
    if not richardson:
        return EigenResult(coarse, res_c, grid, False)
    fine_grid = grid.refined()
    fine, res_f = discretize(fine_grid, count)
    shift = np.abs(fine - coarse) / np.maximum(1.0, np.abs(fine))
    if np.any(shift > tol):
        raise ConvergenceError(f"eigenvalues moved by up to {shift.max():.3e} under refinement (tol {tol:.1e})")
    values = (4.0 * fine - coarse) / 3.0
    if np.any(np.diff(values) <= 0.0):
        raise ConvergenceError("extrapolated eigenvalues are not strictly ascending")
    return EigenResult(values, res_f, fine_grid, True, np.abs(fine - coarse) / 3.0)


def frobenius_exponent(gamma: float) -> float:
    """Larger root s of s(s - 1) = gamma."""
    if not 4.0 * gamma + 1.0 >= 0.0:
        raise DomainError("4 gamma + 1 must be nonnegative")
    return 0.5 * (1.0 + math.sqrt(4.0 * gamma + 1.0))


def radial_extent(gamma: float, alpha: float, count: int) -> float:
    """Cut-off radius past the outer turning point of the count-th level.

    The turning point is estimated from a cheap coarse solve; past it the
    WKB decay exponent reaches ln(1e16) within sqrt(2 ln(1e16) / sqrt(alpha)).
    """
    sa = math.sqrt(alpha)
    decay = math.sqrt(2.0 * _DECAY / sa)
    hi = 2.0 * decay
    for _ in range(20):
        vals = _radial_discrete(gamma, alpha, Grid1D(0.0, hi, 801), count)[0]
        r_turn = math.sqrt(max(vals[-1], 0.0) / alpha)
        need = r_turn + decay
        if hi >= need:
            return need
        hi = 1.5 * need
    raise ConvergenceError("could not size the radial domain")


def _radial_discrete(gamma, alpha, grid, count):
    s = frobenius_exponent(gamma)
    h = grid.spacing
    if s >= 2.0 or s == 1.0:
        # g ~ r^s is smooth enough for plain Dirichlet differences
        r = grid.lo + np.arange(1, grid.points - 1) * h
        diag = 2.0 / (h * h) + alpha * r**2 + gamma / r**2
        off = np.full(len(r) - 1, -1.0 / (h * h))
        return _lowest_eigs(diag, off, count)
    centres = grid.lo + (np.arange(grid.points - 1) + 0.5) * h
    faces = grid.lo + np.arange(1, grid.points - 1) * h
    # g = r^s v: -(r^2s v')' + alpha r^2 r^2s v = eps^2 r^2s v
    return _lowest_eigs(*_finite_volume(faces ** (2 * s), centres ** (2 * s), alpha * centres**2, h), count)


def radial_fd_eigen(gamma: float, alpha: float, count: int, grid: Grid1D | None = None,
                    richardson: bool = True, tol: float = 1e-3) -> EigenResult:
    """Lowest ``count`` eigenvalues eps^2 of -g'' + (alpha r^2 + gamma/r^2) g = eps^2 g.

    The grid must start at r = 0. When omitted, DEFAULT_POINTS nodes on
    [0, :func:`radial_extent`] are used.
    """
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    if count < 1:
        raise DomainError("count must be positive")
    if grid is None:
        grid = Grid1D(0.0, radial_extent(gamma, alpha, count), DEFAULT_POINTS)
    if grid.lo != 0.0:
        raise DomainError("radial grid must start at r = 0")
    return _solve(lambda g, c: _radial_discrete(gamma, alpha, g, c), grid, count, richardson, tol)


def _angular_discrete(m_prime, grid, count):
    h = grid.spacing
    centres = grid.lo + (np.arange(grid.points - 1) + 0.5) * h
    faces = grid.lo + np.arange(1, grid.points - 1) * h
    e = 2.0 * m_prime + 1.0
    # H = sin^m' y: -(sin^e y')' = (nu' - m'(m'+1)) sin^e y
    vals, res = _lowest_eigs(*_finite_volume(np.sin(faces) ** e, np.sin(centres) ** e,
                                             np.zeros_like(centres), h), count)
    return vals + m_prime * (m_prime + 1.0), res


def angular_fd_eigen(m_prime: float, count: int, grid: Grid1D | None = None,
                     richardson: bool = True, tol: float = 1e-3) -> EigenResult:
    """Lowest ``count`` eigenvalues nu' of the polar equation at fixed m'."""
    if m_prime < 0:
        raise DomainError("m' must be nonnegative")
    if grid is None:
        grid = Grid1D(0.0, math.pi, DEFAULT_POINTS)
    if grid.lo != 0.0 or abs(grid.hi - math.pi) > 1e-15:
        raise DomainError("angular grid must span [0, pi]")
    return _solve(lambda g, c: _angular_discrete(m_prime, g, c), grid, count, richardson, tol)


def _derivatives(values, h):
    # 5-point central stencils, fourth order
    f = values
    d1 = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12.0 * h)
    d2 = (-f[:-4] + 16 * f[1:-3] - 30 * f[2:-2] + 16 * f[3:-1] - f[4:]) / (12.0 * h * h)
    return d1, d2


def ode_residual(values, x, equation: str, **coeffs) -> float:
    """Scaled max-norm residual of a sampled solution.

    ``x`` is a uniform grid and ``values`` the samples on it. Returns
    max |L psi| / max |psi| over points where the 5-point stencil fits.

    * ``equation="radial"``: g'' + (eps2 - alpha r^2 - gamma / r^2) g,
      coefficients ``eps2``, ``alpha``, ``gamma``.
    * ``equation="angular"``: H'' + cot H' + [ell_term - (m^2 + kappa cos^2)/sin^2] H,
      coefficients ``ell_term`` (= ell(ell + D - 2)), ``m``, ``kappa``.
    """
    values = np.asarray(values, dtype=float)
    x = np.asarray(x, dtype=float)
    scale = np.max(np.abs(values))
    if scale == 0.0:
        return 0.0
    h = x[1] - x[0]
    if not np.allclose(np.diff(x), h, rtol=1e-9, atol=0.0):
        raise DomainError("ode_residual needs a uniform grid")
    d1, d2 = _derivatives(values, h)
    xi, f = x[2:-2], values[2:-2]
    if equation == "radial":
        res = d2 + (coeffs["eps2"] - coeffs["alpha"] * xi**2 - coeffs["gamma"] / xi**2) * f
    elif equation == "angular":
        s, c = np.sin(xi), np.cos(xi)
        res = d2 + c / s * d1 + (coeffs["ell_term"] - (coeffs["m"] ** 2 + coeffs["kappa"] * c * c) / (s * s)) * f
    else:
        raise ValueError(f"unknown equation {equation!r}")
    return float(np.max(np.abs(res)) / scale)


def require_nonzero(values, floor: float = 1e-300):
    """Reject samples that are identically (numerically) zero."""
    if not np.max(np.abs(np.asarray(values, dtype=float))) > floor:
        raise DomainError("solution samples are identically zero")


def orthonormality_audit(functions: Sequence[Callable], weight: Callable, lo: float, hi: float,
                         tol: float = 1e-13) -> np.ndarray:
    """Gram matrix int f_i f_j weight over [lo, hi] by composite Gauss-Legendre.

    Raises :class:`~pseudoharmonic_nu.errors.QuadratureError` if an entry
    does not converge.
    """
    if not functions:
        raise DomainError("need at least one function")
    rule = gauss_legendre(20)
    k = len(functions)
    gram = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            fi, fj = functions[i], functions[j]
            gram[i, j] = gram[j, i] = integrate(lambda x: fi(x) * fj(x) * weight(x), lo, hi,
                                                panels=32, rule=rule, tol=tol)
    return gram


def gram_deviation(gram: np.ndarray):
    """(max off-diagonal magnitude, max |diagonal - 1|)."""
    gram = np.asarray(gram)
    off = gram - np.diag(np.diag(gram))
    return float(np.max(np.abs(off))), float(np.max(np.abs(np.diag(gram) - 1.0)))
