"""Special functions and Gauss-Legendre quadrature.

Everything here is a pure function of its arguments. Polynomial evaluators
accept scalars or numpy arrays for ``x`` and broadcast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import DomainError, EvaluationError, QuadratureError

# Lanczos approximation, g = 7, 9 terms.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _log_gamma_scalar(x: float) -> float:
    if not x > 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    shift = 0.0
    # Lanczos sum is tuned for x >= 1/2.
    while x < 0.5:
        shift -= math.log(x)
        x += 1.0
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return shift + _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def log_gamma(x):
    """Natural log of the gamma function for positive real ``x``.

    Lanczos approximation; absolute error below 1e-12 on [0.5, 100].
    Arrays are evaluated elementwise.
    """
    if np.ndim(x) == 0:
        return _log_gamma_scalar(float(x))
    arr = np.asarray(x, dtype=float)
    return np.vectorize(_log_gamma_scalar, otypes=[float])(arr)


def gamma(x: float) -> float:
    """Gamma function for positive real ``x`` (via :func:`log_gamma`)."""
    return math.exp(_log_gamma_scalar(float(x)))


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x) by upward recurrence."""
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    if not alpha > -1.0:
        raise DomainError(f"Laguerre parameter must exceed -1, got {alpha!r}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def jacobi(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^(a,b)(x) by upward three-term recurrence.

    Non-integer ``a`` and ``b`` are fine; both must exceed -1.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    if not (a > -1.0 and b > -1.0):
        raise DomainError(f"Jacobi parameters must exceed -1, got a={a!r}, b={b!r}")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise DomainError("Jacobi argument must lie in [-1, 1]")
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    for k in range(1, n):
        c = 2 * k + a + b
        a1 = 2.0 * (k + 1) * (k + a + b + 1) * c
        a2 = (c + 1) * (a * a - b * b)
        a3 = (c + 1) * (c + 2) * c
        a4 = 2.0 * (k + a) * (k + b) * (c + 2)
        prev, cur = cur, ((a2 + a3 * x) * cur - a4 * prev) / a1
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.nodes)


def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule, exact for polynomials of degree <= 2n-1.

    Roots of P_n are found by Newton iteration from the Tricomi initial
    guess; only the nonnegative half is iterated and then mirrored so the
    rule is exactly symmetric.
    """
    if n < 1 or int(n) != n:
        raise DomainError(f"rule size must be a positive integer, got {n!r}")
    m = (n + 1) // 2
    i = np.arange(1, m + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))

    def legendre_and_derivative(x):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        return p1, n * (x * p1 - p0) / (x * x - 1.0)

    for _ in range(100):
        p, dp = legendre_and_derivative(x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    _, dp = legendre_and_derivative(x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    if n % 2:
        x[-1] = 0.0
    nodes = np.concatenate([-x, x[::-1][n % 2:]])
    weights = np.concatenate([w, w[::-1][n % 2:]])
    return QuadratureRule(nodes=nodes, weights=weights)


def _composite(f, a, b, panels, rule):
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel()
    vals = np.asarray(f(pts), dtype=float)
    if vals.shape != pts.shape:
        vals = np.broadcast_to(vals, pts.shape)
    if not np.all(np.isfinite(vals)):
        bad = pts[~np.isfinite(vals)][0]
        raise EvaluationError(f"integrand is not finite at x={bad!r}")
    vals = vals.reshape(panels, len(rule))
    return float(np.sum(half * (vals @ rule.weights))), float(np.sum(half * (np.abs(vals) @ rule.weights)))


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    panels: int = 16,
    rule: QuadratureRule | None = None,
    tol: float = 1e-13,
    max_panels: int = 1 << 14,
) -> float:
    """Composite Gauss-Legendre integral of a vectorized ``f`` over [a, b].

    The panel count is doubled until two successive estimates differ by
    less than ``tol`` times the integral of |f| (absolute below unit
    magnitude), so integrals that cancel to zero still converge. Raises
    :class:`QuadratureError` if ``max_panels`` is exceeded first.
    """
    if not a < b:
        raise DomainError(f"integration requires a < b, got [{a!r}, {b!r}]")
    if panels < 1:
        raise DomainError("panels must be positive")
    if rule is None:
        rule = gauss_legendre(20)
    prev, _ = _composite(f, a, b, panels, rule)
    while panels <= max_panels:
        panels *= 2
        cur, mass = _composite(f, a, b, panels, rule)
        change = abs(cur - prev)
        if change <= tol * max(1.0, mass):
            return cur
        prev = cur
    raise QuadratureError(f"no convergence on [{a}, {b}] with {panels} panels (last change {change:.3e})")


def truncation_point(log_envelope: Callable[[float], float], start: float,
                     drop: float = math.log(1e16)) -> float:
    """Point beyond the envelope's peak where it has fallen by ``drop``.

    ``log_envelope`` is the log of an analytic bound of the integrand,
    unimodal on (start, inf); it may be ``-inf`` at ``start``. The default
    drop is a factor 1e16.
    """
    hi = max(2.0 * abs(start), 1.0)
    while True:
        xs = np.linspace(start, start + hi, 2001)
        logs = np.array([log_envelope(x) for x in xs])
        k = int(np.argmax(logs))
        if logs[-1] < logs[k] - drop:
            break
        hi *= 2.0
        if hi > 1e12:
            raise DomainError("envelope does not decay")
    # refine the sampled peak before measuring the drop from it
    lo_k, hi_k = xs[max(k - 1, 0)], xs[min(k + 1, len(xs) - 1)]
    peak = minimize_scalar(lambda x: -log_envelope(x), bounds=(lo_k, hi_k), method="bounded",
                           options={"xatol": 1e-12 * max(1.0, abs(hi_k))})
    top = max(logs[k], -peak.fun)
    return brentq(lambda x: log_envelope(x) - (top - drop), xs[k], xs[-1], xtol=1e-12)
