"""Generic Nikiforov-Uvarov reduction over numeric coefficient records.

An equation of hypergeometric type

    psi'' + (tau_t / sigma) psi' + (sigma_t / sigma**2) psi = 0

is described by the coefficient tuples of tau_t (degree <= 1), sigma and
sigma_t (degree <= 2), lowest order first. The engine finds the constants k
that make the radicand of pi(s) a perfect square, the linear pi branches,
selects the physical branch, and classifies the polynomial family through
the Pearson equation for the weight rho.

Everything is plain floating point; there is no symbolic layer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import (
    AmbiguousBranchError,
    BracketError,
    InconsistentInputError,
    NoPhysicalBranchError,
    NUReductionError,
    UnsupportedFamilyError,
)

_TOL = 1e-12

LAGUERRE = "laguerre-like"
JACOBI = "jacobi-like"
HERMITE = "hermite-like"


def _pad(coeffs, size):
    c = [float(v) for v in coeffs]
    if len(c) > size:
        if any(v != 0.0 for v in c[size:]):
            raise ValueError(f"polynomial of degree > {size - 1}: {coeffs!r}")
        c = c[:size]
    return tuple(c + [0.0] * (size - len(c)))


def polyval(coeffs, s):
    """Evaluate a polynomial given lowest-order-first coefficients."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def _sigma_roots(sigma):
    s0, s1, s2 = sigma
    if s2 == 0.0:
        if s1 == 0.0:
            return ()
        return (-s0 / s1,)
    disc = s1 * s1 - 4.0 * s2 * s0
    if disc < 0.0:
        return None  # complex pair
    sq = math.sqrt(disc)
    # numerically stable quadratic roots
    q = -0.5 * (s1 + math.copysign(sq, s1)) if s1 != 0.0 else -0.5 * sq
    r1 = q / s2
    r2 = s0 / q if q != 0.0 else r1
    return tuple(sorted((r1, r2)))


def _infer_domain(sigma):
    s0, s1, s2 = sigma
    roots = _sigma_roots(sigma)
    if s2 == 0.0 and s1 == 0.0:
        if s0 > 0.0:
            return (-math.inf, math.inf)
    elif s2 == 0.0:
        return (roots[0], math.inf) if s1 > 0.0 else (-math.inf, roots[0])
    elif roots is None:
        if s2 > 0.0:
            return (-math.inf, math.inf)
    elif s2 < 0.0 and roots[0] < roots[1]:
        return roots
    raise NUReductionError(f"cannot infer a domain with sigma > 0 for sigma={sigma!r}; pass one explicitly")


@dataclass(frozen=True)
class HypergeometricForm:
    """Coefficients (tau_tilde, sigma, sigma_tilde) and the domain of s.

    ``domain`` defaults to the interval on which sigma is positive, when
    that interval is unambiguous.
    """

    tau_tilde: tuple
    sigma: tuple
    sigma_tilde: tuple
    domain: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "tau_tilde", _pad(self.tau_tilde, 2))
        object.__setattr__(self, "sigma", _pad(self.sigma, 3))
        object.__setattr__(self, "sigma_tilde", _pad(self.sigma_tilde, 3))
        if self.domain is None:
            object.__setattr__(self, "domain", _infer_domain(self.sigma))
        lo, hi = (float(v) for v in self.domain)
        if not lo < hi:
            raise ValueError(f"empty domain {self.domain!r}")
        object.__setattr__(self, "domain", (lo, hi))
        for s in _interior_samples(lo, hi):
            if not polyval(self.sigma, s) > 0.0:
                raise ValueError(f"sigma is not positive at s={s!r} inside the domain")

    @property
    def sigma_prime(self):
        return (self.sigma[1], 2.0 * self.sigma[2])


def _interior_samples(lo, hi, count=9):
    if math.isinf(lo) and math.isinf(hi):
        return np.linspace(-10.0, 10.0, count)
    if math.isinf(hi):
        return lo + np.geomspace(1e-6, 1e3, count)
    if math.isinf(lo):
        return hi - np.geomspace(1e-6, 1e3, count)
    t = np.linspace(0.0, 1.0, count + 2)[1:-1]
    return lo + (hi - lo) * t


@dataclass(frozen=True)
class Family:
    """Classical polynomial family for y_n and the weight/phi factors.

    ``params`` holds the mapped family parameters:

    * laguerre-like: ``alpha``, ``scale``, ``shift``; y_n ~ L_n^(alpha)(scale (s - shift)),
      rho ~ exp(-scale (s - shift)) |s - shift|**alpha.
    * jacobi-like: ``a``, ``b``, ``lower``, ``upper``; y_n ~ P_n^(a,b)(x) with
      x = (2s - lower - upper)/(upper - lower), rho ~ (upper - s)**a (s - lower)**b.
    * hermite-like: ``scale``, ``center``; y_n ~ H_n(scale (s - center)),
      rho ~ exp(-scale**2 (s - center)**2).

    ``phi`` holds the exponents of phi(s) in the same variables:
    ``exp_linear``/``power`` (laguerre), ``power_upper``/``power_lower``
    (jacobi), or ``quad``/``linear`` (hermite: phi = exp(quad s^2 + linear s)).
    """

    kind: str
    params: dict
    phi: dict


@dataclass(frozen=True)
class NUSolution:
    k: float
    pi: tuple
    tau: tuple
    lam: float
    form: HypergeometricForm
    selected_by: str = ""
    family: Family | None = field(default=None, compare=False)

    @property
    def tau_prime(self) -> float:
        return self.tau[1]


def radicand(form: HypergeometricForm, k: float):
    """Coefficients (C, B, A) of ((sigma' - tau_t)/2)^2 - sigma_t + k sigma."""
    sp = form.sigma_prime
    p0 = 0.5 * (sp[0] - form.tau_tilde[0])
    p1 = 0.5 * (sp[1] - form.tau_tilde[1])
    q0, q1, q2 = form.sigma_tilde
    s0, s1, s2 = form.sigma
    return (p0 * p0 - q0 + k * s0, 2.0 * p0 * p1 - q1 + k * s1, p1 * p1 - q2 + k * s2)


def _half_tau_gap(form):
    sp = form.sigma_prime
    return (0.5 * (sp[0] - form.tau_tilde[0]), 0.5 * (sp[1] - form.tau_tilde[1]))


def _scale(*vals):
    return max(1.0, *(abs(v) for v in vals))


def _is_square(C, B, A):
    sc = _scale(A, B, C)
    return (abs(B * B - 4.0 * A * C) <= _TOL * sc * sc and A >= -_TOL * sc and C >= -_TOL * sc)


def k_candidates(form: HypergeometricForm) -> list[float]:
    """Real k for which the pi(s) radicand is the square of a linear polynomial.

    Writing the radicand as A(k) s^2 + B(k) s + C(k), the condition
    B^2 - 4AC = 0 is a polynomial of degree <= 2 in k. If that polynomial
    vanishes identically the radicand must be constant, so A = B = 0 is
    solved instead. Returns at most two values, ascending.
    """
    C0, B0, A0 = radicand(form, 0.0)
    s0, s1, s2 = form.sigma
    a = s1 * s1 - 4.0 * s2 * s0
    b = 2.0 * B0 * s1 - 4.0 * (A0 * s0 + C0 * s2)
    c = B0 * B0 - 4.0 * A0 * C0
    sc = _scale(a, b, c)
    roots: list[float] = []
    if abs(a) > _TOL * sc:
        disc = b * b - 4.0 * a * c
        if disc < -_TOL * max(1.0, b * b, abs(4.0 * a * c)):
            raise NUReductionError("no NU reduction exists: the k condition has no real root")
        sq = math.sqrt(max(disc, 0.0))
        roots = [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)]
    elif abs(b) > _TOL * sc:
        roots = [-c / b]
    else:
        # discriminant identically zero: need a constant radicand
        for coef_k, coef_0 in ((s2, A0), (s1, B0)):
            if coef_k != 0.0:
                roots = [-coef_0 / coef_k]
                break
        else:
            roots = [0.0]
    found: list[float] = []
    for k in sorted(roots):
        if not _is_square(*radicand(form, k)):
            continue
        if found and abs(k - found[-1]) <= _TOL * _scale(k):
            continue
        found.append(k)
    if not found:
        raise NUReductionError("no NU reduction exists: no real k gives a perfect-square radicand")
    return found


def pi_candidates(form: HypergeometricForm, k: float) -> list[tuple]:
    """The sign branches pi(s) = (sigma' - tau_t)/2 +- sqrt(radicand) at ``k``.

    Returns one branch when the radicand vanishes identically.
    """
    C, B, A = radicand(form, k)
    if not _is_square(C, B, A):
        raise InconsistentInputError(f"radicand is not a perfect square at k={k!r}")
    sc = _scale(A, B, C)
    if A > _TOL * sc:
        ra = math.sqrt(A)
        root = (B / (2.0 * ra), ra)
    else:
        root = (math.sqrt(max(C, 0.0)), 0.0)
    p = _half_tau_gap(form)
    plus = (p[0] + root[0], p[1] + root[1])
    if root == (0.0, 0.0):
        return [plus]
    minus = (p[0] - root[0], p[1] - root[1])
    return [plus, minus]


def _tau_of(form, pi):
    return (form.tau_tilde[0] + 2.0 * pi[0], form.tau_tilde[1] + 2.0 * pi[1])


def _zero_inside(tau, domain):
    if tau[1] == 0.0:
        return False
    z = -tau[0] / tau[1]
    return domain[0] < z < domain[1]


def _boundary_exponents(form, pi):
    # phi ~ (s - r)^(pi(r)/sigma'(r)) at each finite simple root r of sigma on the boundary
    out = []
    for end in form.domain:
        if math.isinf(end):
            continue
        sp = polyval(form.sigma_prime, end)
        if abs(polyval(form.sigma, end)) > 1e-9 * _scale(*form.sigma) or sp == 0.0:
            continue
        out.append(polyval(pi, end) / sp)
    return out


def _regular_at_boundary(form, pi):
    return all(e >= -_TOL * _scale(*pi) for e in _boundary_exponents(form, pi))


def _each(test):
    return lambda form, live: [c for c in live if test(form, c[1], c[2])]


def _principal(form, live):
    # among bounded branches prefer the larger boundary exponent (the principal Frobenius solution)
    score = [sum(_boundary_exponents(form, c[1])) for c in live]
    best = max(score)
    return [c for c, sc in zip(live, score) if sc >= best - _TOL * _scale(best)]


_RULES = (
    ("tau' < 0", _each(lambda form, pi, tau: tau[1] < 0.0)),
    ("tau zero inside domain", _each(lambda form, pi, tau: _zero_inside(tau, form.domain))),
    ("phi regular at boundary", _each(lambda form, pi, tau: _regular_at_boundary(form, pi))),
    ("phi principal at boundary", _principal),
)


def select_branch(form: HypergeometricForm, k_pi_pairs=None) -> NUSolution:
    """Pick the physical (k, pi) pair.

    Rules are applied in order until one pair remains: tau' < 0, the zero
    of tau lies strictly inside the domain, phi(s) stays bounded at the
    finite endpoints, and finally the largest endpoint exponent of phi
    wins (the solution that vanishes fastest there). ``selected_by`` names
    the rule that made the choice unique. Raises
    :class:`NoPhysicalBranchError` if a rule rejects every pair and
    :class:`AmbiguousBranchError` if several survive all rules.
    """
    if k_pi_pairs is None:
        k_pi_pairs = [(k, pi) for k in k_candidates(form) for pi in pi_candidates(form, k)]
    live = [(k, pi, _tau_of(form, pi)) for k, pi in k_pi_pairs]
    if not live:
        raise NoPhysicalBranchError("no (k, pi) pairs supplied")
    chosen_by = ""
    for name, rule in _RULES:
        kept = rule(form, live)
        if not kept:
            raise NoPhysicalBranchError(f"no physical branch: every candidate fails '{name}'")
        live = kept
        if len(live) == 1:
            chosen_by = name
            break
    if len(live) > 1:
        raise AmbiguousBranchError(
            f"{len(live)} branches satisfy every selection rule",
            candidates=[(k, pi) for k, pi, _ in live],
        )
    k, pi, tau = live[0]
    sol = NUSolution(k=k, pi=pi, tau=tau, lam=k + pi[1], form=form, selected_by=chosen_by)
    return replace(sol, family=classify_family(sol))


def lambda_quantized(form: HypergeometricForm, solution: NUSolution, n: int) -> float:
    """lambda_n = -n tau' - n(n-1)/2 sigma''."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return -n * solution.tau[1] - 0.5 * n * (n - 1) * 2.0 * form.sigma[2]


def classify_family(solution: NUSolution) -> Family:
    """Solve the Pearson equation (sigma rho)' = tau rho in closed form."""
    form = solution.form
    s0, s1, s2 = form.sigma
    tau, pi = solution.tau, solution.pi
    if s2 == 0.0 and s1 == 0.0:
        quad = tau[1] / (2.0 * s0)
        if not quad < 0.0:
            raise UnsupportedFamilyError("weight exp(quad s^2) does not decay")
        scale = math.sqrt(-quad)
        center = -tau[0] / tau[1]
        phi = {"quad": pi[1] / (2.0 * s0), "linear": pi[0] / s0}
        return Family(HERMITE, {"scale": scale, "center": center}, phi)
    if s2 == 0.0:
        r0 = -s0 / s1
        # rho'/rho = (tau - sigma')/sigma = tau1/s1 + (tau(r0) - s1)/(s1 (s - r0))
        alpha = (polyval(tau, r0) - s1) / s1
        scale = -tau[1] / s1
        phi = {"exp_linear": pi[1] / s1, "power": polyval(pi, r0) / s1}
        return Family(LAGUERRE, {"alpha": alpha, "scale": scale, "shift": r0}, phi)
    roots = _sigma_roots(form.sigma)
    if roots is None or roots[1] - roots[0] <= 1e-12 * _scale(*roots) or s2 > 0.0:
        raise UnsupportedFamilyError(f"sigma={form.sigma!r} has no pair of distinct real roots bracketing the domain")
    lower, upper = roots

    def residue(poly, r):
        return polyval(poly, r) / polyval(form.sigma_prime, r)

    t_minus_sp = (tau[0] - form.sigma_prime[0], tau[1] - form.sigma_prime[1])
    params = {"a": residue(t_minus_sp, upper), "b": residue(t_minus_sp, lower),
              "lower": lower, "upper": upper}
    phi = {"power_upper": residue(pi, upper), "power_lower": residue(pi, lower)}
    return Family(JACOBI, params, phi)


def weight_function(solution: NUSolution) -> Callable:
    """rho(s) up to a constant factor; accepts complex ``s`` for complex-step checks."""
    fam = solution.family or classify_family(solution)
    p = fam.params
    if fam.kind == LAGUERRE:
        sign = 1.0 if solution.form.domain[0] >= p["shift"] else -1.0
        return lambda s: np.exp(-p["scale"] * (s - p["shift"])) * (sign * (s - p["shift"])) ** p["alpha"]
    if fam.kind == JACOBI:
        return lambda s: (p["upper"] - s) ** p["a"] * (s - p["lower"]) ** p["b"]
    return lambda s: np.exp(-(p["scale"] * (s - p["center"])) ** 2)


def phi_function(solution: NUSolution) -> Callable:
    """phi(s) with phi'/phi = pi/sigma, up to a constant factor."""
    fam = solution.family or classify_family(solution)
    p, e = fam.params, fam.phi
    if fam.kind == LAGUERRE:
        sign = 1.0 if solution.form.domain[0] >= p["shift"] else -1.0
        return lambda s: np.exp(e["exp_linear"] * s) * (sign * (s - p["shift"])) ** e["power"]
    if fam.kind == JACOBI:
        return lambda s: (p["upper"] - s) ** e["power_upper"] * (s - p["lower"]) ** e["power_lower"]
    return lambda s: np.exp(e["quad"] * s * s + e["linear"] * s)


def eigen_solve(family: Callable[[float], HypergeometricForm], n: int, bracket,
                tol: float = 1e-12) -> float:
    """Root of lambda(E) - lambda_n(E) for a one-parameter family of forms.

    ``family`` maps the unknown (usually the energy) to a form. The root is
    bracketed by ``bracket`` and refined with Brent's method.
    """

    def mismatch(x):
        form = family(x)
        sol = select_branch(form)
        return sol.lam - lambda_quantized(form, sol, n)

    lo, hi = (float(v) for v in bracket)
    try:
        f_lo, f_hi = mismatch(lo), mismatch(hi)
    except NUReductionError as exc:
        raise BracketError(f"NU reduction fails at a bracket endpoint: {exc}") from exc
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise BracketError(f"no sign change on [{lo}, {hi}] (f={f_lo:.3e}, {f_hi:.3e})")
    root = brentq(mismatch, lo, hi, xtol=1e-15 * max(1.0, abs(lo), abs(hi)), rtol=1e-15, maxiter=500)
    sol = select_branch(family(root))
    if abs(mismatch(root)) > tol * max(1.0, abs(sol.lam)):
        raise BracketError(f"root refinement stalled at {root!r}")
    return root


def expanding_bracket(family, n, start, step, max_doublings=60):
    """Grow [start, start + step] until lambda - lambda_n changes sign."""

    def mismatch(x):
        form = family(x)
        sol = select_branch(form)
        return sol.lam - lambda_quantized(form, sol, n)

    f0 = mismatch(start)
    hi = start + step
    for _ in range(max_doublings):
        if mismatch(hi) * f0 <= 0.0:
            return (start, hi)
        step *= 2.0
        hi = start + step
    raise BracketError("could not bracket the eigenvalue condition")
