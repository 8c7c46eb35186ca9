"""Verification suite: closed forms against numerical oracles.

Each ``check_*`` function covers one acceptance criterion and returns a
list of :class:`Check` records; :func:`run_verification` runs them all and
wraps the result in a :class:`VerificationReport` whose JSON form follows
:data:`REPORT_SCHEMA`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import angular, nu_engine, oracle, radial, system
from .specfun import integrate

SWEEP_D = (3, 4, 5, 8)
SWEEP_BETA = (0.0, 0.5, 2.0)
SWEEP_MOLECULES = ((1.0, 1.0), (4.0, 2.0), (10.0, 0.5))
SWEEP_N, SWEEP_n, SWEEP_m = 3, 2, 2

# Tolerances, one per criterion.
TOL_ORACLE = 1e-6
TOL_ANGULAR = 1e-7
TOL_IDENTITY = 1e-12
TOL_REDUCTION = 1e-13
TOL_NORM = 1e-9
TOL_ORTHO_RADIAL = 1e-8
TOL_ORTHO_ANGULAR = 1e-10
TOL_NU = 1e-10
TOL_RESIDUAL = 1e-5
RESIDUAL_SENSITIVITY = 10.0

CRITERIA = {
    1: "closed-form energies match the radial finite-difference oracle",
    2: "angular oracle eigenvalues equal (n+m')(n+m'+1)",
    3: "internal-consistency identities",
    4: "beta = 0 and pure-oscillator reductions",
    5: "De-bearing 3D pseudoharmonic prefactor confirmed by the oracle",
    6: "radial and angular normalization by quadrature",
    7: "radial and angular orthogonality",
    8: "NU engine reproduces the k, pi, tau, lambda structure and the energies",
    9: "ODE residuals of the analytic wavefunctions",
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["passed", "settings", "summary", "checks"],
    "properties": {
        "passed": {"type": "boolean"},
        "settings": {
            "type": "object",
            "required": ["grid_points", "tol", "perturb_energy"],
            "properties": {
                "grid_points": {"type": "integer", "minimum": 3},
                "tol": {"type": "number", "exclusiveMinimum": 0},
                "perturb_energy": {"type": "number"},
            },
        },
        "summary": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["criterion", "description", "passed", "checks", "failed"],
                "properties": {
                    "criterion": {"type": "integer"},
                    "description": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "checks": {"type": "integer", "minimum": 0},
                    "failed": {"type": "integer", "minimum": 0},
                },
            },
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["criterion", "name", "closed_form", "oracle", "rel_error", "tolerance", "passed"],
                "properties": {
                    "criterion": {"type": "integer"},
                    "name": {"type": "string"},
                    "closed_form": {"type": ["number", "null"]},
                    "oracle": {"type": ["number", "null"]},
                    "rel_error": {"type": "number", "minimum": 0},
                    "tolerance": {"type": "number", "minimum": 0},
                    "passed": {"type": "boolean"},
                    "note": {"type": "string"},
                },
            },
        },
    },
}


@dataclass
class Check:
    criterion: int
    name: str
    closed_form: float | None
    oracle: float | None
    rel_error: float
    tolerance: float
    passed: bool
    note: str = ""

    def __post_init__(self):
        self.rel_error = float(self.rel_error)
        self.passed = bool(self.passed)


def compare(criterion, name, closed_form, reference, tolerance, floor=0.0, note=""):
    """Check with rel_error = |closed - reference| / max(|reference|, floor)."""
    closed_form, reference = float(closed_form), float(reference)
    denom = max(abs(reference), floor)
    err = abs(closed_form - reference) / denom if denom > 0 else abs(closed_form - reference)
    return Check(criterion, name, closed_form, reference, err, tolerance, bool(err <= tolerance), note)


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    settings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def by_criterion(self):
        out = {}
        for c in self.checks:
            out.setdefault(c.criterion, []).append(c)
        return dict(sorted(out.items()))

    def summary(self):
        rows = []
        for crit, checks in self.by_criterion().items():
            failed = sum(not c.passed for c in checks)
            rows.append({"criterion": crit, "description": CRITERIA.get(crit, ""),
                         "passed": failed == 0, "checks": len(checks), "failed": failed})
        return rows

    def to_dict(self):
        return {"passed": self.passed, "settings": dict(self.settings),
                "summary": self.summary(), "checks": [asdict(c) for c in self.checks]}


def sweep_specs():
    for D, beta, (De, re) in itertools.product(SWEEP_D, SWEEP_BETA, SWEEP_MOLECULES):
        yield system.PotentialSpec(De=De, re=re, beta=beta, D=D)


def _tag(spec, n, m, N=None):
    head = f"D={spec.D} beta={spec.beta:g} De={spec.De:g} re={spec.re:g} n={n} m={m}"
    return head if N is None else f"{head} N={N}"


def check_oracle_sweep(points=oracle.DEFAULT_POINTS, tol=TOL_ORACLE, perturb_energy=0.0):
    """Criterion 1: every (spec, N, n, m) in the sweep box against the radial oracle."""
    checks = []
    for spec in sweep_specs():
        for n, m in itertools.product(range(SWEEP_n + 1), range(SWEEP_m + 1)):
            states = [system.make_state(N, n, m, spec) for N in range(SWEEP_N + 1)]
            rp = states[0].radial_params
            grid = oracle.Grid1D(0.0, oracle.radial_extent(rp.gamma, rp.alpha, len(states)), points)
            res = oracle.radial_fd_eigen(rp.gamma, rp.alpha, len(states), grid=grid)
            for st, eps2 in zip(states, res.values):
                e_oracle = radial.energy_of_eps2(eps2, rp)
                checks.append(compare(1, f"energy {_tag(spec, n, m, st.N)}",
                                      st.energy * (1.0 + perturb_energy), e_oracle, tol))
    return checks


def check_angular_spectrum(points=oracle.DEFAULT_POINTS, m_primes=(0.0, 0.5, 1.0, 2.3), n_max=3):
    """Criterion 2."""
    checks = []
    for mp in m_primes:
        res = oracle.angular_fd_eigen(mp, n_max + 1, grid=oracle.Grid1D(0.0, math.pi, points))
        for n, val in enumerate(res.values):
            exact = (n + mp) * (n + mp + 1)
            checks.append(compare(2, f"nu' m'={mp:g} n={n}", exact, val, TOL_ANGULAR, floor=1.0,
                                  note="absolute below unit magnitude"))
    return checks


def check_identities(samples=200, seed=20240611):
    """Criterion 3, on seeded random inputs."""
    rng = np.random.default_rng(seed)
    worst = {"centrifugal_form_vs_energy": 0.0, "general_D_vs_3d_ring_energy": 0.0, "ell_prime_roundtrip": 0.0,
             "ring_shift_identity": 0.0}
    for _ in range(samples):
        D = int(rng.choice([3, 4, 5, 6, 8, 11]))
        De, re = rng.uniform(0.2, 12.0), rng.uniform(0.3, 3.0)
        beta = rng.uniform(0.0, 3.0)
        hbar, mu = rng.uniform(0.5, 2.0), rng.uniform(0.5, 3.0)
        N, n, m = (int(v) for v in rng.integers(0, 6, size=3))
        spec = system.PotentialSpec(De=De, re=re, beta=beta, D=D, hbar=hbar, mu=mu)
        st = system.make_state(N, n, m, spec)
        rp = st.radial_params
        e47 = st.energy
        e45 = radial.energy_from_centrifugal(N, rp)
        worst["centrifugal_form_vs_energy"] = max(worst["centrifugal_form_vs_energy"], abs(e45 - e47) / abs(e47))

        spec3 = system.PotentialSpec(De=De, re=re, beta=beta, D=3, hbar=hbar, mu=mu)
        st3 = system.make_state(N, n, m, spec3)
        e48 = radial.energy_3d_ring(N, n, st3.m_prime, De, re, beta, hbar, mu)
        worst["general_D_vs_3d_ring_energy"] = max(worst["general_D_vs_3d_ring_energy"], abs(e48 - st3.energy) / abs(st3.energy))

        mp = rng.uniform(0.0, 4.0)
        lp = angular.ell_prime(n, mp, D)
        back = angular.n_of_ell_prime(lp, mp, D)
        raw = -(1.0 + 2.0 * mp) / 2.0 + 0.5 * math.sqrt((2 * lp + 1) ** 2 + 4 * lp * (D - 3))
        worst["ell_prime_roundtrip"] = max(worst["ell_prime_roundtrip"], abs(raw - n) / max(1.0, n),
                                           0.0 if back == n else 1.0)

        # integer ell: ell'(ell'+D-2) - kappa = ell(ell+D-2) with ell' from nu'
        ell = int(rng.integers(0, 8))
        kappa = 2.0 * mu * beta / hbar**2
        nu = ell * (ell + D - 2) + kappa
        lp2 = -(D - 2) / 2.0 + 0.5 * math.sqrt((D - 2) ** 2 + 4.0 * nu)
        lhs = angular.nu_prime(lp2, D) - kappa
        ell_back = angular.ell_effective(lp2, kappa, D)
        worst["ring_shift_identity"] = max(worst["ring_shift_identity"],
                                           abs(lhs - ell * (ell + D - 2)) / max(1.0, nu),
                                           abs(ell_back - ell) / max(1.0, ell))
    return [Check(3, name, None, None, err, TOL_IDENTITY, err <= TOL_IDENTITY, f"max over {samples} random inputs")
            for name, err in worst.items()]


def check_reductions():
    """Criterion 4."""
    checks = []
    for De, re in SWEEP_MOLECULES:
        spec = system.PotentialSpec(De=De, re=re, beta=0.0, D=3)
        for N, n, m in itertools.product(range(3), range(3), range(3)):
            st = system.make_state(N, n, m, spec)
            tag = _tag(spec, n, m, N)
            checks.append(compare(4, f"m' = m {tag}", st.m_prime, m, TOL_REDUCTION, floor=1.0))
            checks.append(compare(4, f"ell' = n + m {tag}", st.ell_prime, n + m, TOL_REDUCTION, floor=1.0))
            checks.append(compare(4, f"3D ring -> pseudoharmonic {tag}",
                                  radial.energy_3d_ring(N, n, st.m_prime, De, re, 0.0),
                                  radial.energy_pseudoharmonic_3d(N, n + m, De, re), TOL_REDUCTION))
    for a, hbar, mu in ((1.0, 1.0, 1.0), (2.5, 1.0, 1.0), (0.7, 1.3, 2.2)):
        rp = radial.RadialParams(a=a, b=0.0, c=0.0, D=3, hbar=hbar, mu=mu)
        for N in range(5):
            exact = math.sqrt(a / 2.0) * (4 * N + 3) * hbar / math.sqrt(mu)
            checks.append(compare(4, f"oscillator a={a:g} hbar={hbar:g} mu={mu:g} N={N}",
                                  radial.energy(N, rp), exact, TOL_REDUCTION))
    return checks


def check_prefactor_variants(points=oracle.DEFAULT_POINTS, tol=TOL_ORACLE, De=4.0, re=1.0):
    """Criterion 5: the oracle separates the two 3D pseudoharmonic prefactors."""
    spec = system.PotentialSpec(De=De, re=re, beta=0.0, D=3)
    rp = system.make_state(0, 0, 0, spec).radial_params
    grid = oracle.Grid1D(0.0, oracle.radial_extent(rp.gamma, rp.alpha, 2), points)
    eps2 = oracle.radial_fd_eigen(rp.gamma, rp.alpha, 2, grid=grid).values
    e0, e1 = (radial.energy_of_eps2(v, rp) for v in eps2)
    with_de = radial.energy_pseudoharmonic_3d(0, 0, De, re)
    no_de = radial.energy_pseudoharmonic_3d_no_De(0, 0, De, re)
    spacing_no_de = (radial.energy_pseudoharmonic_3d_no_De(1, 0, De, re) - no_de)
    checks = [
        compare(5, "ground state, De-bearing prefactor", with_de, e0, tol),
        compare(5, "level spacing, De-bearing prefactor",
                radial.energy_pseudoharmonic_3d(1, 0, De, re) - with_de, e1 - e0, tol),
    ]
    ratio = (e1 - e0) / spacing_no_de
    checks.append(compare(5, "oracle spacing / De-free-prefactor spacing", math.sqrt(De), ratio, tol,
                          note=f"De-free prefactor gives E0={no_de:.9f} vs oracle {e0:.9f}"))
    miss = abs(no_de - e0) / abs(e0)
    checks.append(Check(5, "De-free prefactor rejected by oracle", no_de, e0, miss, 1e-2, miss > 1e-2,
                        note="passes when the De-free form misses the oracle by more than 1%"))
    return checks


def _radial_cutoff(rp, N):
    return oracle.radial_extent(rp.gamma, rp.alpha, N + 1)


def radial_norm_integral(state: radial.RadialState, rp: radial.RadialParams) -> float:
    """int_0^inf R^2 r^(D-1) dr, truncated where the envelope has decayed by 1e16."""
    hi = _radial_cutoff(rp, state.N)
    return integrate(lambda r: radial.radial_wavefunction(np.maximum(r, 1e-300), state, rp) ** 2
                     * r ** (rp.D - 1), 0.0, hi, panels=32)


def angular_norm_integral(state: angular.AngularState) -> float:
    eps = 1e-300
    return integrate(lambda t: angular.angular_wavefunction(np.clip(t, eps, math.pi - 1e-16), state) ** 2
                     * np.sin(t), 0.0, math.pi, panels=32)


def check_normalization():
    """Criterion 6 over every swept state."""
    checks = []
    seen_angular = set()
    for spec in sweep_specs():
        for n, m in itertools.product(range(SWEEP_n + 1), range(SWEEP_m + 1)):
            for N in range(SWEEP_N + 1):
                st = system.make_state(N, n, m, spec)
                integral = radial_norm_integral(st.radial, st.radial_params)
                tag = _tag(spec, n, m, N)
                checks.append(compare(6, f"radial norm {tag}", integral, 1.0, TOL_NORM, floor=1.0))
                c_quad = st.radial.norm_const / math.sqrt(integral)
                checks.append(compare(6, f"C_NL vs quadrature {tag}", st.radial.norm_const, c_quad, TOL_NORM))
            key = (n, round(st.m_prime, 14))
            if key not in seen_angular:
                seen_angular.add(key)
                checks.append(compare(6, f"angular norm n={n} m'={st.m_prime:.6g}",
                                      angular_norm_integral(st.angular), 1.0, TOL_NORM, floor=1.0))
    checks.append(compare(6, "C_{0,1}(alpha=2)", radial.normalization_constant(0, 1.0, 2.0),
                          math.sqrt(2.0 * 2.0 ** 1.25 / (0.75 * math.sqrt(math.pi))), TOL_NORM))
    return checks


def radial_gram(spec, n, m, count=4):
    states = [system.make_state(N, n, m, spec) for N in range(count)]
    rp = states[0].radial_params
    hi = _radial_cutoff(rp, count - 1)
    funcs = [(lambda r, s=s: radial.radial_wavefunction(np.maximum(r, 1e-300), s.radial, rp)) for s in states]
    return oracle.orthonormality_audit(funcs, lambda r: r ** (rp.D - 1), 0.0, hi)


def angular_gram(m_prime, count=4):
    states = [angular.AngularState(n=n, m_prime=m_prime, ell_prime=n + m_prime,
                                   nu_prime=(n + m_prime) * (n + m_prime + 1)) for n in range(count)]
    funcs = [(lambda t, s=s: angular.angular_wavefunction(np.clip(t, 1e-300, math.pi - 1e-16), s))
             for s in states]
    return oracle.orthonormality_audit(funcs, np.sin, 0.0, math.pi)


def check_orthogonality():
    """Criterion 7."""
    checks = []
    for spec in (system.PotentialSpec(1, 1, 0.0, 3), system.PotentialSpec(4, 2, 0.5, 5),
                 system.PotentialSpec(10, 0.5, 2.0, 8)):
        for n, m in ((0, 0), (1, 2)):
            off, diag = oracle.gram_deviation(radial_gram(spec, n, m))
            dev = max(off, diag)
            checks.append(Check(7, f"radial Gram {_tag(spec, n, m)}", None, None, dev, TOL_ORTHO_RADIAL,
                                dev <= TOL_ORTHO_RADIAL, "max |G - I|"))
    for mp in (0.0, 1.0, 1.37, 2.3):
        off, diag = oracle.gram_deviation(angular_gram(mp))
        dev = max(off, diag)
        checks.append(Check(7, f"angular Gram m'={mp:g}", None, None, dev, TOL_ORTHO_ANGULAR,
                            dev <= TOL_ORTHO_ANGULAR, "max |G - I|"))
    return checks


def check_nu_engine():
    """Criterion 8."""
    checks = []
    for mp in (0.0, 0.5, 1.0, 1.37, 2.3):
        for n in range(4):
            nu = (n + mp) * (n + mp + 1)
            form = angular.hypergeometric_form(nu, mp)
            ks = nu_engine.k_candidates(form)
            expect_k = sorted({nu - mp * mp, nu}) if mp > 0 else [nu]
            sol = nu_engine.select_branch(form)
            tag = f"angular m'={mp:g} n={n}"
            checks.append(compare(8, f"k candidates {tag}", max(abs(a - b) for a, b in zip(ks, expect_k)) if
                                  len(ks) == len(expect_k) else 1.0, 0.0, TOL_NU, floor=1.0))
            checks.append(compare(8, f"selected pi slope {tag}", sol.pi[1], -mp, TOL_NU, floor=1.0))
            checks.append(compare(8, f"selected tau slope {tag}", sol.tau[1], -2.0 * (1.0 + mp), TOL_NU, floor=1.0))
            checks.append(compare(8, f"lambda = lambda_n {tag}", sol.lam,
                                  nu_engine.lambda_quantized(form, sol, n), TOL_NU, floor=1.0))
            checks.append(compare(8, f"eigen_solve nu' {tag}", angular.nu_prime_via_nu(n, mp), nu, TOL_NU, floor=1.0))
    count = 0
    for spec in sweep_specs():
        if spec.D not in (3, 5) or count >= 12:
            continue
        count += 1
        for N, n, m in ((0, 0, 0), (2, 1, 1)):
            st = system.make_state(N, n, m, spec)
            rp = st.radial_params
            form = radial.hypergeometric_form(rp, st.energy)
            eps2 = radial.eps2_of_energy(st.energy, rp)
            root = math.sqrt(rp.alpha * (4 * rp.gamma + 1))
            ks = nu_engine.k_candidates(form)
            sol = nu_engine.select_branch(form)
            sq = math.sqrt(4 * rp.gamma + 1)
            sa = math.sqrt(rp.alpha)
            tag = _tag(spec, n, m, N)
            checks.append(compare(8, f"k candidates {tag}", max(abs(ks[0] - (eps2 - root) / 2),
                                                                abs(ks[1] - (eps2 + root) / 2)),
                                  0.0, TOL_NU, floor=max(1.0, eps2)))
            checks.append(compare(8, f"selected k {tag}", sol.k, (eps2 - root) / 2, TOL_NU, floor=1.0))
            checks.append(compare(8, f"selected pi {tag}", max(abs(sol.pi[0] - (1 + sq) / 2), abs(sol.pi[1] + sa)),
                                  0.0, TOL_NU, floor=1.0))
            checks.append(compare(8, f"selected tau {tag}", max(abs(sol.tau[0] - (2 + sq)), abs(sol.tau[1] + 2 * sa)),
                                  0.0, TOL_NU, floor=1.0))
            checks.append(compare(8, f"lambda = lambda_N {tag}", sol.lam,
                                  nu_engine.lambda_quantized(form, sol, N), TOL_NU, floor=1.0))
            checks.append(compare(8, f"eigen_solve energy {tag}", radial.energy_via_nu(N, rp), st.energy, TOL_NU))
    return checks


def check_residuals(points=oracle.DEFAULT_POINTS):
    """Criterion 9."""
    checks = []
    for spec in (system.PotentialSpec(1, 1, 0.0, 3), system.PotentialSpec(1, 1, 0.5, 5),
                 system.PotentialSpec(4, 2, 2.0, 8)):
        for N, n, m in ((0, 0, 0), (1, 1, 0), (3, 2, 2)):
            st = system.make_state(N, n, m, spec)
            rp = st.radial_params
            r = np.linspace(0.05, _radial_cutoff(rp, N), points)
            g = radial.reduced_wavefunction(r, st.radial, rp)
            oracle.require_nonzero(g)
            eps2 = radial.eps2_of_energy(st.energy, rp)
            res = oracle.ode_residual(g, r, "radial", eps2=eps2, alpha=rp.alpha, gamma=rp.gamma)
            bumped = oracle.ode_residual(g, r, "radial", eps2=radial.eps2_of_energy(1.01 * st.energy, rp),
                                         alpha=rp.alpha, gamma=rp.gamma)
            tag = _tag(spec, n, m, N)
            checks.append(Check(9, f"radial residual {tag}", None, None, res, TOL_RESIDUAL, res < TOL_RESIDUAL))
            ratio = bumped / max(res, 1e-300)
            checks.append(Check(9, f"radial residual x{RESIDUAL_SENSITIVITY:g} under 1% energy shift {tag}",
                                None, None, res, TOL_RESIDUAL, ratio >= RESIDUAL_SENSITIVITY,
                                f"perturbed/unperturbed = {ratio:.3e}"))
            ap = spec.angular_params(m)
            theta = np.linspace(0.1, math.pi - 0.1, 2000)
            H = angular.angular_wavefunction(theta, st.angular)
            oracle.require_nonzero(H)
            ares = oracle.ode_residual(H, theta, "angular", ell_term=st.nu_prime - ap.kappa, m=m, kappa=ap.kappa)
            checks.append(Check(9, f"angular residual {tag}", None, None, ares, TOL_RESIDUAL, ares < TOL_RESIDUAL))
    return checks


def run_verification(grid_points=oracle.DEFAULT_POINTS, tol=TOL_ORACLE, perturb_energy=0.0,
                     criteria=None) -> VerificationReport:
    """Run the requested criteria (default all) and collect a report."""
    runners = {
        1: lambda: check_oracle_sweep(grid_points, tol, perturb_energy),
        2: lambda: check_angular_spectrum(grid_points),
        3: check_identities,
        4: check_reductions,
        5: lambda: check_prefactor_variants(grid_points, tol),
        6: check_normalization,
        7: check_orthogonality,
        8: check_nu_engine,
        9: lambda: check_residuals(grid_points),
    }
    report = VerificationReport(settings={"grid_points": int(grid_points), "tol": float(tol),
                                          "perturb_energy": float(perturb_energy)})
    for crit in sorted(criteria or runners):
        report.checks.extend(runners[crit]())
    return report
