"""Command-line interface.

Subcommands ``spectrum``, ``wavefunction``, ``verify`` and ``nu-solve``.
Settings come from built-in defaults, then an optional TOML file
(``--config``), then explicit flags. Exit codes: 0 success, 1 numerical or
verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import asdict, dataclass, field, fields, replace

import numpy as np

from . import __version__, angular, nu_engine, oracle, radial, system, verify
from .errors import CollapseError, DomainError, NUReductionError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib
import tomli_w

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SPECTRUM_COLUMNS = ("D", "De", "re", "beta", "hbar", "mu", "N", "n", "m", "m_prime", "ell_prime", "L", "energy")
WAVE_COLUMNS = ("r", "theta", "phi", "re_psi", "im_psi")
FACTOR_COLUMNS = ("r", "theta", "phi", "R", "H", "re_Phi", "im_Phi")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Every setting a run can take. ``None`` means "unset" and is not serialized."""

    command: str = "spectrum"
    De: float = 1.0
    re: float = 1.0
    beta: float = 0.0
    dim: int = 3
    hbar: float = 1.0
    mu: float = 1.0
    format: str | None = None
    out: str | None = None
    grid_points: int = oracle.DEFAULT_POINTS
    tol: float = verify.TOL_ORACLE
    # spectrum
    N_max: int = 0
    n_max: int = 0
    m_max: int = 0
    # wavefunction
    N: int = 0
    n: int = 0
    m: int = 0
    sign: int = 1
    r_min: float | None = None
    r_max: float | None = None
    r_points: int = 200
    theta: list = field(default_factory=lambda: [math.pi / 2])
    phi: list = field(default_factory=lambda: [0.0])
    factors: bool = False
    # verify
    perturb_energy: float = 0.0
    criteria: list | None = None
    # nu-solve
    tau_tilde: list | None = None
    sigma: list | None = None
    sigma_tilde: list | None = None
    domain: list | None = None
    nu_n: int = 0

    def to_toml(self) -> str:
        data = {k: v for k, v in asdict(self).items() if v is not None}
        return tomli_w.dumps(data)

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_toml(cls, text: str) -> "RunConfig":
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise UsageError(f"bad config file: {exc}") from exc
        return cls.from_mapping(data)

    @property
    def output_format(self) -> str:
        """Explicit format, else csv for tables and json for reports."""
        if self.format is not None:
            return self.format
        return "csv" if self.command in ("spectrum", "wavefunction") else "json"

    def potential(self) -> system.PotentialSpec:
        try:
            return system.PotentialSpec(De=self.De, re=self.re, beta=self.beta, D=self.dim,
                                        hbar=self.hbar, mu=self.mu)
        except DomainError as exc:
            raise UsageError(str(exc)) from exc


def fmt(x) -> str:
    """12 significant digits, '.' decimal point regardless of locale."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".12g")


def jnum(x):
    """JSON-safe number rounded to 12 significant digits (infinities become strings)."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(format(x, ".12g"))


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True, allow_nan=False) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _floats(text: str) -> list:
    try:
        vals = [float(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty coefficient list")
    return vals


def _params_dict(cfg: RunConfig) -> dict:
    return {"D": cfg.dim, "De": jnum(cfg.De), "re": jnum(cfg.re), "beta": jnum(cfg.beta),
            "hbar": jnum(cfg.hbar), "mu": jnum(cfg.mu)}


# --- subcommands ------------------------------------------------------------

def run_spectrum(cfg: RunConfig):
    spec = cfg.potential()
    if min(cfg.N_max, cfg.n_max, cfg.m_max) < 0:
        raise UsageError("label bounds must be nonnegative")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = system.enumerate_spectrum(spec, cfg.N_max, cfg.n_max, cfg.m_max)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    code = EXIT_FAIL if not result.states and result.skipped else EXIT_OK
    rows = [(spec.D, spec.De, spec.re, spec.beta, spec.hbar, spec.mu, s.N, s.n, s.m, s.m_prime,
             s.ell_prime, s.L, s.energy) for s in result]
    if cfg.output_format == "json":
        states = [{k: jnum(v) for k, v in zip(SPECTRUM_COLUMNS, row)} for row in rows]
        body = {"params": _params_dict(cfg), "states": states,
                "skipped": [{"N": N, "n": n, "m": m, "reason": why} for (N, n, m), why in result.skipped]}
        return code, _dump_json(body)
    return code, _csv_text(SPECTRUM_COLUMNS, rows)


def _check_coordinates(r, theta):
    bad_r = r[r <= 0.0]
    if bad_r.size:
        raise DomainError(f"r={fmt(bad_r[0])} is outside the domain r > 0")
    bad_t = theta[(theta <= 0.0) | (theta >= math.pi)]
    if bad_t.size:
        raise DomainError(f"theta={fmt(bad_t[0])} is outside the open interval (0, pi)")


def run_wavefunction(cfg: RunConfig):
    spec = cfg.potential()
    try:
        state = system.make_state(cfg.N, cfg.n, cfg.m, spec, sign=cfg.sign)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    rp = state.radial_params
    r_max = cfg.r_max if cfg.r_max is not None else oracle.radial_extent(rp.gamma, rp.alpha, cfg.N + 1)
    if cfg.r_points < 1:
        raise UsageError("r_points must be positive")
    r_min = cfg.r_min if cfg.r_min is not None else r_max / cfg.r_points
    r = np.linspace(r_min, r_max, cfg.r_points)
    theta = np.asarray(cfg.theta, dtype=float)
    phi = np.asarray(cfg.phi, dtype=float)
    _check_coordinates(r, theta)

    R = radial.radial_wavefunction(r, state.radial, rp)
    H = angular.angular_wavefunction(theta, state.angular)
    Phi = angular.azimuthal(phi, state.m, state.sign)
    rows = []
    for i, ri in enumerate(r):
        for j, tj in enumerate(theta):
            for k, pk in enumerate(phi):
                if cfg.factors:
                    rows.append((ri, tj, pk, R[i], H[j], Phi[k].real, Phi[k].imag))
                else:
                    psi = R[i] * H[j] * Phi[k]
                    rows.append((ri, tj, pk, psi.real, psi.imag))
    header = FACTOR_COLUMNS if cfg.factors else WAVE_COLUMNS
    if cfg.output_format == "json":
        label = {"N": cfg.N, "n": cfg.n, "m": cfg.m, "sign": cfg.sign,
                 "m_prime": jnum(state.m_prime), "ell_prime": jnum(state.ell_prime),
                 "L": jnum(state.L), "energy": jnum(state.energy)}
        body = {"params": _params_dict(cfg), "state": label,
                "samples": [{k: jnum(v) for k, v in zip(header, row)} for row in rows]}
        return EXIT_OK, _dump_json(body)
    return EXIT_OK, _csv_text(header, rows)


def _report_json(report: verify.VerificationReport) -> dict:
    data = report.to_dict()
    for check in data["checks"]:
        for key in ("closed_form", "oracle", "rel_error", "tolerance"):
            check[key] = jnum(check[key])
    data["settings"] = {k: jnum(v) for k, v in data["settings"].items()}
    return data


def run_verify(cfg: RunConfig):
    if cfg.output_format != "json":
        raise UsageError("verify only writes JSON reports")
    if cfg.grid_points < 3 or not cfg.tol > 0:
        raise UsageError("grid_points must be >= 3 and tol positive")
    criteria = cfg.criteria
    if criteria is not None and not set(criteria) <= set(verify.CRITERIA):
        raise UsageError(f"criteria must be drawn from {sorted(verify.CRITERIA)}")
    report = verify.run_verification(grid_points=cfg.grid_points, tol=cfg.tol,
                                     perturb_energy=cfg.perturb_energy, criteria=criteria)
    return (EXIT_OK if report.passed else EXIT_FAIL), _dump_json(_report_json(report))


def _poly(coeffs):
    return [jnum(c) for c in coeffs]


def run_nu_solve(cfg: RunConfig):
    if cfg.output_format != "json":
        raise UsageError("nu-solve only writes JSON")
    missing = [name for name in ("tau_tilde", "sigma", "sigma_tilde") if getattr(cfg, name) is None]
    if missing:
        raise UsageError(f"nu-solve needs {', '.join('--' + m.replace('_', '-') for m in missing)}")
    if len(cfg.tau_tilde) > 2 or len(cfg.sigma) > 3 or len(cfg.sigma_tilde) > 3:
        raise UsageError("tau_tilde has at most 2 coefficients, sigma and sigma_tilde at most 3")
    if cfg.domain is not None and len(cfg.domain) != 2:
        raise UsageError("domain needs exactly two endpoints")
    if cfg.nu_n < 0:
        raise UsageError("n must be nonnegative")
    try:
        form = nu_engine.HypergeometricForm(tuple(cfg.tau_tilde), tuple(cfg.sigma), tuple(cfg.sigma_tilde),
                                            domain=tuple(cfg.domain) if cfg.domain else None)
    except NUReductionError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    ks = nu_engine.k_candidates(form)
    branches = []
    for k in ks:
        for pi in nu_engine.pi_candidates(form, k):
            tau = (form.tau_tilde[0] + 2 * pi[0], form.tau_tilde[1] + 2 * pi[1])
            branches.append({"k": jnum(k), "pi": _poly(pi), "tau": _poly(tau)})
    sol = nu_engine.select_branch(form)
    fam = sol.family
    body = {
        "form": {"tau_tilde": _poly(form.tau_tilde), "sigma": _poly(form.sigma),
                 "sigma_tilde": _poly(form.sigma_tilde), "domain": _poly(form.domain)},
        "k_candidates": _poly(ks),
        "branches": branches,
        "selected": {"k": jnum(sol.k), "pi": _poly(sol.pi), "tau": _poly(sol.tau),
                     "lambda": jnum(sol.lam), "rule": sol.selected_by},
        "n": cfg.nu_n,
        "lambda_n": jnum(nu_engine.lambda_quantized(form, sol, cfg.nu_n)),
        "family": None if fam is None else {
            "kind": fam.kind,
            "params": {k: jnum(v) for k, v in fam.params.items()},
            "phi": {k: jnum(v) for k, v in fam.phi.items()},
        },
    }
    return EXIT_OK, _dump_json(body)


RUNNERS = {"spectrum": run_spectrum, "wavefunction": run_wavefunction,
           "verify": run_verify, "nu-solve": run_nu_solve}


# --- argument parsing -------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    g = common.add_argument_group("potential and output")
    g.add_argument("--config", help="TOML file with any of the settings below; flags override it")
    g.add_argument("--De", type=float, help="dissociation energy (default 1)")
    g.add_argument("--re", type=float, help="equilibrium distance (default 1)")
    g.add_argument("--beta", type=float, help="ring-shaped strength (default 0)")
    g.add_argument("--dim", type=int, help="spatial dimension D >= 3 (default 3)")
    g.add_argument("--hbar", type=float, help="default 1")
    g.add_argument("--mu", type=float, help="reduced mass (default 1)")
    g.add_argument("--format", choices=("csv", "json"),
                   help="output format (default csv for tables, json for verify and nu-solve)")
    g.add_argument("--out", help="write to this file instead of stdout")
    g.add_argument("--grid-points", dest="grid_points", type=int, help="oracle grid points")
    g.add_argument("--tol", type=float, help="oracle agreement tolerance")
    g.add_argument("--dump-config", dest="dump_config", action="store_true",
                   help="print the effective settings as TOML and exit")

    parser = _Parser(prog="pseudoharmonic-nu", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", parents=[common], argument_default=argparse.SUPPRESS,
                        help="bound-state energies over a box of quantum numbers")
    sp.add_argument("--N-max", dest="N_max", type=int, help="radial quantum number bound (default 0)")
    sp.add_argument("--n-max", dest="n_max", type=int, help="polar quantum number bound (default 0)")
    sp.add_argument("--m-max", dest="m_max", type=int, help="azimuthal quantum number bound (default 0)")

    wp = sub.add_parser("wavefunction", parents=[common], argument_default=argparse.SUPPRESS,
                        help="sample a normalized wavefunction")
    wp.add_argument("--N", type=int)
    wp.add_argument("--n", type=int)
    wp.add_argument("--m", type=int)
    wp.add_argument("--sign", type=int, choices=(1, -1), help="sign of the azimuthal index")
    wp.add_argument("--r-min", dest="r_min", type=float, help="default r_max / r_points")
    wp.add_argument("--r-max", dest="r_max", type=float, help="default: where the state has decayed by 1e16")
    wp.add_argument("--r-points", dest="r_points", type=int, help="default 200")
    wp.add_argument("--theta", type=float, nargs="+", help="polar angles (default pi/2)")
    wp.add_argument("--phi", type=float, nargs="+", help="azimuthal angles (default 0)")
    wp.add_argument("--factors", action="store_true", help="emit R, H and Phi separately")

    vp = sub.add_parser("verify", parents=[common], argument_default=argparse.SUPPRESS,
                        help="run the closed-form vs oracle verification suite (JSON)")
    vp.add_argument("--perturb-energy", dest="perturb_energy", type=float,
                    help="scale closed-form sweep energies by (1 + x); test hook")
    vp.add_argument("--criteria", type=int, nargs="+", help="run only these criteria")

    np_ = sub.add_parser("nu-solve", parents=[common], argument_default=argparse.SUPPRESS,
                         help="run the raw NU reduction on coefficient triples (JSON)")
    np_.add_argument("--tau-tilde", dest="tau_tilde", type=_floats, help="c0,c1")
    np_.add_argument("--sigma", type=_floats, help="c0,c1,c2")
    np_.add_argument("--sigma-tilde", dest="sigma_tilde", type=_floats, help="c0,c1,c2")
    np_.add_argument("--domain", type=_floats, help="lo,hi (inf allowed); default from sigma")
    np_.add_argument("--n", dest="nu_n", type=int, help="polynomial degree for lambda_n (default 0)")
    return parser


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    """Defaults, then the TOML file, then explicit flags."""
    values = vars(ns).copy()
    values.pop("dump_config", None)
    path = values.pop("config", None)
    cfg = RunConfig()
    if path is not None:
        try:
            with open(path, "rb") as fh:
                text = fh.read().decode("utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read config {path!r}: {exc.strerror}") from exc
        cfg = RunConfig.from_toml(text)
    try:
        cfg = replace(cfg, **values)
    except TypeError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.format not in (None, "csv", "json"):
        raise UsageError("format must be csv or json")
    return cfg


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    dump = getattr(ns, "dump_config", False)
    try:
        cfg = resolve_config(ns)
        if dump:
            _emit(cfg.to_toml(), cfg.out)
            return EXIT_OK
        code, text = RUNNERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, CollapseError, NUReductionError, ArithmeticError, RuntimeError) as exc:
        print(f"{parser.prog}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(text, cfg.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
