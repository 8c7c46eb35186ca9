import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import numpy as np
import pytest
from scipy.integrate import trapezoid

from pseudoharmonic_nu import cli
from pseudoharmonic_nu.verify import REPORT_SCHEMA

GOLDEN_HEADER = "D,De,re,beta,hbar,mu,N,n,m,m_prime,ell_prime,L,energy"
GOLDEN_DEFAULT_ROW = "3,1,1,0,1,1,0,0,0,0,0,1,1.53553390593"


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_default_golden(capsys):
    code, out, _ = run(["spectrum"], capsys)
    assert code == 0
    assert out.splitlines() == [GOLDEN_HEADER, GOLDEN_DEFAULT_ROW]
    assert float(rows(out)[0]["energy"]) == pytest.approx(1.535533906, abs=1e-9)


def test_spectrum_json_shape(capsys):
    code, out, _ = run(["spectrum", "--format", "json", "--N-max", "1", "--n-max", "2", "--m-max", "1"], capsys)
    data = json.loads(out)
    assert code == 0
    assert len(data["states"]) == 2 * 3 * 2
    assert set(data["params"]) == {"D", "De", "re", "beta", "hbar", "mu"}
    assert list(data["states"][0]) == GOLDEN_HEADER.split(",")
    energies = [s["energy"] for s in data["states"]]
    assert energies == sorted(energies)


def test_spectrum_degeneracy(capsys):
    _, out, _ = run(["spectrum", "--n-max", "2", "--m-max", "2"], capsys)
    table = [r for r in rows(out) if int(r["n"]) + int(r["m"]) == 2]
    assert len(table) == 3 and len({r["energy"] for r in table}) == 1


def test_spectrum_ring_and_dimension(capsys):
    _, out, _ = run(["spectrum", "--dim", "5", "--beta", "0.5"], capsys)
    row = rows(out)[0]
    assert float(row["energy"]) == pytest.approx(-2 + (2 + math.sqrt(21)) / math.sqrt(2), rel=1e-11)
    assert row["D"] == "5" and row["m_prime"] == "1"


def test_spectrum_collapse_only_exits_1(capsys, monkeypatch):
    from pseudoharmonic_nu import system
    from pseudoharmonic_nu.errors import CollapseError

    def collapse(*args, **kwargs):
        raise CollapseError("forced")

    monkeypatch.setattr(system, "make_state", collapse)
    code, out, err = run(["spectrum"], capsys)
    assert code == 1 and out == GOLDEN_HEADER + "\n" and "warning" in err


@pytest.mark.parametrize("argv", [
    ["spectrum", "--dim", "2"],
    ["spectrum", "--De", "-1"],
    ["spectrum", "--N-max", "-1"],
    ["spectrum", "--De", "abc"],
    ["spectrum", "--format", "xml"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        sys.exit(cli.main(argv))
    assert info.value.code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "spec.csv"
    code, out, _ = run(["spectrum", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0] == GOLDEN_HEADER


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('De = 4.0\nre = 2.0\nN_max = 2\nformat = "json"\n')
    _, out, _ = run(["spectrum", "--config", str(cfg)], capsys)
    data = json.loads(out)
    assert data["params"]["De"] == 4.0 and len(data["states"]) == 3
    _, out, _ = run(["spectrum", "--config", str(cfg), "--De", "1", "--format", "csv"], capsys)
    assert rows(out)[0]["De"] == "1" and len(rows(out)) == 3


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("De = [unclosed\n")
    assert run(["spectrum", "--config", str(bad)], capsys)[0] == 2
    unknown = tmp_path / "unknown.toml"
    unknown.write_text("colour = 3\n")
    code, _, err = run(["spectrum", "--config", str(unknown)], capsys)
    assert code == 2 and "colour" in err
    assert run(["spectrum", "--config", str(tmp_path / "missing.toml")], capsys)[0] == 2


def test_config_round_trip_byte_identical(tmp_path, capsys):
    _, first, _ = run(["wavefunction", "--De", "2.5", "--beta", "0.3", "--theta", "0.4", "1.2", "--N", "1",
                       "--dump-config"], capsys)
    path = tmp_path / "dumped.toml"
    path.write_text(first)
    _, second, _ = run(["wavefunction", "--config", str(path), "--dump-config"], capsys)
    assert first == second
    cfg = cli.RunConfig.from_toml(first)
    assert cfg.to_toml() == first and cfg.theta == [0.4, 1.2] and cfg.command == "wavefunction"


def test_run_config_defaults_round_trip():
    cfg = cli.RunConfig()
    assert cli.RunConfig.from_toml(cfg.to_toml()) == cfg


def test_wavefunction_ground_state(capsys):
    code, out, _ = run(["wavefunction"], capsys)
    table = rows(out)
    assert code == 0 and list(table[0]) == ["r", "theta", "phi", "re_psi", "im_psi"]
    assert all(float(r["re_psi"]) > 0 and float(r["im_psi"]) == 0 for r in table)


def test_wavefunction_radial_trapezoid_norm(capsys):
    _, out, _ = run(["wavefunction", "--factors", "--dim", "4", "--beta", "0.5", "--r-points", "400"], capsys)
    table = rows(out)
    r = np.array([float(t["r"]) for t in table])
    R = np.array([float(t["R"]) for t in table])
    assert trapezoid(R**2 * r**3, r) == pytest.approx(1.0, abs=1e-3)


def test_wavefunction_first_excited_has_one_node(capsys):
    _, out, _ = run(["wavefunction", "--factors", "--N", "1", "--r-points", "500"], capsys)
    R = np.array([float(t["R"]) for t in rows(out)])
    R = R[np.abs(R) > 1e-12 * np.abs(R).max()]
    assert int(np.sum(np.sign(R[1:]) != np.sign(R[:-1]))) == 1


def test_wavefunction_factor_columns_and_json(capsys):
    _, out, _ = run(["wavefunction", "--factors", "--m", "1", "--phi", "0", "1", "--r-points", "3"], capsys)
    table = rows(out)
    assert list(table[0]) == ["r", "theta", "phi", "R", "H", "re_Phi", "im_Phi"] and len(table) == 6
    _, out, _ = run(["wavefunction", "--format", "json", "--r-points", "4"], capsys)
    data = json.loads(out)
    assert data["state"]["energy"] == pytest.approx(1.53553390593) and len(data["samples"]) == 4


@pytest.mark.parametrize("flag, value, name", [("--theta", "0", "theta"), ("--theta", "3.5", "theta"),
                                               ("--r-min", "-0.5", "r")])
def test_wavefunction_domain_errors(flag, value, name, capsys):
    code, _, err = run(["wavefunction", "--r-points", "5", flag, value], capsys)
    assert code == 1 and f"{name}=" in err


def test_nu_solve_radial(capsys):
    code, out, _ = run(["nu-solve", "--tau-tilde", "1,0", "--sigma", "0,2,0",
                        f"--sigma-tilde=-2,{5 * math.sqrt(2)!r},-2"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["k_candidates"] == pytest.approx([math.sqrt(2), 4 * math.sqrt(2)], rel=1e-11)
    assert data["selected"]["tau"] == pytest.approx([5.0, -2 * math.sqrt(2)], rel=1e-11)
    assert data["family"]["kind"] == "laguerre-like"
    assert data["form"]["domain"] == [0.0, "inf"]


def test_nu_solve_angular(capsys):
    mp, n = 1.3, 2
    nu = (n + mp) * (n + mp + 1)
    code, out, _ = run(["nu-solve", "--tau-tilde", "0,-2", "--sigma", "1,0,-1",
                        f"--sigma-tilde={nu - mp * mp!r},0,{-nu!r}", "--n", str(n)], capsys)
    data = json.loads(out)
    assert code == 0 and data["selected"]["tau"] == pytest.approx([0.0, -2 * (1 + mp)], abs=1e-11)
    assert data["lambda_n"] == pytest.approx(data["selected"]["lambda"], rel=1e-10)
    assert len(data["branches"]) == 4


@pytest.mark.parametrize("argv", [
    ["nu-solve", "--tau-tilde", "x", "--sigma", "1", "--sigma-tilde", "1"],
    ["nu-solve", "--sigma", "1", "--sigma-tilde", "1"],
    ["nu-solve", "--tau-tilde", "0", "--sigma", "1,0,-1,4", "--sigma-tilde", "1"],
    ["nu-solve", "--tau-tilde", "0", "--sigma", "1,0,-1", "--sigma-tilde", "1", "--domain=-2,2"],
    ["nu-solve", "--tau-tilde", "0", "--sigma", "1", "--sigma-tilde", "1", "--format", "csv"],
])
def test_nu_solve_malformed_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        sys.exit(cli.main(argv))
    assert info.value.code == 2


def test_nu_solve_no_branch_exit_1(capsys):
    code, _, err = run(["nu-solve", "--tau-tilde", "0", "--sigma", "1,0,-1", "--sigma-tilde", "5,0,1"], capsys)
    assert code == 1 and "NUReductionError" in err


def test_verify_subset_schema_and_fault(capsys):
    code, out, _ = run(["verify", "--criteria", "2", "4", "5"], capsys)
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert code == 0 and report["passed"] and [s["criterion"] for s in report["summary"]] == [2, 4, 5]
    code, out, _ = run(["verify", "--criteria", "5", "--perturb-energy", "1e-3"], capsys)
    assert code == 0  # the hook only touches the criterion-1 sweep
    assert run(["verify", "--criteria", "11"], capsys)[0] == 2
    assert run(["verify", "--format", "csv"], capsys)[0] == 2


def _invoke(*args):
    return subprocess.run([sys.executable, "-m", "pseudoharmonic_nu", *args], capture_output=True, check=False)


def test_byte_identical_invocations():
    for args in (["spectrum", "--N-max", "2", "--n-max", "2", "--m-max", "2", "--beta", "0.25"],
                 ["spectrum", "--format", "json", "--dim", "7"],
                 ["wavefunction", "--N", "2", "--m", "1", "--phi", "0.3", "--r-points", "50"]):
        first, second = _invoke(*args), _invoke(*args)
        assert first.returncode == 0 and first.stdout == second.stdout and first.stdout


def test_module_entry_point_exit_codes():
    assert _invoke("spectrum", "--dim", "1").returncode == 2
    assert _invoke("wavefunction", "--theta", "0").returncode == 1
