import io
import json
import math

import numpy as np
import pytest

from rieszlab import cli
from rieszlab.fourier import TrigPoly, load_grid, sample, save_grid

PSI_L1 = TrigPoly(1, {(-1,): 1.0, (1,): 2.0, (3,): 1.0})


def poly_json(poly: TrigPoly) -> str:
    return json.dumps(poly.to_json_dict())


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert "0.1.0" in capsys.readouterr().out


def test_no_subcommand_is_an_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_figures_csv_deterministic(capsys):
    code1, out1, _ = run(capsys, ["figures", "--d", "1"])
    code2, out2, _ = run(capsys, ["figures", "--d", "1"])
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.startswith("q,upper,lower,upper_source,lower_source\n")
    assert "\ninf,4,4," in out1


def test_figures_json_maps_inf(capsys):
    code, out, _ = run(capsys, ["figures", "--d", "2", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    last = doc["rows"][-1]
    assert last["q"] is None  # q = inf encoded as null
    assert last["upper"] == pytest.approx(3.0)


def test_norm_stdin_csv(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(poly_json(PSI_L1)))
    code, out, _ = run(capsys, ["norm", "--p", "2"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "p,norm"
    p, norm = lines[1].split(",")
    assert float(norm) == pytest.approx(math.sqrt(6.0), rel=1e-12)


def test_norm_json_handles_inf_strictly(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(poly_json(TrigPoly(1, {(3,): 1.0}))))
    code, out, _ = run(capsys, ["norm", "--p", "inf", "--format", "json"])
    assert code == 0
    doc = json.loads(out)  # must be strict JSON, no bare Infinity
    assert doc["p"] == "inf"
    assert float(doc["norm"]) == pytest.approx(1.0, rel=1e-12)


def test_norm_respects_config_file_and_flag(capsys, monkeypatch, tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("grid_1d = 512\n")
    monkeypatch.setattr("sys.stdin", io.StringIO(poly_json(TrigPoly(1, {(1,): 1.0}))))
    code, out, _ = run(
        capsys, ["norm", "--p", "2", "--format", "json", "--config", str(cfgfile)]
    )
    assert code == 0 and json.loads(out)["n_per_axis"] == 512
    monkeypatch.setattr("sys.stdin", io.StringIO(poly_json(TrigPoly(1, {(1,): 1.0}))))
    code, out, _ = run(
        capsys,
        ["norm", "--p", "2", "--format", "json", "--config", str(cfgfile), "--grid", "64"],
    )
    assert code == 0 and json.loads(out)["n_per_axis"] == 64


def test_project_poly_json(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(poly_json(PSI_L1)))
    code, out, _ = run(capsys, ["project"])
    assert code == 0
    proj = TrigPoly.from_json_dict(json.loads(out))
    assert set(proj.coeffs) == {(1,), (3,)}


def test_project_minus(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(poly_json(PSI_L1)))
    code, out, _ = run(capsys, ["project", "--minus"])
    assert code == 0
    proj = TrigPoly.from_json_dict(json.loads(out))
    assert set(proj.coeffs) == {(-1,)}


def test_project_axes_2d(capsys, monkeypatch):
    poly = TrigPoly(2, {(-1, 2): 1.0, (1, -2): 1.0, (1, 2): 1.0})
    monkeypatch.setattr("sys.stdin", io.StringIO(poly_json(poly)))
    code, out, _ = run(capsys, ["project", "--axes", "1"])
    assert code == 0
    proj = TrigPoly.from_json_dict(json.loads(out))
    assert set(proj.coeffs) == {(1, -2), (1, 2)}


def test_project_grid_route(capsys, tmp_path):
    grid = sample(PSI_L1, 32)
    src = tmp_path / "in.rlgf"
    dst = tmp_path / "out.rlgf"
    save_grid(grid, str(src))
    code, _, _ = run(capsys, ["project", "--in", str(src), "--out", str(dst)])
    assert code == 0
    result = load_grid(str(dst))
    expected = sample(TrigPoly(1, {(1,): 2.0, (3,): 1.0}), 32)
    assert np.allclose(result.samples, expected.samples, atol=1e-12)


def test_project_grid_requires_out(capsys, tmp_path):
    src = tmp_path / "in.rlgf"
    save_grid(sample(PSI_L1, 32), str(src))
    code, _, err = run(capsys, ["project", "--in", str(src)])
    assert code == 2
    assert "--out" in err


def test_rpk_check_passes_at_critical_p(capsys):
    code, out, err = run(capsys, ["rpk-check", "--q", "4"])
    assert code == 0
    assert "passed" in err
    lines = out.strip().split("\n")
    assert lines[0] == "n,margin,factor_margin"
    assert len(lines) == 51
    # every margin nonnegative
    assert all(float(line.split(",")[1]) >= -1e-12 for line in lines[1:])


def test_rpk_check_reports_violation(capsys):
    code, _, err = run(capsys, ["rpk-check", "--q", "1.3333333333333333", "--p", "1.2"])
    assert code == 0  # reporting a violation is a successful run
    assert "violation at n=1" in err


def test_rpk_check_quadrature_cross_check(capsys):
    code, out, _ = run(
        capsys, ["rpk-check", "--q", "4", "--r", "0.25", "--format", "json"]
    )
    assert code == 0
    doc = json.loads(out)
    check = doc["quadrature_checks"][0]
    assert check["diff"] < 1e-9


def test_rpk_check_nonconvergence_exit_code(capsys):
    # r this close to the boundary cannot converge in the default 200 terms
    code, _, err = run(capsys, ["rpk-check", "--q", "4", "--r", "0.9995"])
    assert code == 3
    assert err.strip()


def test_dual_extremal_kernel(capsys):
    code, out, _ = run(
        capsys,
        ["dual-extremal", "--kernel", "0.5", "--q", "1.3333333333333333", "--degree", "40"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == pytest.approx(0.75 ** (-0.25), abs=1e-4)
    assert abs(float(doc["duality_gap"])) < 1e-6


def test_dual_extremal_input_validation(capsys, tmp_path):
    code, _, err = run(capsys, ["dual-extremal", "--q", "2"])
    assert code == 2 and "exactly one" in err
    src = tmp_path / "phi.json"
    src.write_text(poly_json(TrigPoly(1, {(0,): 1.0})))
    code, _, err = run(
        capsys, ["dual-extremal", "--q", "2", "--kernel", "0.5", "--in", str(src)]
    )
    assert code == 2


def test_d2_scan_csv_and_sidecar(capsys, tmp_path):
    out_path = tmp_path / "scan.csv"
    code, _, _ = run(
        capsys,
        ["d2-scan", "--q", "3", "--eps", "0.08,0.04", "--out", str(out_path)],
    )
    assert code == 0
    text = out_path.read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "q,eps,threshold_p,a,b,psi_norm"
    assert len(lines) == 3
    meta = json.loads((tmp_path / "scan.csv.meta.json").read_text())
    assert meta["eps"] == [0.08, 0.04]
    scan_meta = meta["scans"][0]
    assert scan_meta["q"] == 3.0
    assert scan_meta["extrapolated"] == pytest.approx(2.5, abs=0.01)


def test_dirichlet_csv(capsys):
    code, out, _ = run(capsys, ["dirichlet", "--d", "2", "--p", "1", "--radii", "5,10"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "d,p,R,norm,lattice_count"
    counts = [int(line.split(",")[4]) for line in lines[1:]]
    assert counts == [81, 317]


def test_dirichlet_fit_needs_enough_radii(capsys):
    code, _, err = run(
        capsys, ["dirichlet", "--d", "2", "--p", "1", "--radii", "5,10,20", "--fit"]
    )
    assert code == 2
    assert err.strip()


def test_search_json_deterministic(capsys):
    argv = [
        "search", "--d", "1", "--q", "1.3333333333333333", "--p", "1.2",
        "--budget", "40", "--seed", "0",
    ]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["found"] is True
    assert doc["certificate"]["ratio"] > 1.0 + 1e-8


def test_search_reports_no_violation(capsys):
    code, out, _ = run(
        capsys, ["search", "--d", "1", "--q", "inf", "--p", "4", "--budget", "30", "--seed", "0"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["found"] is False and doc["certificate"] is None


def test_selftest_green(capsys):
    code, out, _ = run(capsys, ["selftest"])
    assert code == 0
    assert "FAIL" not in out


def test_bad_config_file_exit_code(capsys, tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("bogus = 1\n")
    code, _, err = run(capsys, ["figures", "--d", "1", "--config", str(cfgfile)])
    assert code == 2
    assert "bogus" in err
