import json

import numpy as np
import pytest

from pilotwave.cli import FORMULAS, main
from pilotwave.gridio import read_grid
from pilotwave.pipeline import CatalogId


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_params(capsys):
    code, out, _ = run(capsys, "params")
    assert code == 0
    d = json.loads(out)
    assert d["omega_rad_per_s"] == pytest.approx(3.038534897619021e15, rel=1e-15)
    assert d["quantum_n"] == 0


def test_params_to_file(capsys, tmp_path):
    out = tmp_path / "p.json"
    assert run(capsys, "params", "--energy-ev", "2", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["energy_eV"] == pytest.approx(2.0)


@pytest.mark.parametrize("field,valid", [("born", False), ("standard", True), ("dual", True),
                                         ("dual-left", True), ("dual-right-phi", True)])
def test_derive(capsys, field, valid):
    code, out, _ = run(capsys, "derive", "--field", field)
    d = json.loads(out)
    assert code == 0
    assert d["dimension_valid"] is valid
    assert d["max_relative_error"] < 1e-12
    assert d["max_radial_component"] == 0.0


def test_derive_born_reports_inverse_length(capsys):
    d = json.loads(run(capsys, "derive", "--field", "born")[1])
    assert d["velocity"] == "invalid-raw" and d["dimension"] == "L^-1"


def test_reverse(capsys):
    code, out, _ = run(capsys, "reverse", "--velocity", "corrected", "--max-samples", "10")
    d = json.loads(out)
    assert code == 0 and d["scalar_field"] == "dual-phi" and d["samples"] == 10
    assert d["max_relative_error"] < 1e-6 and d["round_trip_max_relative_error"] < 1e-6
    assert d["scalar_dimension"] == "L^2 T^-1"


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--resolution", "11", "--n-random", "3", "--points", "200")
    assert code == 0
    assert out.strip().endswith("ALL PASS")
    assert "FAIL " not in out


def test_verify_verdict_independent_of_resolution(capsys):
    verdicts = [run(capsys, "verify", "--resolution", res, "--n-random", "2", "--points", "100")[0]
                for res in ("51", "201")]
    assert verdicts == [0, 0]


def test_verify_detects_sign_flip(capsys, monkeypatch):
    import pilotwave.pipeline as pl
    real = pl._velocity_closed

    def flipped(cid, r, t, q):
        out = real(cid, r, t, q)
        return -out if cid is CatalogId.LEFT_DUAL else out

    monkeypatch.setattr(pl, "_velocity_closed", flipped)
    code, out, _ = run(capsys, "verify", "--resolution", "11", "--n-random", "1", "--points", "50")
    assert code == 1
    assert "FAILURES" in out


def test_grid_single(capsys, tmp_path):
    out = tmp_path / "g.json"
    code, stdout, _ = run(capsys, "grid", "--field", "standard", "--resolution", "3",
                          "--format", "json", "--out", str(out))
    assert code == 0 and stdout.strip() == str(out)
    doc = read_grid(out)
    assert len(doc["rows"]) == 9 and doc["rows"][4][2:] == [None, None, None]


def test_grid_all(capsys, tmp_path):
    code, out, _ = run(capsys, "grid", "--all", "--resolution", "5", "--out-dir", str(tmp_path))
    assert code == 0
    assert len(out.splitlines()) == 8
    assert len(list(tmp_path.glob("*_1eV_5.csv"))) == 8


def test_trajectory(capsys, tmp_path):
    code, out, _ = run(capsys, "trajectory", "--velocity", "standard", "--steps", "100")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("t_s,r_m") and len(lines) == 102
    theta_end = float(lines[-1].split(",")[2])
    assert theta_end == pytest.approx(-np.log(10.0), rel=1e-6)


def test_dims(capsys):
    assert run(capsys, "dims", "--item", "corrected")[1].strip() == "L T^-1"
    assert run(capsys, "dims", "--item", "invalid-raw")[1].strip() == "L^-1"
    assert run(capsys, "dims", "--item", "dual-phi")[1].strip() == "L^2 T^-1"


@pytest.mark.parametrize("argv", [
    [],
    ["params", "--energy-ev", "-1"],
    ["derive", "--field", "corrected"],
    ["reverse", "--velocity", "standard-phi"],
    ["reverse", "--velocity", "standard", "--range-nm", "20"],
    ["grid"],
    ["grid", "--field", "born", "--resolution", "4"],
    ["trajectory", "--velocity", "standard", "--time", "0"],
    ["dims", "--item", "bogus"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_help_lists_formulas(capsys):
    with pytest.raises(SystemExit):
        from pilotwave.cli import build_parser
        build_parser().parse_args(["derive", "--help"])
    assert "exp(-2 beta r^2)" in capsys.readouterr().out
    assert set(FORMULAS) == set(CatalogId)
