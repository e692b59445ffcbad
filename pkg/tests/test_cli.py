import csv
import io
import json

import numpy as np
import pytest

from cartanmetric.cli import main

from conftest import EUCLID2_DOC, SWEEP_DOC


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_json_iseries1(capsys):
    code, out, _ = run(capsys, "table", "--metric", "iseries1", "--alpha", "1", "--beta", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert (doc["H"], doc["H_a"], doc["H_b"], doc["r_m3"], doc["r_m4"]) == (4.0, 8.0, 0.0, -10.0, 12.0)


def test_table_text_is_default(capsys):
    code, out, _ = run(capsys, "table", "--metric", "randers", "--alpha", "1", "--beta", "1")
    assert code == 0 and out.startswith("# H = (alpha + beta)^2")
    assert "r_m4" in out


def test_invariants_csv(capsys):
    code, out, _ = run(capsys, "invariants", "--metric", "kropina", "--alpha", "1", "--beta", "1", "--format", "csv")
    rows = {r["quantity"]: float(r["value"]) for r in csv.DictReader(io.StringIO(out))}
    assert code == 0
    assert rows == {"rho1": -1, "rho": 2, "rho0": 3, "rho_m1": -4, "rho_m2": 4,
                    "r_m1": -12, "r_m2": 12, "r_m3": -8, "r_m4": 0}


def test_inadmissible_point_exit_2(capsys):
    code, _, err = run(capsys, "table", "--metric", "iseries1", "--alpha", "2", "--beta", "1")
    assert code == 2 and "requires β>α>0" in err


def test_missing_point_exit_2(capsys):
    code, _, _ = run(capsys, "invariants", "--metric", "iseries1", "--alpha", "2")
    assert code == 2


def test_tensors_worked_point(capsys, spec_file):
    path = spec_file(EUCLID2_DOC)
    code, out, _ = run(capsys, "tensors", "--metric", "iseries1", "--spec", str(path), "--y", "0.6", "0.8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    np.testing.assert_allclose(doc["g_upper"], [[7.148, -2.211], [-2.211, 6.952]], rtol=1e-9)
    assert doc["tau"] == pytest.approx(5.525, rel=1e-9)
    assert doc["C2"] is None and doc["signature"] == [2, 0, 0]


def test_tensors_text_and_csv(capsys, spec_file):
    path = str(spec_file(EUCLID2_DOC))
    _, text, _ = run(capsys, "tensors", "--metric", "randers", "--spec", path, "--y", "1", "0")
    lines = dict(line.split(None, 1) for line in text.splitlines())
    assert "g_upper[0,0]" in lines and lines["signature"] == "2/0/0"
    _, out, _ = run(capsys, "tensors", "--metric", "randers", "--spec", path, "--y", "1", "0", "--format", "csv")
    rows = {r["quantity"]: r["value"] for r in csv.DictReader(io.StringIO(out))}
    assert float(rows["g_upper[0,0]"]) == pytest.approx(4.0)


@pytest.mark.parametrize("y", [["0", "0"], ["1", "-1"], ["1"]])
def test_tensors_bad_momentum(capsys, spec_file, y):
    code, _, _ = run(capsys, "tensors", "--metric", "iseries1", "--spec", str(spec_file(EUCLID2_DOC)), "--y", *y)
    assert code == 2


def test_verify_summary_and_exit(capsys, spec_file, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--metric", "iseries1", "--spec", str(spec_file(SWEEP_DOC)),
                       "--samples", "20", "--out", str(report))
    assert code == 0
    assert out.strip().startswith("iseries1 holds=") and out.strip().endswith("errata=3")
    doc = json.loads(report.read_text())
    assert doc["header"]["samples"] == 20
    assert {n["erratum"] for n in doc["errata"]} == {"rho-missing-inverse-alpha", "g-bY-coefficient-missing-inverse-alpha"}


def test_verify_stdout_stays_json(capsys, spec_file):
    code, out, err = run(capsys, "verify", "--metric", "randers", "--spec", str(spec_file(SWEEP_DOC)), "--samples", "5")
    assert code == 0
    assert json.loads(out)["header"]["family"] == "randers"
    assert err.startswith("randers holds=")


def test_verify_byte_identical(capsys, spec_file, tmp_path):
    path = str(spec_file(SWEEP_DOC))
    bodies = []
    for name in ("a", "b"):
        out = tmp_path / f"{name}.json"
        assert main(["verify", "--metric", "iseries2", "--spec", path, "--samples", "15", "--seed", "3", "--out", str(out)]) == 0
        bodies.append(out.read_bytes())
    assert bodies[0] == bodies[1]


@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_verify_other_formats(capsys, spec_file, fmt):
    code, out, _ = run(capsys, "verify", "--metric", "iseries2", "--spec", str(spec_file(SWEEP_DOC)),
                       "--samples", "5", "--format", fmt)
    assert code == 0 and "iseries2.H_bb" in out


def test_verify_missing_spec_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--metric", "randers", "--spec", str(tmp_path / "nope.json"))
    assert code == 3 and "cannot read" in err


def test_verify_invalid_spec_exit_2(capsys, spec_file):
    bad = dict(EUCLID2_DOC, cometric={"kind": "constant", "matrix": [[1, 2], [2, 1]]})
    code, _, err = run(capsys, "verify", "--metric", "randers", "--spec", str(spec_file(bad)))
    assert code == 2 and "cometric.matrix" in err


def test_sampler_exhaustion_exit_4(capsys, spec_file):
    doc = dict(EUCLID2_DOC, oneform={"kind": "constant", "b": [0.1, 0.1]})
    code, _, _ = run(capsys, "verify", "--metric", "iseries1", "--spec", str(spec_file(doc)), "--samples", "1")
    assert code == 4


def test_sample_csv_round_trip(capsys, spec_file):
    path = str(spec_file(SWEEP_DOC))
    code, out, _ = run(capsys, "sample", "--metric", "iseries1", "--spec", path, "--samples", "4", "--seed", "9")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["index"] for r in rows] == ["0", "1", "2", "3"]
    _, js, _ = run(capsys, "sample", "--metric", "iseries1", "--spec", path, "--samples", "4", "--seed", "9", "--format", "json")
    for r, j in zip(rows, json.loads(js)):
        assert float(r["alpha"]) == j["alpha"] and float(r["beta"]) == j["beta"]
        assert float(r["beta"]) > float(r["alpha"]) > 0
        assert [float(r["y0"]), float(r["y1"])] == j["y"]


def test_unknown_metric_rejected_by_argparse():
    with pytest.raises(SystemExit) as info:
        main(["table", "--metric", "matsumoto", "--alpha", "1", "--beta", "2"])
    assert info.value.code == 2


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "cartanmetric", "invariants", "--metric", "iseries1",
                           "--alpha", "1", "--beta", "2", "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["rho"] == 4.0
