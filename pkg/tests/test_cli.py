import json
import subprocess
import sys

import pytest

from pythagorion.cli import CSV_HEADER, main, render_scl
from pythagorion.scale import build_scale


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cf_table(capsys):
    code, out, _ = run(capsys, "cf", "--terms", "5")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[3:]]
    assert rows == [["0", "1", "1", "1"], ["1", "2", "1", "1"], ["2", "3", "2", "1"], ["3", "8", "5", "2"], ["4", "19", "12", "2"]]


def test_cf_single_and_ten(capsys):
    _, out, _ = run(capsys, "cf", "--terms", "1")
    assert len(out.splitlines()) == 4
    _, out, _ = run(capsys, "cf", "--terms", "10")
    assert out.splitlines()[-1].split()[-1] == "23"


def test_cf_cap_exceeded(capsys, monkeypatch):
    code, _, err = run(capsys, "cf", "--terms", "13")
    assert code == 2 and "cap" in err
    monkeypatch.setenv("PYTHAGORION_CF_CAP", "13")
    code, _, _ = run(capsys, "cf", "--terms", "13")
    assert code == 0


def test_scale_table_p5(capsys):
    code, out, _ = run(capsys, "scale", "--n", "5")
    assert code == 0
    rows = out.splitlines()[3:]
    assert len(rows) == 6
    assert rows[-1].split()[3] == "1200.000000"


def test_scale_table_p7_two_ratios(capsys):
    _, out, _ = run(capsys, "scale", "--n", "7")
    ratios = {line.split()[6] for line in out.splitlines()[3:-1]}
    assert ratios == {"1.053498", "1.125000"}


def test_scale_table_p12_pattern(capsys):
    _, out, _ = run(capsys, "scale", "--n", "12")
    labels = [line.split()[-1] for line in out.splitlines()[3:-1]]
    expected = "J^-1 I^-1 J^-1 I^-1 J^-1 I^-1 I^-1 J^-1 I^-1 J^-1 I^-1 I^-1".split()
    assert labels == expected


def test_scale_cents_monotone(capsys):
    _, out, _ = run(capsys, "scale", "--n", "53")
    cents = [float(line.split()[3]) for line in out.splitlines()[3:]]
    assert all(x < y for x, y in zip(cents, cents[1:]))


def test_scale_json(capsys):
    code, out, _ = run(capsys, "scale", "--n", "12", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 12
    assert [(d["pow3"], d["pow2"]) for d in data["notes"]] == build_scale(12).exponent_pairs()
    assert data["classification"] == {"k": 2, "type": "B", "basis_i": 4}
    assert {s["label"] for s in data["steps"]} == {"I^-1", "J^-1"}
    assert set(data["steps"][0]) == {"pow3", "pow2", "cents", "label"}


def test_scale_csv(capsys):
    _, out, _ = run(capsys, "scale", "--n", "3", "--format", "csv")
    lines = out.split("\n")
    assert lines[0] == CSV_HEADER
    assert lines[1] == "0,0,0,0.000000,2,3,203.910002"
    assert lines[4] == "3,0,-1,1200.000000,,,"
    assert "\r" not in out


def test_scale_scl_stdout(capsys):
    _, out, _ = run(capsys, "scale", "--n", "12", "--format", "scl")
    assert out == render_scl(build_scale(12))


def test_scale_invalid_n(capsys):
    code, _, err = run(capsys, "scale", "--n", "0")
    assert code == 2 and "n >= 1" in err


def test_steps(capsys):
    code, out, _ = run(capsys, "steps", "--n", "6")
    assert code == 0 and out.startswith("n=6: 3-step")
    _, out, _ = run(capsys, "steps", "--n", "12")
    assert "semi-convergent denominator: i=3, k=2" in out


def test_blocks(capsys):
    code, out, _ = run(capsys, "blocks", "--i", "5")
    assert code == 0
    assert "type A, 12 blocks" in out
    assert "block 1: (I, I, I, J)" in out


def test_delete(capsys):
    code, out, _ = run(capsys, "delete", "--i", "4", "--k", "1")
    assert code == 0 and "7-note scale" in out
    code, _, err = run(capsys, "delete", "--i", "4", "--k", "2")
    assert code == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--max", "12")
    assert code == 0
    assert "2-step: 2, 3, 5, 7, 12" in out and out.rstrip().endswith("PASS")
    code, out, _ = run(capsys, "verify", "--max", "2")
    assert code == 0


def test_verify_counterexample_exit(capsys, monkeypatch):
    import pythagorion.analysis as analysis

    monkeypatch.setattr(analysis, "is_semiconvergent_denominator", lambda n: None)
    code, out, _ = run(capsys, "verify", "--max", "6")
    assert code == 1 and "FAIL" in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scale"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--jobs", "0"])
    assert exc.value.code == 2


def test_export(tmp_path, capsys):
    path = tmp_path / "p12.scl"
    code, _, _ = run(capsys, "export", "--n", "12", "--out", str(path))
    assert code == 0
    lines = path.read_bytes().decode("utf-8").split("\n")
    assert lines[:5] == ["! pythagorean-12.scl", "!", "Pythagorean 12-note scale (3^b/2^a)", "12", "!"]
    assert lines[5] == "113.685006"
    assert lines[16] == "1200.000000" and lines[17] == ""


def test_export_single_note(tmp_path, capsys):
    path = tmp_path / "p1.scl"
    run(capsys, "export", "--n", "1", "--out", str(path))
    assert path.read_text().splitlines()[5:] == ["1200.000000"]


def test_export_io_error(tmp_path, capsys):
    bad = tmp_path / "missing" / "x.scl"
    code, _, err = run(capsys, "export", "--n", "5", "--out", str(bad))
    assert code == 1 and str(bad) in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pythagorion", "verify", "--max", "20"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "PASS" in proc.stdout
    # piped stderr: no progress stream
    assert proc.stderr == ""
    proc = subprocess.run([sys.executable, "-m", "pythagorion", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2
