import csv
import io
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from qsimplex import cli


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "qsimplex", *args], capture_output=True, text=True)


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def test_help():
    cp = run_cli("--help")
    assert cp.returncode == 0
    for sub in ("map", "run", "rabi-sweep", "evolve", "verify"):
        assert sub in cp.stdout


def test_map_basis(capsys):
    assert cli.main(["map", "|0>"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["index", "s", "p"]
    assert [float(r[1]) for r in rows[1:]] == [0.25, 0.125, 0.0, 0.125, 0.125, 0.125, 0.125, 0.125]


def test_map_bad_literal_exit_code():
    assert cli.main(["map", "(1,0)", "(1,0)"]) == 2


def test_rabi_sweep_values(tmp_path):
    out = tmp_path / "rabi.csv"
    cp = run_cli("rabi-sweep", "--steps", "5", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    rows = read_csv(out)
    assert rows[0] == ["theta"] + [f"s{i}" for i in range(1, 9)]
    theta = [float(r[0]) for r in rows[1:]]
    s1 = [float(r[1]) for r in rows[1:]]
    assert theta[0] == 0.0 and theta[-1] == pytest.approx(2 * np.pi)
    assert s1[0] == 0.25
    assert s1[1] == pytest.approx(1 / 8, abs=1e-16)  # theta = pi/2
    assert s1[2] == pytest.approx(0.0, abs=1e-16)  # theta = pi
    assert out.read_bytes().endswith(b"\n") and b"\r" not in out.read_bytes()


def test_rabi_sweep_formula():
    rows = cli.rabi_sweep(101)
    for row in rows:
        assert abs(row[1] - (1 + np.cos(row[0])) / 8) < 1e-15


def test_rabi_sweep_rejects_few_steps():
    assert cli.main(["rabi-sweep", "--steps", "1"]) == 3


def test_csv_uses_17_significant_digits(tmp_path):
    out = tmp_path / "r.csv"
    cli.main(["rabi-sweep", "--steps", "3", "--out", str(out)])
    rows = read_csv(out)
    rows_num = cli.rabi_sweep(3)
    for text_row, row in zip(rows[1:], rows_num):
        assert [float(v) for v in text_row] == row


def test_evolve_sigma_x(tmp_path):
    out = tmp_path / "evo.csv"
    assert cli.main(["evolve", "--preset", "sigma_x", "--t-final", str(2 * np.pi), "--dt", "1e-3", "--every", "25", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0][0] == "t" and rows[0][-1] == "sum_residual"
    data = np.array(rows[1:], dtype=float)
    assert np.max(np.abs(data[:, 1] - (1 + np.cos(data[:, 0])) / 8)) < 1e-8
    assert np.max(data[:, -1]) < 1e-10


def test_evolve_zero_time(tmp_path):
    out = tmp_path / "evo.csv"
    assert cli.main(["evolve", "--t-final", "0", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 2
    assert [float(v) for v in rows[1][1:9]] == [0.25, 0.125, 0.0, 0.125, 0.125, 0.125, 0.125, 0.125]


def test_evolve_presets():
    np.testing.assert_array_equal(cli.hamiltonian_preset("sigma_z"), np.diag([1, -1]))
    d = cli.hamiltonian_preset("detuned(0.4, 2)")
    np.testing.assert_allclose(d, [[0.2, 1.0], [1.0, -0.2]])
    with pytest.raises(Exception):
        cli.hamiltonian_preset("bogus")


def test_evolve_bad_step_exit_code():
    assert cli.main(["evolve", "--dt", "0"]) == 3
    assert cli.main(["evolve", "--preset", "nope"]) == 3


def test_run_circuit_file(tmp_path):
    circ = tmp_path / "c.qc"
    circ.write_text("qubits 1\ninit |0>\nH 0\n")
    cp = run_cli("run", str(circ), "--mode", "both")
    assert cp.returncode == 0, cp.stderr
    assert "max deviation" in cp.stdout


def test_run_parse_error_exit_code(tmp_path):
    circ = tmp_path / "bad.qc"
    circ.write_text("qubits 1\ninit |0>\nH 5\n")
    cp = run_cli("run", str(circ))
    assert cp.returncode == 2
    assert "line 3" in cp.stderr


def test_run_tensor64_cnot_exit_code(tmp_path):
    circ = tmp_path / "cnot.qc"
    circ.write_text("qubits 2\ninit |10>\nCNOT 0 1\n")
    assert cli.main(["run", str(circ), "--repr", "box16"]) == 0
    assert cli.main(["run", str(circ), "--repr", "tensor64"]) == 3


def test_run_missing_file():
    assert cli.main(["run", "/nonexistent/file.qc"]) == 1


def test_verify_table(capsys):
    code = cli.main(["verify", "--seed", "3"])
    out = capsys.readouterr().out
    assert "seed 3" in out
    lines = [l for l in out.splitlines() if l.endswith(("PASS", "FAIL"))]
    assert len(lines) == 11
    failing = [l for l in lines if l.endswith("FAIL")]
    # only the 64-entry CNOT truth table is expected to fail
    assert len(failing) == 1 and "64-entry" in failing[0]
    assert code == 3
