import csv
import json

import numpy as np
import pytest

from rydotoc.analysis import sweep
from rydotoc.cli import main
from rydotoc.config import parse_config
from rydotoc.hamiltonian import InteractionForm
from rydotoc.io import CSV_HEADER, sweep_to_csv
from rydotoc.protocol import ProtocolConfig
from rydotoc.qasm import parse_qasm


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_config_defaults_without_header():
    spec, noise = parse_config("omega = 2.0\nv12 = 0.5\ninteraction_form = number\n")
    assert spec.omega == 2.0 and spec.v12 == 0.5
    assert spec.interaction_form is InteractionForm.NUMBER_OPERATOR
    assert noise is None


def test_config_noise_section():
    spec, noise = parse_config(
        "[hamiltonian]\nn_spins = 2\n[noise]\npreset = table1\nreadout_error = 0.01\nseed = 3\nlayout = 1, 2, 0\n"
    )
    assert noise.readout_error == (0.01,) * 5
    assert noise.gate_error_1q[3] == pytest.approx(3.78e-3)
    assert noise.rng_seed == 3 and noise.layout == (1, 2, 0)


@pytest.mark.parametrize("text", [
    "bogus = 1\n",
    "[noise]\npreset = nope\n",
    "[noise]\nreadout_error = 0.1, 0.2\n",
    "[other]\nx = 1\n",
])
def test_config_errors(text):
    with pytest.raises(ValueError):
        parse_config(text)


def test_csv_format():
    text = sweep_to_csv(sweep(ProtocolConfig(), 1.0, 3))
    lines = text.split("\n")
    assert lines[0] == CSV_HEADER and "\r" not in text and text.endswith("\n")
    assert len(lines) == 5  # header, 3 rows, trailing empty


def test_cli_oracle_sweep(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["--initial", "product", "--mode", "oracle", "--t-max", "8", "--points", "81", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 81 and float(rows[0]["re_f"]) == 1.0
    manifest = json.loads((tmp_path / "sweep.csv.manifest.json").read_text())
    assert manifest["tool"] == "rydotoc" and manifest["grid"]["points"] == 81


def test_cli_trotter_tracks_oracle(tmp_path):
    out = tmp_path / "bell.csv"
    assert main(["--initial", "bell", "--mode", "trotter", "--steps", "200", "--points", "17", "--out", str(out)]) == 0
    rows = read_rows(out)
    diff = [abs(float(r["re_f"]) - float(r["re_f_oracle"])) for r in rows]
    assert max(diff) < 0.05


def test_cli_emit_qasm(tmp_path):
    q = tmp_path / "circuit.qasm"
    assert main(["--points", "2", "--emit-qasm", "t=1.0", str(q), "--out", str(tmp_path / "s.csv")]) == 0
    c = parse_qasm(q.read_text())
    assert c.n_qubits == 3 and c.ops[-1].kind == "MEASURE"


def test_cli_json(tmp_path):
    j = tmp_path / "s.json"
    assert main(["--points", "3", "--json", str(j), "--out", str(tmp_path / "s.csv")]) == 0
    doc = json.loads(j.read_text())
    assert len(doc["points"]) == 3 and "im_f_oracle" in doc["notes"]


def test_cli_stdout(capsys):
    assert main(["--points", "2", "--t-max", "1"]) == 0
    assert capsys.readouterr().out.startswith(CSV_HEADER)


def test_cli_noisy_byte_identical(tmp_path):
    args = ["--mode", "noisy", "--points", "3", "--shots", "512", "--seed", "5"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b), "--workers", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [
    ["--mode", "bogus"],
    ["--points", "1"],
    ["--steps", "0"],
    ["--emit-qasm", "1.0", "x.qasm"],
])
def test_cli_bad_flags(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_cli_runtime_error(tmp_path, capsys):
    assert main(["--config", str(tmp_path / "missing.ini")]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_config_and_interaction(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("omega = 0.5\n")
    out = tmp_path / "s.csv"
    assert main(["--config", str(cfg), "--interaction", "number", "--points", "2", "--out", str(out)]) == 0
    manifest = json.loads((tmp_path / "s.csv.manifest.json").read_text())
    assert manifest["config"]["omega"] == 0.5 and manifest["config"]["interaction_form"] == "number"
