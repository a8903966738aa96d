import json
import math

import pytest

from entropy_extremes import cli
from entropy_extremes.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, run
from entropy_extremes.region import load_csv


def _json_out(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    assert code == EXIT_OK, out
    return json.loads(out)


def test_bound_uniform(capsys):
    doc = _json_out(capsys, ["bound", "--dist", "[0.25,0.25,0.25,0.25]",
                             "--measure", "alpha-norm", "--order", "2"])
    assert doc["lower"] == pytest.approx(0.5, abs=1e-15)
    assert doc["upper"] == pytest.approx(0.5, abs=1e-15)


def test_bound_reads_csv_file(capsys, tmp_path):
    f = tmp_path / "p.csv"
    f.write_text("0.5,0.3,0.2\n")
    doc = _json_out(capsys, ["bound", "--dist", str(f), "--measure", "tsallis", "--order", "2"])
    assert doc["lower"] <= doc["value"] <= doc["upper"]


def test_bound_fix_norm(capsys):
    doc = _json_out(capsys, ["bound", "--dist", "0.5,0.3,0.2", "--measure", "alpha-norm",
                             "--order", "0.5", "--fix", "norm"])
    assert doc["lower"] <= doc["value"] <= doc["upper"]
    assert run(["bound", "--dist", "0.5,0.3,0.2", "--measure", "renyi",
                "--order", "2", "--fix", "norm"]) == EXIT_USAGE


def test_bits_divides_by_ln2(capsys):
    argv = ["bound", "--dist", "[0.5,0.3,0.2]", "--measure", "renyi", "--order", "2"]
    nats = _json_out(capsys, argv)
    bits = _json_out(capsys, argv + ["--bits"])
    assert bits["unit"] == "bits"
    assert bits["value"] == pytest.approx(nats["value"] / math.log(2), rel=1e-15)


def test_bits_rejected_for_norms(capsys):
    assert run(["bound", "--dist", "[0.5,0.5]", "--measure", "alpha-norm",
                "--order", "2", "--bits"]) == EXIT_USAGE


def test_order_one_rejected(capsys):
    code = run(["bound", "--dist", "[0.5,0.5]", "--measure", "alpha-norm", "--order", "1"])
    assert code == EXIT_USAGE
    assert "order 1 is excluded" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [],
    ["bound"],
    ["bound", "--dist", "[0.5,0.6]", "--measure", "alpha-norm", "--order", "2"],
    ["bound", "--dist", "[0.5,0.5]", "--measure", "nope", "--order", "2"],
    ["bound", "--dist", "[0.5,0.5]", "--measure", "alpha-norm", "--order", "-2"],
    ["region", "--n", "3", "--out", "x.csv"],
    ["channel", "--matrix", "/nonexistent.json", "--classify"],
])
def test_usage_errors_exit_one(capsys, argv):
    assert run(argv) == EXIT_USAGE
    assert capsys.readouterr().err


def test_region_writes_csv(capsys, tmp_path):
    out = tmp_path / "fig.csv"
    assert run(["region", "--n", "6", "--measure", "alpha-norm", "--order", "0.5",
                "--out", str(out)]) == EXIT_OK
    curves = load_csv(out)
    assert set(curves) == {"V", "W"}
    assert len(curves["V"]) == 512
    assert curves["W"][0] == (0.0, 1.0)


def test_region_json_and_mi_axis(tmp_path):
    out = tmp_path / "e0.json"
    assert run(["region", "--n", "4", "--x-axis", "mutual-information", "--rho", "1",
                "--out", str(out), "--json", "--resolution", "32"]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["curves"][0]["measure"] == "gallager-e0"


@pytest.fixture
def bsc(tmp_path):
    f = tmp_path / "bsc.json"
    f.write_text(json.dumps({"matrix": [[0.9, 0.1], [0.1, 0.9]]}))
    return str(f)


def test_channel_classify(capsys, bsc):
    doc = _json_out(capsys, ["channel", "--matrix", bsc, "--classify"])
    assert doc == {"dispersive": True, "focusing": True, "strongly_symmetric": True}


def test_channel_e0(capsys, bsc):
    doc = _json_out(capsys, ["channel", "--matrix", bsc, "--e0", "--rho", "1"])
    assert doc["e0"] == pytest.approx(math.log(2) - math.log(1 + 2 * math.sqrt(0.09)), abs=1e-15)


def test_channel_e0_bounds(capsys, bsc):
    doc = _json_out(capsys, ["channel", "--matrix", bsc, "--e0-bounds", "--rho", "0.5"])
    assert doc["lower"] - 1e-9 <= doc["value"] <= doc["upper"] + 1e-9
    assert run(["channel", "--matrix", bsc, "--e0-bounds"]) == EXIT_USAGE


def test_channel_modes_exclusive(capsys, bsc):
    assert run(["channel", "--matrix", bsc, "--classify", "--e0", "--rho", "1"]) == EXIT_USAGE


def test_verify_failure_exits_two(capsys):
    code = run(["verify", "--n", "3", "--samples", "50", "--tolerance", "-1"])
    out = capsys.readouterr().out
    assert code == EXIT_VERIFY
    assert out.rstrip().splitlines()[-1].startswith("FAIL")


def test_verify_json(capsys):
    doc = _json_out(capsys, ["verify", "--n", "2", "--samples", "50", "--json"])
    assert doc["ok"] and doc["total_violations"] == 0
    assert "bounds.binary_collapse" in [f["name"] for f in doc["families"]]


def test_verify_example_run(capsys):
    code = run(["verify", "--n", "5", "--samples", "100000", "--seed", "1"])
    out = capsys.readouterr().out
    assert code == EXIT_OK, out
    assert "PASS" in out


@pytest.mark.parametrize("argv", [
    ["bound", "--dist", "[0.5,0.3,0.2]", "--measure", "gamma", "--order", "2"],
    ["verify", "--n", "4", "--samples", "300", "--seed", "9"],
])
def test_stdout_is_byte_identical(capsysbinary, argv):
    outs = []
    for _ in range(2):
        run(argv)
        outs.append(capsysbinary.readouterr().out)
    assert outs[0] == outs[1] and outs[0]


def test_main_exits_with_code(monkeypatch):
    monkeypatch.setattr("sys.argv", ["entropy-extremes", "bound"])
    with pytest.raises(SystemExit) as exc:
        cli.main()
    assert exc.value.code == EXIT_USAGE
