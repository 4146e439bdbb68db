import csv
import io
import json
import subprocess
import sys

import pytest

from hardylab import __version__
from hardylab.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def run_json(capsys, *argv):
    status, out, err = run(capsys, *argv)
    assert status == 0, err
    return json.loads(out)


# -- norm ----------------------------------------------------------------------

def test_indicator_lorentz_2_2_equals_l2(capsys):
    lor = run_json(capsys, "norm", "--field", "indicator", "--norm", "lorentz", "--p", "2", "--q", "2")
    l2 = run_json(capsys, "norm", "--field", "indicator", "--norm", "l2")
    assert lor["result"]["norm_id"] == "lorentz(2,2)"
    assert lor["result"]["value"] == pytest.approx(l2["result"]["value"], abs=1e-10)


def test_h_field_hardy_norm_refinement(capsys):
    vals = [run_json(capsys, "norm", "--field", "h_field", "--t", "1", "--gamma", "1", "--norm", "hardy",
                     "--p", "1", "--grid", f"1,16,{N}")["result"]["value"] for N in (1024, 2048)]
    assert vals[1] == pytest.approx(vals[0], rel=0.05)


def test_hardy_p_zero_exits_2(capsys):
    status, out, err = run(capsys, "norm", "--norm", "hardy", "--p", "0")
    assert status == 2 and out == ""
    assert "Hardy exponent must be positive" in err


def test_every_number_carries_grid_and_seed(capsys):
    doc = run_json(capsys, "norm", "--field", "atom", "--norm", "hardy", "--p", "1", "--seed", "4")
    assert doc["result"]["grid"] == {"dim": 1, "L": 16.0, "N": 1024}
    assert doc["result"]["seed"] == 4 and doc["config"]["seed"] == 4
    assert set(doc) == {"command", "config", "result", "timing"}
    assert doc["timing"] is None


def test_lorentz_csv_profile(capsys):
    status, out, _ = run(capsys, "norm", "--field", "gaussian", "--norm", "lorentz", "--p", "2", "--q", "1",
                         "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert status == 0 and rows[0] == ["value", "cumulative_measure"]
    vals = [float(r[0]) for r in rows[1:]]
    assert vals == sorted(vals, reverse=True)


def test_csv_without_rows_is_rejected(capsys):
    status, _, err = run(capsys, "norm", "--norm", "l2", "--csv")
    assert status == 2 and "use --json" in err


# -- sharpness -----------------------------------------------------------------

def test_sharpness_case1_exit_0(capsys):
    doc = run_json(capsys, "sharpness", "--case", "1", "--n", "1", "--p", "1", "--s", "3/4", "--r", "1",
                   "--q", "1")
    assert doc["result"]["verdict"] == "multiplier-norm finite, operator lower bound divergent"


def test_sharpness_case2_exit_0(capsys):
    doc = run_json(capsys, "sharpness", "--case", "2", "--n", "1", "--p", "1", "--s", "0.75", "--q", "2")
    assert doc["result"]["chosen_gamma"] == pytest.approx(1.5)


def test_sharpness_case2_q_one_exits_2(capsys):
    status, _, err = run(capsys, "sharpness", "--case", "2", "--p", "1", "--s", "0.75", "--q", "1")
    assert status == 2 and "q > min(1,p)" in err


def test_sharpness_csv(capsys):
    status, out, _ = run(capsys, "sharpness", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert status == 0 and rows[0] == ["R", "lower_bound"] and len(rows) == 6


# -- determinism and configuration ---------------------------------------------

def test_byte_identical_output(capsys, tmp_path):
    argv = ["inequalities", "--lemma", "young", "--trials", "5", "--seed", "7"]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_timing_is_opt_in(capsys):
    doc = run_json(capsys, "norm", "--timing")
    assert isinstance(doc["timing"], float)


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"grid": {"dim": 1, "L": 8, "N": 512}, "seed": 3,
                               "params": {"field": "indicator", "norm": "lorentz", "p": 3, "q": 1}}))
    doc = run_json(capsys, "norm", "--config", str(cfg))
    assert doc["config"]["grid"] == [1, 8, 512] and doc["config"]["seed"] == 3
    assert doc["result"]["norm_id"] == "lorentz(3,1)"
    doc = run_json(capsys, "norm", "--config", str(cfg), "--p", "2", "--seed", "5")
    assert doc["result"]["norm_id"] == "lorentz(2,1)" and doc["result"]["seed"] == 5


def test_config_rejects_unknown_parameters(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"params": {"bogus": 1}}))
    status, _, err = run(capsys, "norm", "--config", str(cfg))
    assert status == 2 and "bogus" in err


def test_missing_config_exits_2(capsys, tmp_path):
    status, _, _ = run(capsys, "norm", "--config", str(tmp_path / "nope.json"))
    assert status == 2


# -- bessel, inequalities, hormander -------------------------------------------

def test_bessel_report_has_finite_constants(capsys):
    doc = run_json(capsys, "bessel", "--s", "2", "--grid", "1,32,16384")
    res = doc["result"]
    assert res["decay_ok"] is True
    for key in ("C_exp", "ratio_low", "ratio_high"):
        assert isinstance(res[key], float) and 0 < res[key] < 10


def test_inequalities_holder(capsys, tmp_path):
    ledger = tmp_path / "ledger.jsonl"
    doc = run_json(capsys, "inequalities", "--lemma", "holder", "--trials", "50", "--ledger", str(ledger))
    rep = doc["result"]["reports"][0]
    assert rep["lemma_id"] == "holder" and rep["pass"] and rep["worst_ratio"] <= 1 + 1e-6
    assert len(ledger.read_text().splitlines()) == 1


def test_inequalities_all(capsys):
    doc = run_json(capsys, "inequalities", "--lemma", "all", "--trials", "3")
    assert len(doc["result"]["reports"]) == 6


def test_inequalities_bad_exponent_exits_2(capsys):
    status, _, err = run(capsys, "inequalities", "--lemma", "hausdorff_young", "--p", "2")
    assert status == 2 and "2 < p" in err


@pytest.mark.slow
def test_hormander_argmax_in_unit_band(capsys):
    doc = run_json(capsys, "hormander")
    assert -2 <= doc["result"]["argmax_j"] <= 2
    assert doc["result"]["windowed"] is True


# -- entry point ---------------------------------------------------------------

def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hardylab", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and __version__ in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "hardylab", "norm", "--p", "-1", "--norm", "hardy"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
