import io
import json
import contextlib

import pytest

from holdersharp.cli import main


def run_cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = main(argv)
    return rc, buf.getvalue()


def test_constants_p4():
    rc, out = run_cli(["constants", "--p", "4", "--r", "4"])
    assert rc == 0
    rep = json.loads(out)
    assert rep["schema"] == "holder-sharp/1"
    assert rep["c_star"]["value"] == pytest.approx(1 / 3, abs=1e-12)
    assert rep["d_star"]["value"] == pytest.approx(1 / 9, abs=1e-12)
    assert rep["residuals"]["R0"] <= 1e-12


def test_constants_small_theta():
    rc, out = run_cli(["constants", "--theta", "1.5", "--r", "2"])
    assert rc == 0
    rep = json.loads(out)
    assert rep["d_star"]["value"] == 1.0
    assert rep["c_star"]["value"] == pytest.approx(0.5, abs=1e-12)


def test_constants_degenerate_regime():
    rc, out = run_cli(["constants", "--p", "3", "--r", "1.5"])
    assert rc == 0
    rep = json.loads(out)
    assert rep["c_star"]["value"] == 0.0
    assert rep["d_star"]["value"] == 0.0


def test_constants_invalid_regime_exit_code():
    rc, _ = run_cli(["constants", "--theta", "0.8", "--r", "2"])
    assert rc == 2


def test_constants_partially_resolved():
    rc, out = run_cli(["constants", "--theta", "1.5", "--r", "2.5"])
    assert rc == 0
    rep = json.loads(out)
    assert rep["c_star"] is None
    assert rep["d_star"]["value"] == 1.0


def test_bellman_commands():
    rc, out = run_cli(["bellman", "c+", "--x", "0", "0", "1", "1", "--p", "3"])
    assert rc == 0
    assert json.loads(out)["value"] == pytest.approx(1.0, abs=1e-12)
    rc, out = run_cli(["bellman", "c+", "--x", "2", "3", "8", str(3.0 ** 1.5), "--p", "3"])
    assert rc == 0
    assert json.loads(out)["value"] == pytest.approx(6.0, abs=1e-12)
    rc, out = run_cli(["bellman", "d+", "--x", "0", "0", "1", "0", "--p", "3"])
    assert rc == 0
    assert json.loads(out)["value"] == pytest.approx(1.0, abs=1e-12)


def test_bellman_domain_error_exit_code():
    rc, _ = run_cli(["bellman", "c+", "--x", "2", "0", "1", "1", "--p", "3"])
    assert rc == 3


def test_bellman_oracle_flag():
    rc, out = run_cli(
        ["bellman", "c+", "--x", "0.2", "0.1", "1", "1", "--p", "3", "--oracle", "--samples", "200"]
    )
    assert rc == 0
    rep = json.loads(out)
    assert rep["oracle"] <= rep["value"] + 1e-9


def test_foliation_dataset(tmp_path):
    out_path = tmp_path / "fol.csv"
    rc, _ = run_cli(
        ["foliation", "--p", "3", "--grid", "21", "--chords", "5", "--out", str(out_path)]
    )
    assert rc == 0
    text = out_path.read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "kind,R,tau,y1,y2"
    rows = [ln.split(",") for ln in lines[1:]]
    assert all(-1 - 1e-12 <= float(r[3]) <= 1 + 1e-12 for r in rows)
    assert all(-1 - 1e-12 <= float(r[4]) <= 1 + 1e-12 for r in rows)
    first_minus = next(r for r in rows if r[0] == "eta_minus" and float(r[2]) == 0.0)
    assert float(first_minus[3]) == 1.0
    diag = [r for r in rows if r[0] == "chord" and float(r[1]) == 1.0]
    assert diag and all(abs(float(r[3]) - float(r[4])) < 1e-12 for r in diag)


def test_verify_campaign_and_exit_codes():
    rc, out = run_cli(
        ["verify", "hold3", "--p", "3", "--r", "3", "--samples", "300", "--seed", "7"]
    )
    assert rc == 0
    rep = json.loads(out)
    assert rep["violations"] == 0
    assert rep["min_slack"] >= -1e-10
    rc, out = run_cli(
        ["verify", "hold3", "--p", "3", "--r", "3", "--c", "0.60", "--samples", "100", "--seed", "7"]
    )
    assert rc == 1
    assert json.loads(out)["violations"] >= 1


def test_verify_hold4_resolved():
    rc, out = run_cli(
        ["verify", "hold4", "--theta", "1.5", "--r", "2", "--d", "1", "--samples", "300",
         "--seed", "5"]
    )
    assert rc == 0
    assert json.loads(out)["violations"] == 0


def test_verify_determinism():
    args = ["verify", "hold3", "--p", "3", "--r", "3", "--samples", "250", "--seed", "42"]
    rc1, out1 = run_cli(args)
    rc2, out2 = run_cli(args)
    assert rc1 == rc2 == 0
    assert out1 == out2
