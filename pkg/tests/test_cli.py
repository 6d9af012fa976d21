import csv
import io
import json

import pytest

from maassperiods.cli import main
from maassperiods.config import Settings
from maassperiods.verify import EXPECTED_FAILURES, run_suite


def test_run_suite_branch_deterministic():
    a = run_suite("branch", seed=0)
    b = run_suite("branch", seed=0)
    assert a.passed and b.passed
    assert [e.max_residual for e in a.entries] == [e.max_residual for e in b.entries]


def test_run_suite_entries_have_contract_fields():
    report = run_suite("group", seed=0)
    payload = report.to_json()
    assert payload["pass"] is True
    for entry in payload["entries"]:
        assert set(entry) >= {"identity", "statement", "samples", "max_residual", "tolerance", "passed"}
    # report assembly is order-stable
    ids = [e["identity"] for e in payload["entries"]]
    assert ids == sorted(ids)


def test_cli_verify_multiplier(capsys):
    code = main(["verify", "--suite", "multiplier", "--weight", "1/2", "--seed", "1"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["suite"] == "multiplier"
    idents = {e["identity"] for e in payload["entries"]}
    assert "multiplier.consistency[k=1/2]" in idents
    assert "multiplier.minus-one[k=1/2]" in idents
    assert "multiplier.s-squared[k=1/2]" in idents


def test_cli_verify_kernel_exit_zero(capsys):
    assert main(["verify", "--suite", "kernel"]) == 0
    json.loads(capsys.readouterr().out)


def test_cli_period_poly(capsys, tmp_path):
    out_path = tmp_path / "poly.csv"
    code = main(["--out", str(out_path), "period-poly", "--form", "delta", "--samples", "11"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out_path.read_text())))
    assert rows[0] == ["zeta", "re_p", "im_p"]
    data_rows = [r for r in rows[1:] if r and r[0] != "degree"]
    # 11 sample rows then the fitted coefficient block
    assert len([r for r in data_rows if len(r) == 3 and "." in r[0]]) == 11
    assert any(r and r[0] == "degree" for r in rows)
    degree_rows = [r for r in rows if len(r) == 3 and r[0].isdigit()]
    assert len(degree_rows) == 11  # coefficients of degree 0..10


def test_cli_period_function(capsys):
    code = main(
        ["period-function", "--weight", "1/2", "--nu", "0.35i", "--grid", "0.5:1.5:3"]
    )
    out = capsys.readouterr().out
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["re_zeta", "im_zeta", "re_P", "im_P", "abs_error"]
    assert len(rows) == 4


def test_cli_table_growth(capsys):
    code = main(["table", "--what", "growth", "--weight", "1/2", "--nu", "0.35i"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert payload["slope_at_infinity"] <= -0.85


def test_cli_config_file(capsys, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"quad_tol": 1e-9, "q_terms": 30}))
    code = main(["--config", str(config), "verify", "--suite", "branch"])
    assert code == 0
    capsys.readouterr()


def test_cli_bad_config_exits_2(capsys, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"nonsense": 1}))
    assert main(["--config", str(config), "verify", "--suite", "branch"]) == 2
    assert main(["--config", str(tmp_path / "missing.json"), "verify", "--suite", "branch"]) == 2


def test_cli_unknown_suite_exits_2():
    assert main(["verify", "--suite", "nonsense"]) == 2


def test_cli_bad_weight_exits_2(capsys):
    assert main(["period-function", "--weight", "1/3", "--nu", "0.3i"]) == 2


def test_settings_roundtrip(tmp_path):
    s = Settings(quad_tol=1e-9, seed=7)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(s.to_json()))
    back = Settings.from_json(path)
    assert back.quad_tol == 1e-9 and back.seed == 7


def test_expected_failures_documented():
    assert "periods.compatibility-surrogate" in EXPECTED_FAILURES
