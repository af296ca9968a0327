import json

import pytest

from dworkbench.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weights_build_v_json(capsys):
    code, out, _ = run(capsys, "weights", "build-v", "--n", "4", "--N", "9", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["v"] == [0, 0, 0, 0, 0, 2, 3, 5, 8]
    assert obj["rank"] == 4


def test_weights_hyper_data_schema(capsys):
    code, out, _ = run(capsys, "weights", "hyper-data", "--n", "2", "--N", "7")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"v", "s_chi", "s_rho", "rank"}
    assert obj["s_chi"] == [1, 6] and obj["s_rho"] == [0, 0]


def test_char_gauss_json_weight(capsys):
    code, out, _ = run(capsys, "char", "gauss", "--q", "29", "--chi-order", "7", "--chi-exp", "1", "--json")
    assert code == 0
    obj = json.loads(out)
    re, im = obj["embedding"]
    assert abs((re * re + im * im) - 29) < 1e-6


def test_char_gauss_rejects_bad_order(capsys):
    code, _, err = run(capsys, "char", "gauss", "--q", "29", "--chi-order", "5")
    assert code == 2
    assert "config error" in err


def test_hyper_trace_rows(capsys):
    code, out, _ = run(capsys, "hyper", "trace", "--q", "29", "--n", "2", "--N", "7",
                       "--method", "conv", "--t", "2", "--json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 1
    assert set(rows[0]) == {"t", "value", "abs2"}


def test_hyper_trace_mellin_base_only(capsys):
    code, _, err = run(capsys, "hyper", "trace", "--q", "29", "--n", "2", "--N", "7",
                       "--method", "mellin", "--E", "2")
    assert code == 2


def test_dwork_trace_single_point(capsys):
    code, out, _ = run(capsys, "dwork", "trace", "--N", "7", "--n", "2", "--q", "29",
                       "--t", "2", "--json")
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["t"] == 2
    assert "torus" in rows[0]["strata"]


def test_dwork_trace_bad_t(capsys):
    code, _, err = run(capsys, "dwork", "trace", "--N", "7", "--n", "2", "--q", "29", "--t", "0")
    assert code == 2
    assert "BadT" in err


def test_dwork_count(capsys):
    code, out, _ = run(capsys, "dwork", "count", "--N", "3", "--q", "7", "--t", "3", "--ext", "1")
    assert code == 0
    assert out.strip() == "9"


def test_signs_check(capsys):
    code, out, _ = run(capsys, "signs", "check", "--l", "5", "--dim", "2", "--seed", "0",
                       "--count", "10", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["pass"] is True


def test_signs_dim_guard(capsys):
    code, _, _ = run(capsys, "signs", "check", "--l", "5", "--dim", "3")
    assert code == 2


def test_verify_det_hcan(capsys):
    code, out, _ = run(capsys, "verify", "det-hcan", "--q", "29", "--n", "2", "--N", "7")
    assert code == 0
    assert "exponent=half" in out


def test_verify_n3_writes_report(capsys, tmp_path):
    out_path = tmp_path / "n3.json"
    code, out, _ = run(capsys, "verify", "n3", "--q", "7", "--json", str(out_path))
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["check"] == "n3" and payload["pass"] is True


def test_verify_katz_writes_report(capsys, tmp_path):
    out_path = tmp_path / "katz.json"
    code, out, _ = run(capsys, "verify", "katz", "--n", "2", "--N", "7", "--q", "29",
                       "--json", str(out_path))
    assert code == 0
    assert "PASS" in out
    payload = json.loads(out_path.read_text())
    assert payload["adjudications"]["orientation"] == "direct"


def test_verify_all_campaign(capsys, tmp_path):
    cfg = tmp_path / "c.txt"
    cfg.write_text("checks = build-v, signs\n")
    code, out, _ = run(capsys, "verify", "all", "--config", str(cfg))
    assert code == 0
    assert "campaign: PASS" in out


def test_verify_all_missing_config(capsys):
    code, _, err = run(capsys, "verify", "all", "--config", "/nonexistent/camp.txt")
    assert code == 2


def test_verify_all_bad_config(capsys, tmp_path):
    cfg = tmp_path / "c.txt"
    cfg.write_text("junk = here\n")
    code, _, err = run(capsys, "verify", "all", "--config", str(cfg))
    assert code == 2
    assert "config error" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as ei:
        main(["hyper", "nonsense"])
    assert ei.value.code == 2
