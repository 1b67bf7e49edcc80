import json

import pytest

from actionuncertainty import cli
from actionuncertainty.errors import ParseError, Violation
from actionuncertainty.io import DATA_DIR, emit_report, load_function, render

FUNCS = DATA_DIR / "functions"
BUNDLE = DATA_DIR / "bundles" / "S3_Qzeta3.json"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_worked_example(capsys):
    code, out, _ = run(capsys, "analyze", "--function", str(FUNCS / "worked_s3.json"))
    assert code == 0
    rep = json.loads(out)
    assert (rep["lhs"], rep["rhs_sharp"], rep["rhs_classical"]) == (4, 4, 3)
    assert rep["greedy"]["t"] == 2


def test_analyze_csv(capsys):
    code, out, _ = run(capsys, "analyze", "--function", str(FUNCS / "worked_s3.json"), "--format", "csv")
    assert code == 0
    header, row = out.splitlines()[:2]
    assert "lhs" in header.split(",") and row


def test_zero_function_is_input_error(capsys):
    code, _, err = run(capsys, "analyze", "--function", str(FUNCS / "zero.json"))
    assert code == 2 and "ZeroFunction" in err


def test_missing_file_is_input_error(capsys, tmp_path):
    code, _, _ = run(capsys, "analyze", "--function", str(tmp_path / "nope.json"))
    assert code == 2


def test_malformed_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_function(p)
    assert run(capsys, "analyze", "--function", str(p))[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["analyze"])
    assert exc.value.code == 1


def test_violation_exit_code(capsys, monkeypatch):
    def boom(args):
        raise Violation("forced")

    monkeypatch.setitem(cli.COMMANDS, "analyze", boom)
    code, _, err = run(capsys, "analyze", "--function", str(FUNCS / "worked_s3.json"))
    assert code == 3 and "forced" in err


def test_chebotarev_command(capsys):
    code, out, _ = run(capsys, "chebotarev", "--p", "5", "--samples", "5")
    assert code == 0
    assert json.loads(out)["minors_checked"] == 251
    assert run(capsys, "chebotarev", "--p", "4")[0] == 2


def test_fourier_command(capsys):
    code, out, _ = run(capsys, "fourier", "--function", str(FUNCS / "worked_s3.json"), "--bundle", str(BUNDLE))
    assert code == 0
    rep = json.loads(out)
    assert rep["rank_support"] == rep["dim"] == 2
    assert rep["multiplicities"] == [1, 0, 1]


def test_make_witness_round_trip(capsys, tmp_path):
    out_path = tmp_path / "w.json"
    code, _, _ = run(capsys, "make-witness", "--group", "Z6", "--subgroup", "0,3", "--gamma", "1",
                     "--field", "GF(7)", "--c", "2", "--out", str(out_path))
    assert code == 0
    f = load_function(out_path)
    assert [int(v.payload) for v in f.values] == [0, 2, 0, 0, 2, 0]
    code, out, _ = run(capsys, "analyze", "--function", str(out_path))
    rep = json.loads(out)
    assert code == 0 and rep["classical_equality"]
    assert rep["classification"] is not None


def test_make_witness_rejects_non_subgroup(capsys):
    assert run(capsys, "make-witness", "--group", "Z6", "--subgroup", "0,1", "--field", "GF(7)")[0] == 2


def test_sweep_command_writes_outputs(capsys, tmp_path):
    cfg = {"groups": [str(DATA_DIR / "groups" / "S3.json")], "fields": ["GF(2)"],
           "outputs": {"json": "ledger.json", "csv": "ledger.csv"}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "sweep", "--config", str(path))
    assert code == 0
    assert (tmp_path / "ledger.json").read_text() == out
    assert (tmp_path / "ledger.csv").read_text().startswith("group,action,field")


def test_sweep_cap_exceeded(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"groups": [str(DATA_DIR / "groups" / "Z2.json")], "fields": ["GF(2)"],
                                "max_order": 20}))
    assert run(capsys, "sweep", "--config", str(path))[0] == 2


def test_reports_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert cli.main(["verify", "--suite", "chebotarev", "--seed", "4", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_emit_report_sorts_keys(tmp_path):
    text = emit_report({"b": 1, "a": {"d": 2, "c": 3}}, "json", tmp_path / "r.json")
    assert text.index('"a"') < text.index('"b"') and text.index('"c"') < text.index('"d"')
    assert (tmp_path / "r.json").read_text() == text
    assert render({"a": 1}, "json") == render({"a": 1}, "json")
