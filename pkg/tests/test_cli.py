import json

import pytest

from cli_examples import EXAMPLES
from tbtop.cli import main, run


@pytest.mark.parametrize("argv, code", EXAMPLES, ids=[" ".join(a[:2]) for a, _ in EXAMPLES])
def test_documented_exit_codes(argv, code):
    got, report = run(argv)
    assert got == code
    if code == 1:
        assert "error" in report


def outputs(argv):
    code, report = run(argv)
    assert code == 0, report
    return report["outputs"]


def test_certify_thm52_report():
    out = outputs(EXAMPLES[3][0])
    cert = out["certificate"]
    assert cert["verdict"] == "certified" and cert["theorem"] == "T52"
    assert [v["n"] for v in cert["values"]] == [3, 4, 5, 6, 7]
    assert all(isinstance(v["value"], str) and isinstance(v["bound"], str) for v in cert["values"])


def test_separate_report():
    out = outputs(EXAMPLES[9][0])
    assert out["character"]["index_set"] == {"kind": "finite", "members": [5]}
    assert out["values"] == ["1/2", "0/1"]


def test_snf_report():
    out = outputs(["snf", "--matrix", "[[2,4],[6,8]]"])
    assert out["D"] == [["2", "0"], ["0", "4"]]
    assert set(out) >= {"U", "V"}


def test_eval_value():
    assert outputs(EXAMPLES[0][0])["value"] == "3/4"
    assert outputs(EXAMPLES[2][0])["value"] == "1/3"


def test_thm51_finite_report():
    cert = outputs(EXAMPLES[4][0])["certificate"]
    values = [v["value"] for v in cert["values"]]
    assert values[:3] == ["1/2", "1/2", "0/1"]


def test_diagnostic_names_field(capsys):
    code = main(["snf", "--matrix", "[[1,2],[3", "--json"])
    assert code == 1
    report = json.loads(capsys.readouterr().out)
    assert report["field"] == "matrix"
    code, report = run(["eval", "--p", "2", "--index-set", "fac", "--x", "1/3"])
    assert code == 1 and report["field"] == "x"


def test_argparse_errors_exit_one():
    assert run(["certify", "--theorem", "9.9"])[0] == 1
    assert run(["bogus"])[0] == 1


def test_table_output(capsys):
    assert main(["certify", "--theorem", "5.2", "--p", "2", "--digits", "const:1",
                 "--index-set", "fac:all", "--n-max", "5"]) == 0
    text = capsys.readouterr().out
    assert "verdict=certified" in text


def test_report_has_no_wallclock():
    _, a = run(EXAMPLES[15][0])
    assert set(a) == {"tool", "version", "command", "argv", "outputs", "exit_code"}
