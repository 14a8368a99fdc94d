"""The batch front-end: exit codes, determinism, report shape."""

import json

from gammaspace import jsonio
from gammaspace.cli import main
from gammaspace.corpus import z2_monoid_space
from gammaspace.gspace import gamma_rep
from gammaspace.nerve import nerve
from gammaspace.catcore import walking_iso_category


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_factorize(capsys):
    code, report = run_cli(capsys, "factorize", "--src", "3", "--dst", "2",
                           "--map", "0,1,2")
    assert code == 0
    assert report["outputs"]["support"] == [2, 3]
    assert report["outputs"]["inert"]["map"] == [0, 1, 2]
    assert report["outputs"]["active"]["map"] == [1, 2]
    assert report["verdicts"][0]["tag"] == "factorization-unique"


def test_segal_check_fails_with_exit_one(tmp_path, capsys):
    x = gamma_rep(1).tabulate(2)
    p = tmp_path / "x.json"
    p.write_text(jsonio.canonical_dumps(jsonio.tabulated_to_json(x)))
    code, report = run_cli(capsys, "segal-check", str(p), "--k", "1", "--l", "1",
                           "--tier", "iso")
    assert code == 1
    verdict = report["verdicts"][0]
    assert verdict["status"] == "fails"
    assert verdict["witness"]["source"] == [3]
    assert verdict["witness"]["target"] == [4]


def test_segal_check_monoid_passes(tmp_path, capsys):
    x = z2_monoid_space(2)
    p = tmp_path / "m.json"
    p.write_text(jsonio.canonical_dumps(jsonio.tabulated_to_json(x)))
    code, report = run_cli(capsys, "segal-check", str(p), "--k", "1", "--l", "1")
    assert code == 0


def test_tau1_command(tmp_path, capsys):
    p = tmp_path / "j.json"
    p.write_text(jsonio.canonical_dumps(
        jsonio.simpset_to_json(nerve(walking_iso_category(), bound=2))))
    code, report = run_cli(capsys, "tau1", str(p))
    assert code == 0
    assert len(report["outputs"]["category"]["objects"]) == 2


def test_input_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{\"nonsense\": true}")
    code, report = run_cli(capsys, "tau1", str(p))
    assert code == 3


def test_determinism(tmp_path, capsys):
    x = z2_monoid_space(2)
    p = tmp_path / "m.json"
    p.write_text(jsonio.canonical_dumps(jsonio.tabulated_to_json(x)))
    code1 = main(["segal-check", str(p), "--k", "1", "--l", "1"])
    out1 = capsys.readouterr().out
    code2 = main(["segal-check", str(p), "--k", "1", "--l", "1"])
    out2 = capsys.readouterr().out
    assert code1 == code2
    blob1 = json.loads(out1)
    blob2 = json.loads(out2)
    blob1.pop("seconds"), blob2.pop("seconds")
    assert blob1 == blob2


def test_semiadd_probe_command(tmp_path, capsys):
    p = tmp_path / "rep1.json"
    p.write_text(jsonio.canonical_dumps(jsonio.presented_to_json(gamma_rep(1))))
    code, report = run_cli(capsys, "semiadd-probe", str(p), "--level-bound", "2")
    assert code == 0
    assert report["outputs"]["report"]["levels"]["2"]["convolved_points"] == [9]


def test_check_suite_filtered(capsys):
    code, report = run_cli(capsys, "check-suite", "--only",
                           "factorization-unique,segal-condition")
    assert code == 0
    tags = {v["tag"] for v in report["verdicts"]}
    assert tags == {"factorization-unique", "segal-condition"}
