import json
import subprocess
import sys
from importlib import resources

import pytest

from tanerve.cli import main

DATA = resources.files("tanerve") / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_check_passes(capsys):
    code, doc, _ = run(capsys, "check", DATA / "a2simplex.json")
    assert code == 0 and doc["passed"] and doc["kind"] == "category"
    assert doc["schema_version"] == 1 and doc["tool"] == "tanerve"


def test_check_nonassociative(capsys):
    code, doc, _ = run(capsys, "check", DATA / "nonassoc.json")
    assert code == 1
    rel = doc["reports"][0]
    assert {f["k"] for f in rel["failures"]} == {3}


def test_check_functor(capsys):
    code, doc, _ = run(capsys, "check", DATA / "theta.json")
    assert code == 0 and doc["kind"] == "functor"


def test_check_other_field(capsys):
    assert run(capsys, "check", DATA / "m3.json", "--field", "Fp:5")[0] == 0
    code, doc, err = run(capsys, "check", DATA / "m3.json", "--field", "Fp:4")
    assert code == 2 and "not prime" in err and doc["passed"] is False


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"objects": [0,')
    code, doc, err = run(capsys, "check", bad)
    assert code == 2 and "line 1" in err and "error" in doc


def test_missing_file(capsys):
    assert run(capsys, "check", "/nonexistent.json")[0] == 2


@pytest.mark.parametrize("extra,dim", [([], 3), (["--labels", "0,1,2"], 1)])
def test_nerve(capsys, extra, dim):
    code, doc, _ = run(capsys, "nerve", DATA / "a2simplex.json", "--beads", "2", "--from", 0, "--to", 2, *extra)
    assert code == 0 and doc["dimension"] == dim and doc["residual_check"]["passed"]


def test_nerve_point(capsys):
    code, doc, _ = run(capsys, "nerve", DATA / "a2simplex.json", "--beads", "", "--from", 1, "--to", 1)
    assert code == 0 and doc["dimension"] == 1


@pytest.mark.parametrize(
    "args",
    [
        ["--beads", "2", "--from", "0", "--to", "9"],
        ["--beads", "x", "--from", "0", "--to", "2"],
        ["--beads", "2", "--from", "0"],
        ["--beads", "2", "--from", "0", "--to", "2", "--labels", "0,2"],
    ],
)
def test_nerve_input_errors(capsys, args):
    assert run(capsys, "nerve", DATA / "a2simplex.json", *args)[0] == 2


def test_horn_file(capsys):
    code, doc, _ = run(capsys, "horn", DATA / "a2simplex.json", DATA / "horn_a2.json")
    assert code == 0 and doc["verification"]["passed"]
    comps = {tuple(c["map"]["values"]): c["terms"] for c in doc["filler"]["components"]}
    assert comps[(0, 2)] == [[["(0,2)"], "1"]]


def test_horn_generated(capsys):
    code, doc, _ = run(capsys, "horn", DATA / "m3.json", "--n", 3, "--j", 1, "--from", 0, "--to", 3)
    assert code == 0 and doc["passed"]


@pytest.mark.parametrize("args", [["--n", "2", "--j", "2"], [], ["--n", "3"]])
def test_horn_input_errors(capsys, args):
    assert run(capsys, "horn", DATA / "a2simplex.json", *args)[0] == 2


def test_simplex(tmp_path, capsys):
    good = {"objects": [0, 1, 2], "cells": [
        {"sequence": [0, 1], "terms": [["(0,1)", "1"]]},
        {"sequence": [1, 2], "terms": [["(1,2)", "1"]]},
        {"sequence": [0, 2], "terms": [["(0,2)", "1"]]},
    ]}
    path = tmp_path / "s.json"
    path.write_text(json.dumps(good))
    code, doc, _ = run(capsys, "simplex", DATA / "a2simplex.json", path)
    assert code == 0 and doc["tan_member"] and doc["agree"]
    good["cells"][2]["terms"] = [["(0,2)", "2"]]
    path.write_text(json.dumps(good))
    code, doc, _ = run(capsys, "simplex", DATA / "a2simplex.json", path)
    assert code == 1 and doc["agree"] and not doc["tan_member"]


def test_out_and_determinism(tmp_path, capsys):
    out = tmp_path / "r.json"
    args = ["nerve", DATA / "h3.json", "--beads", "2,1", "--from", 0, "--to", 3]
    assert run(capsys, *args, "--out", out)[0] == 0
    first = out.read_text()
    assert run(capsys, *args, "--out", out)[0] == 0
    assert out.read_text() == first and json.loads(first)["dimension"] > 0


def test_selftest_subset(capsys):
    code, doc, err = run(capsys, "selftest", "--only", "necklace,ainfty")
    assert code == 0 and [r["check"] for r in doc["reports"]] == ["necklace-calculus", "ainfty-checkers"]
    assert "finished" in err


def test_selftest_unknown_suite(capsys):
    assert run(capsys, "selftest", "--only", "nope")[0] == 2


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["check", str(DATA / "m3.json"), "--kmax", "0"]) == 2
    assert main(["--version"]) == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tanerve", "check", str(DATA / "a2simplex.json")], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"]
