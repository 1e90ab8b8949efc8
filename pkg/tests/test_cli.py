import contextlib
import io
import json
import pathlib
import subprocess
import sys

import pytest

from hecke0.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"
MANIFEST = json.loads((GOLDEN / "manifest.json").read_text())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_golden(name):
    code, out, _ = run(*MANIFEST[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_deterministic_in_fresh_processes():
    argv = ["classes", "--datum", "C2", "--max-len", "4", "--format", "json"]
    cmd = [sys.executable, "-m", "hecke0.cli", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True, env={"PYTHONHASHSEED": "123", "PATH": ""}).stdout
    assert a == b and a


def test_json_matches_tsv():
    _, tsv, _ = run("module", "chartable", "--datum", "A2-sc", "--max-len", "3")
    _, js, _ = run("module", "chartable", "--datum", "A2-sc", "--max-len", "3", "--format", "json")
    data = json.loads(js)
    lines = [l.split("\t") for l in tsv.splitlines()]
    assert lines[0][1:] == data["classes"]
    assert [[r["module"]] + r["traces"] for r in data["rows"]] == lines[1:]


def test_rationals_printed_as_fractions():
    code, out, _ = run("module", "chartable", "--datum", "A1-sc", "--max-len", "3", "--J", "", "--chi", "1/2")
    assert code == 0
    row = out.splitlines()[1].split("\t")
    assert "1/2" in row and all("." not in c for c in row[1:])


@pytest.mark.parametrize(
    "argv",
    [
        ["classes", "--datum", "nope"],
        ["classes", "--max-len", "-1"],
        ["classes", "--element", "s9"],
        ["hecke", "mul", "s1", "--format", "dot"],
        ["hecke", "pow", "s1"],
        ["module", "build", "--J", "s7"],
        ["module", "build", "--J", "F0", "--Gamma", "{s0,s1,s2}"],
        ["module", "build", "--J", "F0", "--chi", "2"],
        ["module", "decompose", "--input", "/nonexistent.json"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    code, _, _ = run(*argv)
    assert code == 2


def test_verification_failure_exits_1(tmp_path):
    bad = tmp_path / "target.json"
    bad.write_text(json.dumps({"e": "1/2"}))
    code, out, _ = run("module", "decompose", "--datum", "A1-sc", "--input", str(bad))
    assert code == 1 and "failed" in out


def test_decompose_roundtrip(tmp_path):
    _, js, _ = run("module", "chartable", "--datum", "A1-sc", "--max-len", "6", "--format", "json",
                   "--J", "F0", "--Gamma", "{s1}")
    data = json.loads(js)
    target = dict(zip(data["classes"], data["rows"][0]["traces"]))
    f = tmp_path / "t.json"
    f.write_text(json.dumps(target))
    code, out, _ = run("module", "decompose", "--datum", "A1-sc", "--max-len", "6", "--input", str(f), "--format", "json")
    assert code == 0
    res = json.loads(out)
    assert res["ok"] and list(res["coefficients"].values()) == [1]


def test_hecke_and_cocenter_commands():
    code, out, _ = run("hecke", "mul", "s1", "s1", "--datum", "A2-ad")
    assert code == 0 and out.splitlines()[1].split("\t")[-1] == "-1"
    code, out, _ = run("hecke", "mul", "s1", "s1", "--datum", "A2-ad", "--mode", "generic")
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = run("cocenter", "project", "s1", "s1", "--datum", "A2-ad")
    assert code == 0 and out.splitlines()[1].split("\t")[-1] == "-1"
    code, out, _ = run("cocenter", "check", "--datum", "A1-sc", "--max-len", "4")
    assert code == 0 and "violations\t0" in out


def test_sstest_and_verify():
    code, out, _ = run("module", "sstest", "--datum", "A1-ad", "--J", "F0", "--Gamma", "{s1}", "--format", "json")
    res = json.loads(out)
    assert code == 0 and res["agree"] and res["nssTrace"] and res["rigid"]
    code, out, _ = run("verify", "--only", "lengths,sigma", "--datum", "A1-sc", "--max-len", "3")
    assert code == 0 and out.count("PASS") == 2


def test_out_file(tmp_path):
    f = tmp_path / "o.tsv"
    code, out, _ = run("data", "--out", str(f))
    assert code == 0 and out == "" and "A2-ad" in f.read_text().split()


def test_identity_class_listed():
    _, out, _ = run("classes", "--datum", "A1-sc", "--max-len", "2")
    rows = [l.split("\t") for l in out.splitlines()]
    row = next(r for r in rows if r[0] == "e")
    assert row[2] == "[0]" and row[4] == "true"


def test_rigid_rows_vanish_on_non_rigid_columns():
    _, js, _ = run("classes", "--datum", "C2", "--max-len", "5", "--format", "json")
    rigid = [c["rigid"] for c in json.loads(js)["classes"]]
    _, js, _ = run("tracetable", "--datum", "C2", "--max-len", "5", "--format", "json", "--J", "F0", "--Gamma", "{s1}")
    data = json.loads(js)
    assert len(data["rows"]) == 1
    traces = data["rows"][0]["traces"]
    assert any(t != "0" for t in traces)
    assert all(t == "0" for t, r in zip(traces, rigid) if not r)
