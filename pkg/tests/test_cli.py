import json
from pathlib import Path

import jsonschema
import pytest
from click.testing import CliRunner

from cmpairs.cli import main

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "src" / "cmpairs" / "corpus"
SCHEMA = json.loads((ROOT / "docs" / "schema.json").read_text())


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.setenv("CMPAIRS_CACHE", str(tmp_path / "cache"))
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, list(args), catch_exceptions=False)
    return go


def test_cm_pair_example_18(run):
    r = run("cm-pair", "-f", str(CORPUS / "ex18.cm"), "--pair", "P")
    assert r.exit_code == 0
    assert r.output.strip() == "No: depth=0, cd=Infinite(period 2)"


def test_depth_both_routes(run):
    r = run("depth", "-f", str(CORPUS / "poly.cm"), "--ideal", "m", "--module", "H")
    assert r.output.strip() == "grade = 1 (ext: 1, koszul: 1)"


def test_json_validates(run, tmp_path):
    out = tmp_path / "r.json"
    r = run("cd", "-f", str(CORPUS / "poly.cm"), "--pair", "A", "--json", str(out))
    assert "cd = 2" in r.output and "agree" in r.output
    data = json.loads(out.read_text())
    jsonschema.validate(data, SCHEMA)
    assert data["caps"]["box_pad"] == 2


def test_caps_recorded(run, tmp_path):
    out = tmp_path / "r.json"
    run("cm-pair", "-f", str(CORPUS / "ex18.cm"), "--pair", "Q", "--caps", "resolution=7",
        "--json", str(out))
    data = json.loads(out.read_text())
    assert data["caps"]["resolution"] == 7


def test_cache_transparency(run, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("cd", "-f", str(CORPUS / "ex18.cm"), "--pair", "P", "--json", str(a))
    run("cd", "-f", str(CORPUS / "ex18.cm"), "--pair", "P", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert any((tmp_path / "cache").rglob("*.json"))


@pytest.mark.parametrize("args,expected", [
    (("cci", "--ideal", "I"), "No"),
    (("huneke", "--pair", "P"), "c=0, Ass = {(x)}"),
    (("ext", "-i", "2", "--module", "M", "--target", "N"), "Ext^2: 1 generators"),
    (("glc", "--pair", "Q", "-i", "0"), "stabilized"),
])
def test_verbs_on_example_18(run, args, expected):
    r = run(args[0], "-f", str(CORPUS / "ex18.cm"), *args[1:])
    assert r.exit_code == 0
    assert expected in r.output


@pytest.mark.parametrize("module,expected", [("F", "Free"), ("Mx", "NotFree"), ("H", "NotFree")])
def test_ar_verb(run, module, expected):
    r = run("ar", "-f", str(CORPUS / "ar.cm"), "--module", module)
    assert r.output.strip() == expected


def test_ass_verb(run):
    r = run("ass", "-f", str(CORPUS / "ar.cm"), "--module", "D")
    assert r.output.strip() == "{(x), (x, y)}"


def test_lc_verb(run):
    r = run("lc", "-f", str(CORPUS / "poly.cm"), "--ideal", "m", "--module", "F", "-i", "2")
    assert "H^2[-1, -1] = 1" in r.output


def test_verify_exit_codes(run, tmp_path):
    ok = run("verify", "-f", str(CORPUS / "ex18.cm"), "--all")
    assert ok.exit_code == 0
    bad = tmp_path / "bad.cm"
    bad.write_text((CORPUS / "ex18.cm").read_text() + "expect P.depth = 5 [derived];\n")
    r = run("verify", "-f", str(bad), "--property", "chain")
    assert r.exit_code == 2
    assert "FAIL bad:P expect:depth" in r.output


def test_verify_sample_is_seeded(run, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("verify", "-f", str(CORPUS / "poly.cm"), "--sample", "2", "--seed", "7",
        "--property", "chain", "--json", str(a))
    run("verify", "-f", str(CORPUS / "poly.cm"), "--sample", "2", "--seed", "7",
        "--property", "chain", "--json", str(b))
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    assert da["entries"] == db["entries"] and len(da["entries"]) == 2
    jsonschema.validate(da, SCHEMA)


def test_search_gap_verb(run):
    r = run("search-gap", "-f", str(CORPUS / "ex18.cm"))
    assert r.output.strip() == "no candidates"


def test_missing_pair_name(run):
    r = run("cd", "-f", str(CORPUS / "ex18.cm"))
    assert r.exit_code == 2 and "--pair is required" in r.output
