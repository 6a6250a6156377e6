from pathlib import Path

import pytest

from cmpairs.errors import CorpusParseError
from cmpairs.verifier import PROPERTIES, run_suite, search_gap

CORPUS = Path(__file__).resolve().parents[1] / "src" / "cmpairs" / "corpus"

EX18 = (CORPUS / "ex18.cm").read_text()


def test_example_18_entry():
    r = run_suite(sources=[("ex18.cm", EX18)], properties=["chain"], entries=["P"])
    out = r.entries["ex18:P"]
    assert out["chain"]["status"] == "pass"
    assert out["chain"]["details"]["depth_pair"] == "Finite(0)"
    assert out["chain"]["details"]["cd_pair"].startswith("Infinite")
    assert out["expect:verdict"]["status"] == "pass"
    assert out["expect:verdict"]["details"]["computed"] == "no"


def test_m_plus_e_equality_case():
    src = (CORPUS / "poly.cm").read_text()
    r = run_suite(sources=[("poly.cm", src)], properties=["m+e"], entries=["A"])
    o = r.entries["poly:A"]["m+e"]
    assert o["status"] == "pass"
    assert o["details"]["equality"] is True and o["details"]["cd_pair"] == "Finite(2)"


def test_empty_corpus():
    r = run_suite(sources=[])
    assert r.entries == {} and r.ok


def test_failure_reports_repro():
    src = EX18 + "expect P.depth = 3 [derived];\n"
    r = run_suite(sources=[("bad.cm", src)], properties=["chain"], entries=["P"])
    assert not r.ok
    assert ("bad:P", "expect:depth") in r.failures


def test_failed_property_has_repro(monkeypatch):
    monkeypatch.setitem(PROPERTIES, "always-false", lambda ctx: (False, {}))
    r = run_suite(sources=[("ex18.cm", EX18)], properties=["always-false"], entries=["Q"])
    o = r.entries["ex18:Q"]["always-false"]
    assert o["status"] == "fail"
    assert o["details"]["repro"].startswith("cmpairs verify -f ex18.cm")


def test_skips_carry_reasons():
    r = run_suite(sources=[("ex18.cm", EX18)], properties=["m+e"], entries=["P"])
    o = r.entries["ex18:P"]["m+e"]
    assert o["status"] == "skipped" and "not finite" in o["details"]["reason"]


def test_parse_error_surfaces():
    with pytest.raises(CorpusParseError):
        run_suite(sources=[("broken.cm", "ring R = poly(x,y)")])


def test_deterministic():
    a = run_suite(sources=[("ex18.cm", EX18)], properties=["chain", "bounds"])
    b = run_suite(sources=[("ex18.cm", EX18)], properties=["chain", "bounds"])
    assert a.entries == b.entries


FAMILY = ("ring S = poly(x,y) over GF(32003);\nmodule F = free(S);\nmodule H = coker(S, [[x]]);\n"
          "module V = coker(S, [[x^2]]);\nmodule K = coker(S, [[x, y]]);\nideal m = maximal;\n")


def test_search_gap_examples():
    assert search_gap([("ex18.cm", EX18)]) == []
    assert search_gap([]) == []
    log = []
    assert search_gap([("s.cm", FAMILY)], single_ext_only=True, log=log) == []
    assert log and not any(row["gap"] for row in log)


def test_search_gap_finds_strict_gap():
    found = search_gap([("s.cm", FAMILY)])
    pairs = {(c["M"], c["N"]): c for c in found}
    # k[x,y]/(x) against itself: cd_m N = 1 but cd_m(M, N) = 2
    hit = pairs[("H", "H")]
    assert hit["cd_N"] == 1 and hit["cd_pair"] == 2
    assert hit["agreement"] is True
