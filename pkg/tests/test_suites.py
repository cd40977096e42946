from __future__ import annotations

import json

import pytest

from tollconvex.graph import GraphError
from tollconvex.report import VerificationReport
from tollconvex.suites import SUITES, run_suite

SMALL = {
    "interval-oracle": 5,
    "inequality-chain": 5,
    "cartesian-convexity": 3,
    "cartesian-tn2": 3,
    "lex-interval": 3,
    "lex-exact": 3,
    "lex-tn2": 4,
    "lex-3tn": 4,
    "hull-bounds": 3,
    "lemma-012": 3,
    "presecna": 5,
    "extreme-vs-simplicial": 5,
}


def test_every_suite_is_covered():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("suite", sorted(SMALL))
def test_suite_passes_small(suite):
    rep = run_suite(suite, max_n=SMALL[suite])
    assert rep.passed, rep.to_text()
    assert rep.instances >= len(rep.records) > 0
    assert all(rec["ok"] for rec in rep.records)


@pytest.mark.parametrize("suite", ["presecna", "lex-exact", "interval-oracle"])
def test_reports_do_not_depend_on_jobs(suite):
    one = run_suite(suite, max_n=4, jobs=1)
    two = run_suite(suite, max_n=4, jobs=2)
    assert one.to_lines() == two.to_lines()


def test_unknown_suite_and_ceilings():
    with pytest.raises(GraphError, match="unknown suite"):
        run_suite("lemma-42")
    with pytest.raises(GraphError, match="max-n"):
        run_suite("presecna", max_n=8)
    with pytest.raises(GraphError, match="max-n"):
        run_suite("lex-exact", max_n=0)
    with pytest.raises(GraphError, match="unknown factor"):
        run_suite("lex-exact", max_n=2, h_family=["K5"])
    with pytest.raises(GraphError, match="K2"):
        run_suite("lex-tn2", max_n=2, h_family=["K2"])


def test_cartesian_convexity_logs_box_counterexample():
    rep = run_suite("cartesian-convexity", max_n=2)
    assert rep.passed
    (note,) = rep.notes
    assert note["original"] and not note["corrected"] and not note["is_t_convex"]
    assert any(rec["instance"].startswith("G=n=5") for rec in rep.records)


def test_lex_3tn_surfaces_path_star_discrepancy():
    rep = run_suite("lex-3tn", max_n=3)
    (note,) = [n for n in rep.notes if n["kind"] == "open-question-discrepancy"]
    assert note["claimed"] == 6 and note["brute_force"] == 4
    assert note["failed_condition"] == 3 and note["condition_witness"] == [1, 2]
    verified = [r for r in rep.records if r["instance"].startswith("P")]
    assert [r["instance"] for r in verified] == ["P5 o K1,3 claimed 6", "P6 o K1,3 claimed 6"]
    assert all(r["ok"] for r in verified)


def test_extreme_vs_simplicial_counts_strict_graphs():
    rep = run_suite("extreme-vs-simplicial", max_n=6)
    assert rep.notes[0]["strict_containment_graphs"] > 0


def test_report_serialisation():
    rep = VerificationReport("demo")
    rep.check("a", {1, 2}, {2, 1})
    rep.check("b", 1, 2, witness=(0, 1))
    rep.note(kind="x", value=frozenset({3, 1}))
    assert not rep.passed and rep.instances == 2 and len(rep.violations) == 1
    lines = rep.to_lines()
    assert json.loads(lines[0]) == {"suite": "demo", "instance": "a", "expected": [1, 2], "actual": [1, 2], "witness": None, "ok": True}
    summary = json.loads(lines[-1])["summary"]
    assert summary == {"suite": "demo", "instances": 2, "violations": 1, "exhaustive": True, "passed": False, "notes": [{"kind": "x", "value": [1, 3]}]}
    assert "elapsed" in rep.summary(include_elapsed=True)
    assert rep.to_csv().splitlines()[2] == "demo,b,1,2,\"[0, 1]\",False"
    assert "FAIL" in rep.to_text()
