"""Verification harness: suites, populations, and determinism."""

import pytest

from uquery.verification import (
    SUITES,
    CheckRecord,
    VerificationReport,
    monotone_functions,
    run_suite,
    unate_functions,
)


def test_suite_names():
    assert SUITES == ("core", "algorithm1", "monotone", "closure",
                      "reduction")


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("nosuch")
    with pytest.raises(ValueError):
        run_suite("core", ns=(0,))
    with pytest.raises(ValueError):
        run_suite("core", ns=(5,))


def test_population_counts():
    assert [len(monotone_functions(n)) for n in (1, 2, 3, 4)] \
        == [3, 6, 20, 168]
    assert [len(unate_functions(n)) for n in (1, 2, 3)] == [4, 14, 104]
    # monotone functions really are monotone and pairwise distinct
    fs = monotone_functions(3)
    assert len({f.bits for f in fs}) == 20


def test_core_suite_small():
    report = run_suite("core", ns=(1, 2))
    assert report.passed
    assert report.suite == "core"
    by_check = {r.check: r for r in report.records}
    assert by_check["kleene-tables"].cases == 21
    assert by_check["exact-depths"].cases == 6
    assert by_check["extension-matches-resolutions"].cases == 156
    assert by_check["refinement-monotone"].cases == 192
    for link in ("s<=s_u", "bs<=bs_u", "C<=C_u", "s_u<=bs_u",
                 "C_u<=bs_u*s_u", "C_u<=D_u", "bs_u<=D_u",
                 "bs_u<=max(C_u,C_uu)", "C_uu<=2*C_u", "C_uu<=D_u",
                 "D<=C*bs", "D<=D_u", "D_u<=n", "witness-integrity"):
        record = by_check[link]
        assert record.passed and record.failures == 0
        assert record.cases == 20  # every nondegenerate-or-not table twice

    inventory = by_check["bs_u-exceeds-C_u"]
    assert inventory.passed
    assert inventory.details == {"flagged": {"n=1": 0, "n=2": 0}}


def test_certificate_bound_exceptions_catalogued():
    # at three variables exactly 80 tables exceed the settled-certificate
    # bound, the least being table:e0:3; the harness treats that exact
    # inventory as the expected state and fails on any drift
    report = run_suite("core", ns=(3,))
    assert report.passed
    inventory = {r.check: r for r in report.records}["bs_u-exceeds-C_u"]
    assert inventory.failures == 80
    assert inventory.details["flagged"] == {"n=3": 80}
    assert inventory.details["least"] == "table:e0:3"


def test_algorithm1_suite_small():
    report = run_suite("algorithm1", ns=(1, 2))
    assert report.passed
    by_check = {r.check: r.cases for r in report.records}
    # 4 + 16 functions, 3 + 9 hidden inputs each
    assert by_check == {"solver-correct": 156, "solver-within-budget": 156,
                        "solver-final-claims": 156}


def test_monotone_suite_small():
    report = run_suite("monotone", ns=(1, 2))
    assert report.passed
    by_check = {r.check: r.cases for r in report.records}
    assert by_check["mind-depths"] == 1
    assert by_check["monotone-population"] == 11
    assert by_check["monotone-depth-bracket"] == 9
    assert by_check["monotone-simulation"] == 63   # 3*3 + 6*9
    assert by_check["unate-simulation"] == 138     # 4*3 + 14*9


def test_closure_suite_small():
    report = run_suite("closure", ns=(1, 2))
    assert report.passed
    by_check = {r.check: r.cases for r in report.records}
    assert by_check == {"closure-pointwise": 72, "closure-depth": 20}


def test_reduction_suite():
    report = run_suite("reduction")
    assert report.passed
    by_check = {r.check: r for r in report.records}
    assert by_check["or-via-indexing"].cases == 20  # 4 + 16 or inputs
    assert by_check["or-reduction-cost"].cases == 2


def test_sampling_extends_population():
    report = run_suite("core", ns=(1,), samples=5, sample_arity=3, seed=1)
    assert report.passed
    record = {r.check: r for r in report.records}["s<=s_u"]
    assert record.cases == 9  # 4 exhaustive + 5 sampled
    assert report.parameters["samples"] == 5
    assert report.parameters["seed"] == 1


def test_sampling_is_seeded():
    a = run_suite("core", ns=(1,), samples=8, sample_arity=3, seed=3)
    b = run_suite("core", ns=(1,), samples=8, sample_arity=3, seed=3)
    strip = lambda rep: [r.to_json_dict() for r in rep.records]
    assert strip(a) == strip(b)


def test_worker_count_does_not_change_records():
    one = run_suite("algorithm1", ns=(1, 2), workers=1)
    two = run_suite("algorithm1", ns=(1, 2), workers=2)
    assert [r.to_json_dict() for r in one.records] \
        == [r.to_json_dict() for r in two.records]
    assert one.parameters["workers"] == 1
    assert two.parameters["workers"] == 2


def test_report_serialization():
    report = run_suite("reduction")
    d = report.to_json_dict()
    assert d["suite"] == "reduction"
    assert d["passed"] is True
    assert isinstance(d["duration_seconds"], float)
    assert d["parameters"]["ns"] == [1, 2, 3]
    first = d["records"][0]
    assert set(first) >= {"check", "passed", "cases", "failures", "note"}


def test_record_fields():
    record = CheckRecord(check="x", passed=False, cases=3, failures=1,
                         note="n", counterexample={"input": "0"},
                         details={"k": 1})
    d = record.to_json_dict()
    assert d["counterexample"] == {"input": "0"}
    assert d["details"] == {"k": 1}
    report = VerificationReport(
        suite="core", parameters={}, records=(record,), passed=False,
        duration_seconds=0.0)
    assert not report.passed
