import pytest

from fmdlab.constructions import shipped_ambients
from fmdlab.property_suite import CheckResult, SuiteReport, ambient_suite, property_suite, ring_suite
from fmdlab.ring_core import direct_product, make_gf, make_zmod


def test_integers_model_passes(integers12):
    report = property_suite(integers12, seed=0, trials=50)
    assert report.passed, report.to_json()
    names = {c.name for c in report.checks}
    assert {"oracle-equivalence", "local-census", "dedekind-law", "colon-divides-oracle"} <= names
    assert report.check("dedekind-law").checked > 0


def test_product_of_fields_reports_findings():
    F2 = make_gf(2, 1)
    report = property_suite(direct_product(F2, F2), seed=0, trials=50)
    assert report.passed
    findings = report.check("unit-cancellative").findings
    assert len(findings) == 2


def test_ring_suite_on_z144(z144):
    report = ring_suite(z144, trials=50)
    assert report.passed
    assert report.check("molecules-primary").checked == 2
    assert report.check("unit-cancellative").findings


def test_ring_suite_runs_the_finite_ring_laws():
    report = ring_suite(make_zmod(12), trials=40)
    assert report.passed, report.to_json()
    for name in ("comaximal-law", "colon-divides-oracle", "descent-bound", "local-census"):
        assert report.check(name).checked > 0


def test_ring_suite_records_unbounded_descent_as_finding():
    F2 = make_gf(2, 1)
    report = ring_suite(direct_product(F2, F2), trials=20)
    assert report.passed
    assert report.check("descent-bound").findings


def test_suite_is_deterministic_for_a_seed():
    R = make_zmod(72)
    first = ring_suite(R, seed=7, trials=30).to_json()
    second = ring_suite(R, seed=7, trials=30).to_json()
    assert first == second


def test_report_counts_violations():
    bad = CheckResult("x", checked=3, violations=["a", "b"])
    report = SuiteReport("s", [CheckResult("ok", checked=1), bad])
    assert not report.passed
    assert report.violation_count == 2
    assert report.check("x") is bad
    assert report.to_json()["checks"][1]["passed"] is False


@pytest.mark.slow
@pytest.mark.parametrize("name, build", shipped_ambients())
def test_shipped_ambients_pass(name, build):
    report = ambient_suite(build(), seed=0, trials=50)
    assert report.passed, f"{name}: {report.to_json()}"
