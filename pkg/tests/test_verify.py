import json

import pytest

from mop import verify
from mop.families import FamilyId
from mop.hypergeo import IdentityId
from mop.verify import ConfigError, SuiteConfig, biorth_matrix, run_suite


def test_bound_zero_gives_no_cases():
    rep = run_suite(SuiteConfig("orthogonality", max_order=0))
    assert rep.cases == [] and rep.passed


def test_biorth_trivial_at_order_one():
    m = biorth_matrix(verify.DEFAULT_PARAMS["hahn"], 1)
    assert m.verdict
    assert m.entries[((1, 0), (0, 0))] == 1


@pytest.mark.parametrize("suite", ["orthogonality", "biorthogonality", "recurrence", "oracle"])
def test_small_suites_pass_for_all_families(suite):
    rep = run_suite(SuiteConfig(suite, family="all", max_order=2))
    assert rep.passed, [c.id for c in rep.cases if c.status != verify.PASS]


def test_identity_suite_seeded_and_reproducible():
    a = run_suite(SuiteConfig("identities", seed=3, draws=10))
    b = run_suite(SuiteConfig("identities", seed=3, draws=10))
    assert a.passed
    assert [c.inputs for c in a.cases] == [c.inputs for c in b.cases]


def test_extra_identity_case_reports_violation():
    bad = {"n": 2, "a": "1/2", "b": "1/3", "c": "1/5", "d": "7/3"}
    from fractions import Fraction

    p = {k: Fraction(v) if isinstance(v, str) else v for k, v in bad.items()}
    rep = run_suite(SuiteConfig("identities", draws=0, identity_cases=((IdentityId.PfaffSaalschutz.value, p),)))
    assert [c.status for c in rep.cases] == [verify.VIOLATION]
    assert rep.summary["hypothesis_violation"] == 1


def test_report_json_shape():
    rep = run_suite(SuiteConfig("recurrence", max_order=1))
    doc = json.loads(rep.to_json())
    assert doc["suite"] == "recurrence" and doc["status"] == "pass"
    assert {"pass", "fail", "skipped"} <= set(doc["summary"])
    assert all({"id", "status", "residual"} <= set(c) for c in doc["cases"])


def test_config_validation():
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig("nonsense"))
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig("orthogonality", precision=32))
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig("orthogonality", family="legendre"))


def test_custom_params_are_used():
    cfg = SuiteConfig("orthogonality", family=FamilyId.Charlier.value, max_order=2, params={"b1": "1/2", "b2": "5"})
    rep = run_suite(cfg)
    assert rep.passed
    assert rep.cases[0].inputs["params"] == {"b1": "1/2", "b2": "5"}
