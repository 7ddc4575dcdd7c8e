import json

import pytest

from finduality.suites import SUITES, SuiteConfig, SuiteReport, run_suite, to_jsonable
from finduality.finset import FinMap, FinSet


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_bounds_pass(name):
    report = run_suite(name, SuiteConfig(seed=3, max_size=2, cases=3))
    assert report.cases > 0
    assert report.failures == []


def test_report_shape():
    report = run_suite("free", SuiteConfig(seed=5), timing=False)
    assert set(report.as_dict()) == {"suite", "seed", "cases", "failures", "ms"}
    assert report.as_dict()["ms"] is None


def test_random_tier_depends_on_seed_only():
    a = run_suite("constructions", SuiteConfig(seed=1, max_size=3, cases=15))
    b = run_suite("constructions", SuiteConfig(seed=1, max_size=3, cases=15))
    assert a.as_dict() == b.as_dict()


def test_failures_carry_witnesses():
    report = SuiteReport("x", 0)
    report.record("bad", False, {"edge": ("a", "b"), "set": frozenset({"q", "p"})})
    assert report.failures == [{"case": "bad", "witness": {"edge": ["a", "b"], "set": ["p", "q"]}}]
    assert not report.ok


def test_to_jsonable_is_json():
    value = to_jsonable([frozenset({frozenset({"b"}), frozenset()}), FinMap(FinSet("a"), FinSet("b"), {"a": "b"})])
    assert json.loads(json.dumps(value)) == [[["b"], []], {"a": "b"}]
