import json

import pytest

from gjtrig import suites


def test_registry():
    names = suites.suite_names()
    assert set(names) == set(suites.SUITES)
    covered = [s for group in suites.CRITERIA.values() for s in group]
    assert sorted(covered) == sorted(names)
    assert sorted(suites.CRITERIA) == list(range(1, 10))


@pytest.mark.parametrize("name", ["multivec", "elliptic", "gj", "collapse", "uniformize-gj-id"])
def test_small_runs_pass(name):
    rep = suites.run_suite(name, trials=10, seed=1)
    assert rep.passed, rep.failures
    assert rep.trials == 10


def test_report_shape():
    rep = suites.run_suite("gj", trials=5, seed=2)
    body = json.loads(suites.report_json([rep]))
    assert body["schema"] == 1
    entry = body["suites"][0]
    assert set(entry["checks"]["identities"]) == {"max_residual", "tolerance", "passed"}
    assert "wall_time" not in entry
    assert "wall_time" in json.loads(suites.report_json([rep], timing=True))["suites"][0]


def test_tolerance_controls():
    loose = suites.run_suite("gj", trials=5, seed=2, tol_scale=10.0)
    base = suites.run_suite("gj", trials=5, seed=2)
    for k, t in base.tolerances.items():
        assert loose.tolerances[k] == pytest.approx(10 * t)
    strict = suites.run_suite("gj", trials=5, seed=2, tol=1e-30)
    assert not strict.passed


def test_worker_count_does_not_change_results():
    a = suites.run_suite("multivec", trials=240, seed=9, workers=1)
    b = suites.run_suite("multivec", trials=240, seed=9, workers=2)
    assert a.residuals == b.residuals
    assert a.counts == b.counts


def test_negative_trials():
    with pytest.raises(ValueError):
        suites.run_suite("gj", trials=-1)
