"""Acceptance criteria 1-9 at their stated tolerances, trial counts and time limits.

Each criterion prints one PASS/FAIL line to the terminal (also under
pytest's output capture). Run alone with ``pytest -m acceptance -v``.
"""

import time

import pytest

from gjtrig import suites

TIME_LIMIT_S = {1: 10, 2: 10, 3: 30, 4: 60, 5: 10, 6: 20, 7: 30, 8: 60, 9: 5}
LABEL = {
    1: "multivector identities",
    2: "spherical triangles",
    3: "hyperspherical tetrahedra",
    4: "m-dimensional simplices",
    5: "Jacobi elliptic functions",
    6: "generalized Jacobi functions",
    7: "uniformization",
    8: "Nambu dynamics",
    9: "collapsed simplices",
}


@pytest.mark.acceptance
@pytest.mark.parametrize("criterion", sorted(suites.CRITERIA))
def test_criterion(criterion, capsys):
    start = time.perf_counter()
    reports = [suites.run_suite(name, seed=0) for name in suites.CRITERIA[criterion]]
    elapsed = time.perf_counter() - start
    failures = {f"{r.suite}.{k}": r.residuals.get(k) for r in reports for k in r.failures}
    ok = not failures and elapsed <= TIME_LIMIT_S[criterion]
    trials = "+".join(str(r.trials) for r in reports)
    worst = max(
        (r.residuals[k] / r.tolerances[k] for r in reports for k in r.tolerances if r.tolerances[k] > 0),
        default=0.0,
    )
    line = (f"criterion {criterion} ({LABEL[criterion]}): {'PASS' if ok else 'FAIL'}"
            f"  trials={trials}  worst residual/tol={worst:.2e}  time={elapsed:.1f}s/{TIME_LIMIT_S[criterion]}s")
    with capsys.disabled():
        print("\n" + line)
    assert not failures, failures
    assert elapsed <= TIME_LIMIT_S[criterion], f"took {elapsed:.1f}s"
