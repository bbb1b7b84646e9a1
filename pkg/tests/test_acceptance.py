"""
Acceptance criteria, each at its stated tolerance.

The whole suite runs once per session through ``run_all`` (criterion 10
reruns 1-9 in the same process and compares report bytes). Each criterion
line is printed, and collected for the terminal summary.
"""

import pytest

from radialfree.acceptance import report, run_all

SEED = 0
LINES = []


@pytest.fixture(scope="module")
def results():
    res = {r.number: r for r in run_all(seed=SEED)}
    LINES.extend(report(list(res.values())).splitlines())
    return res


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(results, number):
    r = results[number]
    print(r.line())
    assert r.passed, r.line()


if __name__ == "__main__":
    print(report(run_all(seed=SEED)), end="")
