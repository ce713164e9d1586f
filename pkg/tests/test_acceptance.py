"""Acceptance gate: one check per exit criterion, each at its own tolerance.

The PASS/FAIL lines are printed in a summary section at the end of the run.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from freespec.acceptance import SUITES

CRITERIA = [
    (1, "gram-weingarten"),
    (2, "full-character"),
    (3, "truncated-su2"),
    (4, "expansion"),
    (5, "asymptotic"),
    (6, "laws"),
    (7, "sn-model"),
    (8, "pauli-magic"),
    (9, "ade"),
    (10, "jones"),
    (11, "conjecture"),
    (12, "free-prob-engine"),
]


def test_every_suite_is_covered():
    assert sorted(name for _, name in CRITERIA) == sorted(SUITES)


@pytest.mark.parametrize("number,name", CRITERIA, ids=[f"{n:02d}-{s}" for n, s in CRITERIA])
def test_criterion(number, name):
    report = SUITES[name]()
    status = "PASS" if report.passed else "FAIL"
    line = f"criterion {number:2d} [{status}] {name}: {report.suite} ({len(report.cases)} cases)"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)
    assert report.passed, report.pretty()
