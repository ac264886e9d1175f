"""Acceptance suite: one PASS/FAIL line per criterion, with pinned time limits in seconds."""

from __future__ import annotations

import pytest

from rigcat.acceptance import run_acceptance_suite
from rigcat.report import Section

LIMITS = {1: 5, 2: 30, 3: 1, 4: 30, 5: 10, 6: 10, 7: 10, 8: 30, 9: 120}


def criterion_line(number: int, s: Section) -> str:
    verdict = "PASS" if s.passed else "FAIL"
    return f"criterion {number}: {verdict}  {s.title}  ({s.seconds:.2f}s / limit {LIMITS[number]}s)"


@pytest.fixture(scope="module")
def suite() -> dict[int, Section]:
    return dict(enumerate(run_acceptance_suite(), start=1))


@pytest.mark.parametrize("number", sorted(LIMITS))
def test_criterion(suite, number):
    from conftest import ACCEPTANCE_LINES

    s = suite[number]
    line = criterion_line(number, s)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert s.ok, s.failures[:5]
    assert s.limit == LIMITS[number]
    assert s.seconds < LIMITS[number], f"{s.seconds:.2f}s exceeds {LIMITS[number]}s"


if __name__ == "__main__":
    results = dict(enumerate(run_acceptance_suite(), start=1))
    for n in sorted(LIMITS):
        print(criterion_line(n, results[n]))
    raise SystemExit(0 if all(s.passed for s in results.values()) else 1)
