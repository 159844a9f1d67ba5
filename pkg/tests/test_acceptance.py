"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line with its runtime; the lines are echoed
at the end of the pytest run (see conftest.py).  The module also runs as a
script: ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time

import pytest

from charqp.verify import run_suite

# All criteria demand exact equality; the runtime limits are in seconds.
CRITERIA = [
    (1, "closed-form identity constituents", ("closed-form",), 120),
    (2, "E7 identity constituents, q <= 60", ("e7",), 60),
    (3, "brute-force counts vs closed forms", ("bruteforce",), 300),
    (4, "equivariant routes agree, q <= 24", ("routes",), 600),
    (5, "equivariant tables, q <= 48", ("tables",), 120),
    (6, "induction from Omega", ("induction",), 300),
    (7, "duality on [-h, 2h]", ("duality",), 60),
    (8, "positivity threshold at h", ("positivity",), None),
    (9, "dilation law and periods", ("dilation",), None),
    (10, "coset method for 2B", ("coset",), None),
    (11, "regular-character vanishing", ("regular-character",), None),
    (12, "minimum periods", ("periods",), None),
    (13, "property suites", ("gcd-property", "gap-bound", "reciprocity", "snf",
                             "omega-group", "sigma-marks"), None),
]

RESULTS: list[str] = []


def evaluate(number: int, title: str, suites: tuple[str, ...], limit: float | None):
    start = time.perf_counter()
    failures: list[dict] = []
    checked = 0
    for name in suites:
        rep = run_suite(name)
        checked += rep.checked
        failures.extend(rep.failures)
    elapsed = time.perf_counter() - start
    ok = not failures and checked > 0
    note = f"{checked} checks, {elapsed:.1f}s"
    if limit is not None:
        note += f" (limit {limit}s)"
    if failures:
        note += f"; first failure {failures[0]}"
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{note}]"
    RESULTS.append(line)
    return ok, line


@pytest.mark.slow
@pytest.mark.parametrize("number,title,suites,limit", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(number, title, suites, limit):
    ok, line = evaluate(number, title, suites, limit)
    print(line)
    assert ok, line


if __name__ == "__main__":
    passed = True
    for spec in CRITERIA:
        ok, line = evaluate(*spec)
        print(line, flush=True)
        passed &= ok
    sys.exit(0 if passed else 1)
