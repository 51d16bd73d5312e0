"""Acceptance criteria 1-9, one test each.

Each test prints a single PASS/FAIL line.  Run with ``pytest tests/test_acceptance.py -s``
or ``qsimon verify``.  Criterion 5 is expected to fail: see the README.
"""

import pytest

from qsimon.acceptance import CRITERIA


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = CRITERIA[number]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.detail
