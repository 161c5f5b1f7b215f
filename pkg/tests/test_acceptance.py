"""Runs every acceptance criterion and prints one pass/fail line for each."""

import pytest

from woundheights.acceptance import CRITERIA

LINES: dict[int, str] = {}


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"{c.number:02d}_{c.__name__}")
def test_criterion(criterion):
    result = criterion()
    LINES[result.number] = result.line()
    print(result.line())
    assert result.passed, result.line()
