"""End-to-end acceptance: criteria 1-10, exact comparisons, one status line each."""
from __future__ import annotations

import pytest

from wsinglet.acceptance import RUNNERS, run_criterion


@pytest.mark.parametrize("number", sorted(RUNNERS))
def test_criterion(number, capsys):
    res = run_criterion(number)
    with capsys.disabled():
        print("\n" + res.line())
        for label, ok, info in res.details:
            if not ok:
                print(f"    failed: {label} {info}".rstrip())
    assert res.details, "criterion made no comparisons"
    assert res.passed, [d for d in res.details if not d[1]]
