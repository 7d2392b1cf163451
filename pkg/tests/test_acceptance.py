"""Acceptance gate: every criterion runs at its pinned tolerance.

Each test prints one pass/fail line (visible with ``pytest -rP`` or
``-s``); the same checks back the CLI's ``--check`` flag.
"""

import pytest

from pmpcruise.acceptance import CHECKS

SEED = 0


@pytest.mark.parametrize("code,title,check", CHECKS, ids=[c[0] for c in CHECKS])
def test_acceptance_criterion(code, title, check):
    ok, detail = check(SEED)
    print(f"{'PASS' if ok else 'FAIL'}  {code} {title}: {detail}")
    assert ok, f"{code} {title}: {detail}"
