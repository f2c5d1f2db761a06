"""Runs the nine seeded acceptance checks; one pass/fail line each is printed
and collected into the terminal summary."""

import re

import pytest

from mcgrep.acceptance import CRITERIA, DEFAULT_SEED, run_criterion


def _slug(title):
    return re.sub(r"[^a-z0-9]+", "_", title.lower()).strip("_")


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA],
                         ids=[f"criterion_{n}_{_slug(t)}" for n, t, _ in CRITERIA])
def test_criterion(number, acceptance_lines):
    res = run_criterion(number, DEFAULT_SEED)
    line = res.line()
    acceptance_lines.append(line)
    print(line)
    assert res.passed, res.detail
