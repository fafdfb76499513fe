"""The ten-point acceptance gate, one pass/fail line per criterion.

Exactly the functions behind the CLI `selftest` subcommand run here; a
criterion passes only if all its checks hold and it finishes within its
stated budget.  The line is printed unconditionally so a full run always
shows ten PASS/FAIL lines.
"""

import pytest

from logconcave import acceptance


@pytest.mark.parametrize(
    "criterion", acceptance.ALL_CRITERIA, ids=lambda fn: fn.__name__
)
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print(result.line)
    assert result.passed, result.line
    assert result.seconds <= result.budget
