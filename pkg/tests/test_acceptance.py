"""Acceptance suite: every criterion at its full bounds.

Each criterion prints one ``[PASS]``/``[FAIL]`` line; the lines are
repeated together in the terminal summary.
"""

import json

import pytest

from refined_tr import verify as VF

from conftest import ACCEPTANCE_LINES


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(VF.CRITERIA))
def test_criterion(number, capsys):
    res = VF.run(number, "full", VF.SEED)
    ACCEPTANCE_LINES[number] = res.line()
    with capsys.disabled():
        print("\n" + res.line())
    assert res.checked > 0
    assert res.ok, json.dumps(res.first_failure, default=str)
