"""The eleven acceptance criteria at their stated tolerances and time budgets."""
import pytest

from defectlab.acceptance import CRITERIA

TITLES = {c.__name__: i for i, c in enumerate(CRITERIA, start=1)}


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"{i:02d}-{c.__name__[10:]}" for i, c in enumerate(CRITERIA, 1)])
def test_criterion(criterion, capsys):
    res = criterion(0)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.number == TITLES[criterion.__name__]
    assert res.ok, res.detail
    assert res.elapsed <= res.budget, f"{res.elapsed:.1f}s exceeds the {res.budget:.0f}s budget"
