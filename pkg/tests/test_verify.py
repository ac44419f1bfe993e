import pytest

from conceptcat.adjoints import is_join_preserving, is_lower_cut_continuous, is_residuated
from conceptcat.verify import EXTRA, SuiteConfig, strictness_witnesses

# the structural suites outside the numbered criteria
SMALL = SuiteConfig(exhaustive_max=2, random=50)


@pytest.mark.parametrize("name", sorted(EXTRA))
def test_extra_suite(name):
    rep = EXTRA[name](SMALL)
    assert rep.checked > 0
    assert rep.ok, "\n".join(rep.messages)


def test_strictness_witnesses():
    w = strictness_witnesses()
    assert all(f is not None for f in w.values())
    lcc_only, join_only = w.values()
    assert is_lower_cut_continuous(lcc_only) and not is_residuated(lcc_only)
    assert is_join_preserving(join_only) and not is_lower_cut_continuous(join_only)
