import random

import pytest
from hypothesis import strategies as st

from whitney_tau.group import GroupSpec, normalize_word

FREE2 = GroupSpec.free("a", "b")
ZED = GroupSpec.cyclic(0, "t")


def raw_symbols(rank, max_len=6):
    return st.lists(st.tuples(st.integers(0, rank - 1), st.sampled_from([1, -1, 2, -2])), max_size=max_len)


def words(spec=FREE2, max_len=6):
    return raw_symbols(spec.rank, max_len).map(lambda raw: normalize_word(raw, spec))


@pytest.fixture
def free2():
    return FREE2


@pytest.fixture
def rng():
    return random.Random(20240601)
