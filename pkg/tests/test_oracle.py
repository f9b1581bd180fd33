import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tautrig.events import seed_candidates
from tautrig.oracle import merge_desc, same_ranking, sort6_oracle, top_k

from conftest import mk, pts

# full-sort fixture for generate_event(42, 0), computed with a numpy lexsort
# over pT values parsed from the event's text serialization
EVENT42_TOP16_PT = [
    64823, 63793, 63615, 62933, 62820, 62784, 62118, 61522,
    61476, 61253, 61235, 61138, 61029, 60717, 60610, 60608,
]
EVENT42_TOP16_ORIGIN = [
    (24, 0), (21, 0), (1, 0), (10, 0), (6, 0), (24, 1), (21, 1), (7, 0),
    (4, 0), (32, 0), (9, 0), (34, 0), (16, 0), (11, 0), (13, 0), (10, 1),
]


def test_top_k_all_ties():
    cands = mk([7] * 144)
    assert top_k(cands, 16) == cands[:16]


def test_top_k_presorted():
    assert pts(top_k(mk(range(143, -1, -1)), 16)) == list(range(143, 127, -1))


def test_top_k_event42(event42):
    got = top_k(seed_candidates(event42), 16)
    assert pts(got) == EVENT42_TOP16_PT
    assert [tuple(t.origin) for t in got] == EVENT42_TOP16_ORIGIN


def test_top_k_errors():
    with pytest.raises(ValueError):
        top_k(mk([1, 2]), 3)
    with pytest.raises(ValueError):
        top_k(mk([1, 2]), 0)


@given(st.lists(st.integers(0, 20), min_size=2, max_size=60), st.data())
def test_top_k_prefix_and_conservation(values, data):
    cands = mk(values)
    k = data.draw(st.integers(1, len(values) - 1))
    a, b = top_k(cands, k), top_k(cands, k + 1)
    assert b[:k] == a
    rest = [t for t in cands if t not in a]
    assert sorted(a + rest, key=lambda t: t.origin) == cands
    assert sorted(pts(a), reverse=True) == sorted(values, reverse=True)[:k]


def test_merge_desc_examples():
    assert merge_desc([], [5, 3]) == [5, 3]
    assert merge_desc([9, 4], [7, 7, 1]) == [9, 7, 7, 4, 1]
    with pytest.raises(ValueError):
        merge_desc([1, 2], [3])


def test_merge_desc_ties_prefer_a():
    a, b = mk([5, 5], region=0), mk([5], region=1)
    assert merge_desc(a, b, key=lambda t: t.pt) == [a[0], a[1], b[0]]


@given(
    st.lists(st.integers(0, 50)).map(lambda x: sorted(x, reverse=True)),
    st.lists(st.integers(0, 50)).map(lambda x: sorted(x, reverse=True)),
    st.lists(st.integers(0, 50)).map(lambda x: sorted(x, reverse=True)),
)
def test_merge_desc_properties(a, b, c):
    ab = merge_desc(a, b)
    assert ab == sorted(a + b, reverse=True)
    assert len(ab) == len(a) + len(b)
    assert merge_desc(ab, c) == merge_desc(a, merge_desc(b, c))


def test_sort6_oracle_examples():
    assert sort6_oracle([9, 8], [7, 6, 5, 4]) == [9, 8, 7, 6, 5, 4]
    reg, inp = mk([5, 5], 0), mk([5, 5, 5, 5], 1)
    assert sort6_oracle(reg, inp, key=lambda t: t.pt) == reg + inp


def sorted_patterns():
    pairs = list(itertools.combinations_with_replacement(range(5, -1, -1), 2))
    blocks = list(itertools.combinations_with_replacement(range(5, -1, -1), 4))
    return pairs, blocks


def test_sort6_oracle_exhaustive():
    pairs, blocks = sorted_patterns()
    assert (len(pairs), len(blocks)) == (21, 126)
    for reg in pairs:
        for inp in blocks:
            assert sort6_oracle(list(reg), list(inp)) == sorted(reg + inp, reverse=True)


def test_same_ranking():
    a = mk([5, 5, 3])
    assert same_ranking(a, a)
    assert same_ranking([a[1], a[0], a[2]], a)
    assert not same_ranking(a[:2] + mk([3], region=1), a)
    assert not same_ranking(list(reversed(a)), a)
    rng = random.Random(0)
    b = mk([rng.randint(0, 3) for _ in range(20)])
    assert same_ranking(top_k(b, 10), top_k(b, 10))
