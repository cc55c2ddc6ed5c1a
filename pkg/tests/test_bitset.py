import pytest
from hypothesis import given, strategies as st

from rowguard.bitset import BitSet


def test_constructors():
    assert BitSet.empty(5).mask == 0
    assert BitSet.full(5).mask == 0b11111
    assert BitSet.from_indices(4, [0, 2]).mask == 0b101
    assert BitSet.full(0).mask == 0


def test_mask_must_fit_width():
    with pytest.raises(ValueError):
        BitSet(3, 0b1000)
    with pytest.raises(ValueError):
        BitSet(-1, 0)
    with pytest.raises(ValueError):
        BitSet.from_indices(3, [3])


def test_width_mismatch_rejected():
    a, b = BitSet(3, 0b101), BitSet(4, 0b101)
    for op in (lambda: a & b, lambda: a | b, lambda: a - b,
               lambda: a.issubset(b), lambda: a.isdisjoint(b)):
        with pytest.raises(ValueError, match="width mismatch"):
            op()
    assert a != b  # equality is total, just false across widths


def test_membership_and_iteration():
    s = BitSet.from_indices(6, [1, 4, 5])
    assert list(s) == [1, 4, 5]
    assert s.indices() == (1, 4, 5)
    assert 4 in s and 0 not in s and 9 not in s
    assert len(s) == 3
    assert bool(s) and not BitSet.empty(6)


def test_add_remove_invert():
    s = BitSet.from_indices(4, [1])
    assert s.add(3) == BitSet.from_indices(4, [1, 3])
    assert s.remove(1) == BitSet.empty(4)
    assert s.remove(2) == s  # removing an absent index is a no-op
    assert s.invert() == BitSet.from_indices(4, [0, 2, 3])
    with pytest.raises(ValueError):
        s.add(4)


sets = st.integers(min_value=0, max_value=2 ** 10 - 1)


@given(sets, sets)
def test_algebra_matches_frozenset(m1, m2):
    w = 10
    a, b = BitSet(w, m1), BitSet(w, m2)
    fa, fb = frozenset(a), frozenset(b)
    assert frozenset(a & b) == fa & fb
    assert frozenset(a | b) == fa | fb
    assert frozenset(a - b) == fa - fb
    assert a.issubset(b) == (fa <= fb)
    assert (a < b) == (fa < fb)
    assert a.isdisjoint(b) == fa.isdisjoint(fb)
    assert len(a) == len(fa)
    assert frozenset(a.invert()) == frozenset(range(w)) - fa


@given(sets)
def test_roundtrip_via_indices(m):
    s = BitSet(10, m)
    assert BitSet.from_indices(10, s) == s
    assert s.invert().invert() == s
