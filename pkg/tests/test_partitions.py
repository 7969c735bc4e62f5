from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from glplancherel.errors import ResourceLimitError
from glplancherel.partitions import (
    Partition,
    enumerate_partitions,
    iter_partitions,
    partition_count,
    partition_stats,
)


def P(*parts):
    return Partition(parts)


def test_empty_partition_stats():
    st0 = partition_stats(P())
    assert st0.conjugate == P()
    assert st0.hooks == Counter()
    assert (st0.n_lambda, st0.n_conjugate, st0.size) == (0, 0, 0)


def test_two_one():
    s = partition_stats(P(2, 1))
    assert s.conjugate == P(2, 1)
    assert s.hooks == Counter({3: 1, 1: 2})
    assert (s.n_lambda, s.n_conjugate, s.size) == (1, 1, 3)


def test_single_row():
    s = partition_stats(P(4))
    assert sorted(s.hooks.elements()) == [1, 2, 3, 4]
    # n(lambda) sums over columns of length 1, n(lambda') over the row of length 4
    assert (s.n_lambda, s.n_conjugate) == (0, 6)
    assert s.conjugate == P(1, 1, 1, 1)


def test_hooks_by_brute_force_cell_counting():
    lam = P(5, 3, 3, 1)
    cells = set(lam.cells())
    arms_legs = []
    for i, j in lam.cells():
        arm = sum(1 for (a, b) in cells if a == i and b > j)
        leg = sum(1 for (a, b) in cells if b == j and a > i)
        arms_legs.append(arm + leg + 1)
    assert list(lam.hooks) == arms_legs


@pytest.mark.parametrize("bad", [(1, 2), (0,), (2, -1)])
def test_invalid_partitions(bad):
    with pytest.raises(ValueError):
        Partition(bad)


def test_text_format():
    assert Partition.parse("2,1") == P(2, 1)
    assert Partition.parse("") == P()
    assert str(P(3, 1, 1)) == "3,1,1"
    for bad in ("2, 1", "2,,1", "a", "1,2"):
        with pytest.raises(ValueError):
            Partition.parse(bad)


def test_enumeration_examples():
    assert enumerate_partitions(0) == [P()]
    assert enumerate_partitions(4) == [P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)]
    assert len(enumerate_partitions(10)) == 42


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError):
        enumerate_partitions(61)
    assert len(enumerate_partitions(12, cap=12)) == 77
    with pytest.raises(ResourceLimitError):
        enumerate_partitions(13, cap=12)


def test_reverse_lex_order_and_validity():
    for m in range(1, 16):
        parts = [lam.parts for lam in iter_partitions(m)]
        assert parts == sorted(parts, reverse=True)
        assert len(set(parts)) == len(parts)
        assert all(Partition(p).size == m for p in parts)


@pytest.mark.slow
def test_counts_satisfy_pentagonal_recurrence():
    for m in list(range(46)) + [50, 60]:
        assert len(enumerate_partitions(m)) == partition_count(m)


def test_pentagonal_values():
    assert [partition_count(m) for m in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert partition_count(60) == 966467


def test_hook_sum_identity_exhaustive():
    for m in range(21):
        for lam in iter_partitions(m):
            assert sum(lam.hooks) == lam.n_lambda + lam.n_conjugate + lam.size


partitions_st = st.lists(st.integers(1, 9), max_size=9).map(lambda xs: Partition(tuple(sorted(xs, reverse=True))))


@given(partitions_st)
def test_conjugation_properties(lam):
    conj = lam.conjugate
    assert conj.conjugate == lam
    assert conj.size == lam.size
    a, b = partition_stats(lam), partition_stats(conj)
    assert (a.n_lambda, a.n_conjugate) == (b.n_conjugate, b.n_lambda)
    assert a.hooks == b.hooks
