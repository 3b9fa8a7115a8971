import pytest

from uauprod.partitions import (
    EnumerationTooLarge,
    LabelledPartition,
    enumerate_M,
    enumerate_Md,
    enumerate_OMd,
    is_ordered,
    parse_partition,
    set_partitions,
)

BELL = [1, 1, 2, 5, 15, 52, 203]
# number of sets of lists partitioning an n-set (OEIS A000262)
LISTS = [1, 1, 3, 13, 73, 501]


def test_set_partitions_are_counted_by_bell_numbers():
    for n in range(7):
        assert sum(1 for _ in set_partitions(range(n))) == BELL[n]


@pytest.mark.parametrize("n", range(1, 6))
def test_size_of_M(n):
    assert len(enumerate_M(range(1, n + 1))) == LISTS[n]


def test_labelled_and_ordered_counts():
    # every block may carry one of d labels; ordered blocks are plain set partitions
    assert len(enumerate_Md(3, 2)) == 6 * 2 + 6 * 4 + 1 * 8  # one, two and three blocks
    assert len(enumerate_OMd(3, 1)) == BELL[3]
    assert len(enumerate_OMd(3, 2)) == 2 + 3 * 4 + 8
    assert all(is_ordered(p) for p in enumerate_OMd(4, 1))


def test_canonical_form_and_text():
    p = LabelledPartition.of(((3,), 2), ((2, 1), 1))
    assert p.blocks == (((2, 1), 1), ((3,), 2))
    assert p.format() == "(x2 x1)#1 * (x3)#2"
    assert parse_partition(p.format()) == p
    assert not is_ordered(p)
    assert p.restrict([3]) == LabelledPartition.of(((3,), 2))


def test_validation():
    with pytest.raises(ValueError):
        LabelledPartition.of(((1, 2), 1), ((2,), 1))
    with pytest.raises(ValueError):
        LabelledPartition.of(((1,), 0))
    with pytest.raises(EnumerationTooLarge):
        enumerate_M(range(1, 10))
