import pytest
from hypothesis import given
from hypothesis import strategies as st

from qagt.partitions import (
    EMPTY,
    Partition,
    arm,
    conjugate,
    enumerate_partitions,
    leg,
    ones,
    partition_pairs,
    rectangle,
)


def euler_partition_counts(n_max):
    """p(n) from the pentagonal number recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        k, acc = 1, 0
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            acc += sign * p[n - g1]
            if g2 <= n:
                acc += sign * p[n - g2]
            k += 1
        p[n] = acc
    return p


PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627]


def test_counts_match_euler_recurrence():
    assert euler_partition_counts(20) == PARTITION_COUNTS
    assert [len(enumerate_partitions(n)) for n in range(21)] == PARTITION_COUNTS


def test_order_and_validity():
    assert enumerate_partitions(3) == [Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))]
    assert enumerate_partitions(0) == [EMPTY]
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(ValueError):
        enumerate_partitions(-1)


def test_arm_leg_conjugate():
    lam = Partition((2, 2))
    assert arm(lam, (3, 1)) == -1  # box outside lam: lam_3 = 0
    assert arm(Partition((4, 2, 1)), (1, 2)) == 2
    assert leg(Partition((4, 2, 1)), (1, 2)) == 1
    assert conjugate(Partition((4, 2, 1))) == Partition((3, 2, 1, 1))
    assert rectangle(3, 2) == Partition((3, 3)) and ones(3) == Partition((1, 1, 1))


def test_pairs_and_boxes():
    pairs = partition_pairs(2)
    assert len(pairs) == 5 and pairs[0] == (Partition((2,)), EMPTY)
    assert list(Partition((2, 1)).boxes()) == [(1, 1), (1, 2), (2, 1)]
    assert len(partition_pairs(5)) == 36


def test_json_round_trip():
    lam = Partition((3, 1, 1))
    assert lam.to_json() == "[3, 1, 1]"
    assert Partition.from_json(lam.to_json()) == lam


@given(st.integers(0, 12).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_conjugate_involution_and_hooks(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size
    for b in lam.boxes():
        assert arm(lam, b) >= 0 and leg(lam, b) >= 0
