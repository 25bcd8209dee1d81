import threading
from functools import lru_cache

import pytest

from mexid import partitions
from mexid.partitions import (
    ColoredDistinctPartition,
    Partition,
    d2_counts,
    d2_parity_counts,
    enumerate_colored_distinct,
    enumerate_partitions,
    iter_distinct_parts,
    p,
    q_distinct,
    triangular,
)
from mexid.series import euler_product, invert, neg_q_product


def naive_partitions(n, largest=None):
    """Plain recursive oracle, largest part first."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in naive_partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def count_bounded(n, k):
    """Partitions of n with parts <= k (textbook recurrence)."""
    if n == 0:
        return 1
    if n < 0 or k == 0:
        return 0
    return count_bounded(n - k, k) + count_bounded(n, k - 1)


def test_partition_type():
    pi = Partition((3, 1, 1))
    assert pi.n == 5 and len(pi) == 3 and str(pi) == "3+1+1"
    assert Partition().n == 0
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_enumerate_four():
    got = [pi.parts for pi in enumerate_partitions(4)]
    assert got == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_enumerate_zero_and_seven():
    assert [pi.parts for pi in enumerate_partitions(0)] == [()]
    assert sum(1 for _ in enumerate_partitions(7)) == 15 == p(7)
    assert list(enumerate_partitions(-1)) == []


@pytest.mark.parametrize("n", range(0, 19))
def test_enumeration_matches_naive_order(n):
    assert [pi.parts for pi in enumerate_partitions(n)] == list(naive_partitions(n))


def test_enumeration_count_matches_p():
    for n in range(46):
        assert sum(1 for _ in partitions.iter_partition_parts(n)) == p(n)


def test_p_values():
    assert p(4) == 5
    assert p(-2) == 0
    assert p(0) == 1
    assert p(50) == 204226 == count_bounded(50, 50)
    assert p(200) == count_bounded(200, 200)


def test_p_matches_series():
    coeffs = invert(euler_product(300)).coeffs
    assert [p(n) for n in range(301)] == list(coeffs)


def test_q_distinct():
    assert q_distinct(2) == 1
    assert q_distinct(0) == 1
    assert q_distinct(6) == 4
    assert q_distinct(-3) == 0
    assert [q_distinct(n) for n in range(301)] == list(neg_q_product(300).coeffs)
    for n in range(25):
        assert q_distinct(n) == sum(1 for _ in iter_distinct_parts(n))


def test_reset_cache():
    p(120)
    partitions.reset_cache()
    assert len(partitions._p_cache) == 1
    assert p(100) == 190569292
    assert q_distinct(30) == 296


def test_concurrent_readers():
    partitions.reset_cache()
    results = {}

    def work(i):
        results[i] = [p(n) for n in range(150, 0, -7)] + [q_distinct(90)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    expected = [count_bounded(n, n) for n in range(150, 0, -7)] + [q_distinct(90)]
    assert all(v == expected for v in results.values())


def test_colored_type():
    c = ColoredDistinctPartition((2,), (2,))
    assert c.n == 4 and c.num_parts == 2
    assert str(ColoredDistinctPartition((3, 1), (1,))) == "3_1+1_2+1_1"
    with pytest.raises(ValueError):
        ColoredDistinctPartition((1, 1), ())


def test_colored_enumeration_four():
    items = list(enumerate_colored_distinct(4))
    assert len(items) == 9
    assert len(set(items)) == 9
    odd = sorted(str(c) for c in items if c.num_parts % 2)
    even = sorted(str(c) for c in items if c.num_parts % 2 == 0)
    assert odd == sorted(["4_2", "4_1", "2_2+1_2+1_1", "2_1+1_2+1_1"])
    assert even == sorted(["3_2+1_2", "3_2+1_1", "3_1+1_2", "3_1+1_1", "2_2+2_1"])


def test_colored_enumeration_zero():
    items = list(enumerate_colored_distinct(0))
    assert items == [ColoredDistinctPartition((), ())]
    assert items[0].num_parts == 0


def test_colored_enumeration_five_against_series():
    plus = neg_q_product(5) ** 2
    minus = euler_product(5) ** 2
    items = list(enumerate_colored_distinct(5))
    even = sum(1 for c in items if c.num_parts % 2 == 0)
    odd = len(items) - even
    assert 2 * even == plus[5] + minus[5]
    assert 2 * odd == plus[5] - minus[5]


def test_d2_counts():
    assert d2_counts(4) == (9, 5, 4)
    assert d2_counts(0) == (1, 1, 0)
    assert d2_counts(1) == (2, 0, 2)
    for n in range(12):
        items = list(enumerate_colored_distinct(n))
        even = sum(1 for c in items if c.num_parts % 2 == 0)
        assert d2_counts(n) == (len(items), even, len(items) - even)


def test_d2_against_products():
    plus = neg_q_product(30) ** 2
    minus = euler_product(30) ** 2
    for n in range(31):
        d2, e, o = d2_counts(n)
        assert d2 == plus[n]
        assert e - o == minus[n]


def test_d2_parity_counts_agree_with_enumeration():
    table = d2_parity_counts(30)
    for n in range(31):
        assert table[n] == d2_counts(n)[1:]


def test_triangular():
    assert triangular(0) == 0
    assert triangular(3) == 6
    assert triangular(20) == 210
    with pytest.raises(ValueError):
        triangular(-1)
