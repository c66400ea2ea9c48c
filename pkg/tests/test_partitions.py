import math
from itertools import permutations

import pytest

from deepcong.exact_arith import INF
from deepcong.partitions import (
    EMPTY,
    Partition,
    are_p_equivalent,
    enumerate_partitions,
    p_deprived_representative,
    p_equivalence_class,
    partition_stats,
)


def count_partitions(n):
    """Classic recursive counting oracle for p(n)."""
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        table[0][k] = 1
    for m in range(1, n + 1):
        for k in range(1, n + 1):
            table[m][k] = table[m][k - 1] + (table[m - k][k] if m >= k else 0)
    return table[n][n]


def cycle_type(perm):
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def splitting_closure(lam, p):
    """BFS oracle: close the set under single p-splitting moves and their
    inverses (merging p equal parts into one part scaled by p)."""
    frontier = {lam.parts}
    seen = set(frontier)
    while frontier:
        nxt = set()
        for parts in frontier:
            counts = {}
            for a in parts:
                counts[a] = counts.get(a, 0) + 1
            for a in set(parts):
                if a % p == 0:
                    rest = list(parts)
                    rest.remove(a)
                    split = tuple(sorted(rest + [a // p] * p, reverse=True))
                    if split not in seen:
                        seen.add(split)
                        nxt.add(split)
            for a, r in counts.items():
                if r >= p:
                    rest = list(parts)
                    for _ in range(p):
                        rest.remove(a)
                    merged = tuple(sorted(rest + [a * p], reverse=True))
                    if merged not in seen:
                        seen.add(merged)
                        nxt.add(merged)
        frontier = nxt
    return {Partition(t) for t in seen}


def test_stats_examples():
    stats = partition_stats(EMPTY, 5)
    assert (stats.z, stats.sign, stats.vp) == (1, 1, INF)
    stats = partition_stats(Partition((2, 1)), 2)
    assert stats.weight == 3
    assert stats.z == 2
    assert stats.sign == -1
    assert stats.vp == 0
    for p, k in ((2, 3), (3, 2), (5, 1)):
        assert Partition((p**k,)).vp(p) == k


def test_z_counts_permutations_by_cycle_type():
    for n in range(1, 8):
        counts = {}
        for perm in permutations(range(n)):
            t = cycle_type(perm)
            counts[t] = counts.get(t, 0) + 1
        for lam in enumerate_partitions(n):
            assert lam.z() * counts[lam.parts] == math.factorial(n)
            # sign from transposition parity
            assert lam.sign() == (-1) ** (n - len(lam.parts))


def test_enumeration_order_and_counts():
    assert enumerate_partitions(0) == [EMPTY]
    assert enumerate_partitions(1) == [Partition((1,))]
    four = enumerate_partitions(4)
    assert [q.parts for q in four] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    for n in range(13):
        assert len(enumerate_partitions(n)) == count_partitions(n)
    with pytest.raises(ValueError):
        enumerate_partitions(41)


def test_multiply_and_power():
    assert (Partition((3, 1)) * Partition((2, 1))).parts == (3, 2, 1, 1)
    assert (Partition((2,)) ** 3).parts == (2, 2, 2)
    lam = Partition((4, 2, 1))
    assert lam * EMPTY == lam
    assert lam**0 == EMPTY


def test_sign_and_vp_multiplicativity():
    pairs = [
        (Partition((3, 1)), Partition((2, 2))),
        (Partition((5,)), Partition((4, 1))),
        (Partition((2, 1, 1)), Partition((6, 3))),
    ]
    for lam, mu in pairs:
        assert (lam * mu).sign() == lam.sign() * mu.sign()
    for p in (2, 3):
        for k in range(4):
            lam = Partition((p * 3, p))
            # scaling every part by p**k raises the part valuation by k
            scaled = Partition(tuple(a * p**k for a in lam.parts))
            assert scaled.vp(p) == lam.vp(p) + k
            # repeating the whole partition p**k times raises the
            # repetition valuation by k
            assert (lam ** (p**k)).repetition_valuation(
                p
            ) == lam.repetition_valuation(p) + k


def test_repetition_valuation():
    assert Partition((3, 3, 1, 1)).repetition_valuation(2) == 1
    assert Partition((6, 2)).repetition_valuation(2) == 0
    assert Partition((2, 2, 2)).repetition_valuation(3) == 1
    from deepcong.exact_arith import INF

    assert EMPTY.repetition_valuation(5) == INF


def test_p_deprived_examples():
    assert p_deprived_representative(Partition((6, 2)), 2).parts == (3, 3, 1, 1)
    assert p_deprived_representative(Partition((4,)), 2).parts == (1, 1, 1, 1)
    rep = p_deprived_representative(Partition((9, 3, 2)), 3)
    assert rep == p_deprived_representative(rep, 3)  # idempotent


def test_class_examples():
    got = p_equivalence_class(Partition((3, 3, 1, 1)), 2)
    assert {m.parts for m in got} == {(6, 2), (3, 3, 2), (6, 1, 1), (3, 3, 1, 1)}
    assert {m.parts for m in p_equivalence_class(Partition((1, 1)), 2)} == {
        (2,),
        (1, 1),
    }
    assert [m.parts for m in p_equivalence_class(Partition((2, 1)), 3)] == [(2, 1)]


def test_are_p_equivalent():
    assert are_p_equivalent(Partition((6, 2)), Partition((3, 3, 2)), 2)
    lam = Partition((4, 3))
    assert are_p_equivalent(lam, lam, 5)
    assert not are_p_equivalent(Partition((2,)), Partition((1, 1)), 3)


def test_classes_partition_the_whole_set():
    for p in (2, 3, 5):
        for n in range(16):
            everyone = set(enumerate_partitions(n))
            seen = set()
            for lam in everyone:
                if p_deprived_representative(lam, p) != lam:
                    continue
                members = set(p_equivalence_class(lam, p))
                assert not (members & seen)
                seen |= members
            assert seen == everyone


def test_class_matches_bfs_closure():
    for p in (2, 3):
        for n in range(11):
            for lam in enumerate_partitions(n):
                assert set(p_equivalence_class(lam, p)) == splitting_closure(lam, p)


def test_odd_p_classes_have_constant_sign():
    for p in (3, 5):
        for n in range(13):
            for lam in enumerate_partitions(n):
                signs = {mu.sign() for mu in p_equivalence_class(lam, p)}
                assert len(signs) == 1
