"""Integer partitions, their permutation statistics, and p-equivalence.

A partition is a weakly decreasing tuple of positive integers; the empty
tuple is the unique partition of 0. The p-splitting move replaces a part
p*u by p copies of u; p-equivalence is the closure of that move. Every
class has a unique representative with no part divisible by p, and the
class of such a representative factors over its distinct part values,
which is how classes are enumerated here (a brute-force closure over
single moves is kept in the test suite as an oracle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .exact_arith import INF, _vp_int

DEFAULT_WEIGHT_BOUND = 40


class Partition:
    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(sorted(parts, reverse=True))
        if parts and parts[-1] < 1:
            raise ValueError("parts must be positive integers")
        if any(not isinstance(a, int) for a in parts):
            raise ValueError("parts must be integers")
        self.parts = parts

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> dict:
        """Map part value -> number of occurrences, descending part order."""
        out = {}
        for a in self.parts:
            out[a] = out.get(a, 0) + 1
        return out

    def z(self) -> int:
        """Centralizer order of a permutation with this cycle structure:
        product of a**r_a * r_a! over part values a."""
        result = 1
        for a, r in self.multiplicities().items():
            result *= a**r * math.factorial(r)
        return result

    def sign(self) -> int:
        """Sign of a permutation with this cycle structure."""
        return -1 if (self.weight - len(self.parts)) % 2 else 1

    def vp(self, p: int):
        """Minimum p-adic valuation over the parts; INF for the empty partition."""
        if not self.parts:
            return INF
        return min(_vp_int(a, p) for a in self.parts)

    def repetition_valuation(self, p: int):
        """Largest v such that the partition is a p**v-fold repetition of
        another partition: the minimum p-adic valuation over the part
        multiplicities. INF for the empty partition.

        This, not vp, is the depth gained by the congruence-of-powers
        argument: f over a p**v-fold repetition is a p**v-th ring power.
        """
        if not self.parts:
            return INF
        return min(_vp_int(r, p) for r in self.multiplicities().values())

    def __mul__(self, other: "Partition") -> "Partition":
        return Partition(self.parts + other.parts)

    def __pow__(self, k: int) -> "Partition":
        if k < 0:
            raise ValueError("negative powers undefined")
        return Partition(self.parts * k)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other: "Partition"):
        # canonical order: ascending weight, then descending lexicographic
        return (self.weight, tuple(-a for a in self.parts)) < (
            other.weight,
            tuple(-a for a in other.parts),
        )

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


EMPTY = Partition()


@dataclass(frozen=True)
class PartitionStats:
    weight: int
    multiplicities: tuple
    z: int
    sign: int
    vp: object


def partition_stats(lam: Partition, p: int) -> PartitionStats:
    return PartitionStats(
        weight=lam.weight,
        multiplicities=tuple(sorted(lam.multiplicities().items())),
        z=lam.z(),
        sign=lam.sign(),
        vp=lam.vp(p),
    )


def _check_bound(n: int, max_weight: int):
    if n > max_weight:
        raise ValueError(f"weight {n} exceeds the configured bound {max_weight}")


@lru_cache(maxsize=None)
def _partition_tuples(n: int, maxpart: int):
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partition_tuples(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int, max_weight: int = DEFAULT_WEIGHT_BOUND):
    """All partitions of n, in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_bound(n, max_weight)
    return [Partition(t) for t in _partition_tuples(n, n if n else 1)]


def p_deprived_representative(lam: Partition, p: int) -> Partition:
    """Replace every part u * p**j (p not dividing u) by p**j copies of u.

    The result has no part divisible by p and is the canonical
    representative of the p-equivalence class of lam.
    """
    parts = []
    for a in lam.parts:
        j = 0
        while a % p == 0:
            a //= p
            j += 1
        parts.extend([a] * p**j)
    return Partition(parts)


@lru_cache(maxsize=None)
def _p_power_partition_tuples(r: int, p: int, max_power: int):
    """Partitions of r with all parts powers of p, parts bounded by p**max_power."""
    if r == 0:
        return ((),)
    out = []
    power = max_power
    while p**power > r:
        power -= 1
    for j in range(power, -1, -1):
        for rest in _p_power_partition_tuples(r - p**j, p, j):
            out.append((p**j,) + rest)
    return tuple(out)


def p_equivalence_class(
    lam: Partition, p: int, max_weight: int = DEFAULT_WEIGHT_BOUND
):
    """The full p-equivalence class of lam, canonically ordered.

    Built multiplicatively: for each distinct part value u (prime to p,
    with multiplicity r) of the p-deprived representative, the u-block of
    any class member is u times a partition of r into powers of p; the
    class is the set of products of one block per u.
    """
    _check_bound(lam.weight, max_weight)
    rep = p_deprived_representative(lam, p)
    blocks = []
    for u, r in sorted(rep.multiplicities().items()):
        power = 0
        while p**power <= r:
            power += 1
        scaled = [
            Partition(tuple(u * w for w in t))
            for t in _p_power_partition_tuples(r, p, power)
        ]
        blocks.append(scaled)
    members = [EMPTY]
    for block in blocks:
        members = [m * b for m in members for b in block]
    return sorted(members)


def are_p_equivalent(lam: Partition, mu: Partition, p: int) -> bool:
    return lam.weight == mu.weight and p_deprived_representative(
        lam, p
    ) == p_deprived_representative(mu, p)
