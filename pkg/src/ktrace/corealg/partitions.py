"""Partitions, r-tuples of partitions and the combinatorics on them."""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import factorial


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts if p)
        if any(a < b for a, b in zip(parts, parts[1:])) or any(p < 0 for p in parts):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-indexed part, zero past the end."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        return _conjugate(self)

    transpose = conjugate

    def boxes(self):
        """1-indexed boxes (row i, column j)."""
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield i, j

    def multiplicities(self) -> dict:
        out = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")"


@lru_cache(maxsize=None)
def _conjugate(mu) -> Partition:
    if not mu:
        return Partition()
    return Partition(sum(1 for p in mu if p > j) for j in range(mu[0]))


EMPTY = Partition()


def arm_leg(mu: Partition, nu: Partition, box) -> tuple:
    """``(a_mu(box), l_nu(box))`` with a_mu = mu_i - j and l_nu = nu'_j - i; may be negative."""
    i, j = box
    return mu.part(i) - j, nu.conjugate().part(j) - i


def arm(mu: Partition, box) -> int:
    return mu.part(box[0]) - box[1]


def leg(mu: Partition, box) -> int:
    return mu.conjugate().part(box[1]) - box[0]


@lru_cache(maxsize=None)
def z_factor(mu) -> int:
    """Centralizer order prod_k k^{m_k} m_k!."""
    out = 1
    for k, m in Partition(mu).multiplicities().items():
        out *= k ** m * factorial(m)
    return out


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def partitions_list(n: int, maxlen=None) -> tuple:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(
        Partition(p) for p in _partitions(n, n) if maxlen is None or len(p) <= maxlen
    )


def enumerate_partitions(n: int, maxlen=None):
    """Partitions of ``n`` with at most ``maxlen`` parts, reverse lexicographic order."""
    return iter(partitions_list(n, maxlen))


def partitions_upto(d: int, maxlen=None):
    for n in range(d + 1):
        yield from partitions_list(n, maxlen)


class PartitionTuple(tuple):
    """An r-tuple of partitions."""

    def __new__(cls, parts):
        return super().__new__(cls, tuple(Partition(p) for p in parts))

    @property
    def size(self) -> int:
        return sum(p.size for p in self)

    @property
    def rank(self) -> int:
        return len(self)

    def __repr__(self):
        return "PartitionTuple(" + ", ".join(str(p) for p in self) + ")"


@lru_cache(maxsize=None)
def _compositions(n: int, r: int) -> tuple:
    if r == 0:
        return ((),) if n == 0 else ()
    out = []
    for first in range(n + 1):
        for rest in _compositions(n - first, r - 1):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_tuples(r: int, n: int):
    """All r-tuples of partitions of total size n, lexicographic product order."""
    if r < 0 or n < 0:
        raise ValueError("r and n must be nonnegative")
    # Lexicographic order on the tuple of partitions: size of the first
    # component descending keeps (n), ... before smaller first entries.
    out = []
    for sizes in _compositions(n, r):
        for combo in product(*(partitions_list(s) for s in sizes)):
            out.append(PartitionTuple(combo))
    out.sort(key=lambda t: tuple(tuple(-x for x in p) + (0,) for p in t))
    return iter(out)
