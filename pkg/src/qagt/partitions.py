"""Integer partitions with Macdonald's Young-diagram conventions.

Rows are indexed by ``i`` (growing downwards) and columns by ``j``
(growing rightwards), both starting at 1.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterator, NamedTuple


class Box(NamedTuple):
    i: int
    j: int


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Indexing with :meth:`part` is 1-based and returns 0 past the end, which
    is what the arm/leg formulas need for boxes outside the diagram.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return "∅" if not self else "(" + ",".join(map(str, self)) + ")"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> Partition:
        return conjugate(self)

    def boxes(self) -> Iterator[Box]:
        """Boxes in row-major order."""
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield Box(i, j)

    def to_json(self) -> str:
        return json.dumps(list(self))

    @classmethod
    def from_json(cls, s: str) -> Partition:
        return cls(json.loads(s))


EMPTY = Partition()


@lru_cache(maxsize=None)
def conjugate(lam: Partition) -> Partition:
    if not lam:
        return EMPTY
    return Partition(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def arm(lam: Partition, box) -> int:
    i, j = box
    return lam.part(i) - j


def leg(lam: Partition, box) -> int:
    i, j = box
    return conjugate(lam).part(j) - i


@lru_cache(maxsize=None)
def _enumerate(n: int, largest: int) -> tuple:
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _enumerate(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def enumerate_partitions(n: int) -> list:
    """All partitions of ``n`` in reverse-lexicographic order.

    ``(n)`` comes first and ``(1^n)`` last; this fixes the row order of
    every Gram matrix.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return list(_enumerate(n, n))


def partition_pairs(n: int) -> list:
    """Pairs ``(lam, mu)`` with ``|lam| + |mu| = n``, grouped by ``|lam|`` descending."""
    out = []
    for k in range(n, -1, -1):
        for lam in enumerate_partitions(k):
            for mu in enumerate_partitions(n - k):
                out.append((lam, mu))
    return out


def rectangle(r: int, s: int) -> Partition:
    """The partition ``(r^s)``: ``s`` rows of length ``r``."""
    return Partition((r,) * s)


def ones(n: int) -> Partition:
    return Partition((1,) * n)
