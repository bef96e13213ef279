"""van Emde Boas tree over a power-of-two integer universe.

Supports exactly the operations the seed index needs: insert, delete,
contains, and min, each in O(log log U) word operations.  Clusters are
allocated lazily so sparse occupancy of a large universe stays cheap.
"""

from __future__ import annotations

from .errors import InputError


def next_power_of_two(x: int) -> int:
    return 1 << max(1, (x - 1).bit_length())


class _Node:
    __slots__ = ("bits", "lo_bits", "lo_mask", "min", "max", "summary", "clusters")

    def __init__(self, bits: int):
        self.bits = bits
        self.lo_bits = bits // 2
        self.lo_mask = (1 << self.lo_bits) - 1
        self.min: int | None = None
        self.max: int | None = None
        self.summary: _Node | None = None
        self.clusters: dict[int, _Node] = {}

    # Classic recursive vEB; min is not stored in clusters, max is.

    def member(self, x: int) -> bool:
        if x == self.min or x == self.max:
            return True
        if self.bits == 1:
            return False
        c = self.clusters.get(x >> self.lo_bits)
        return c is not None and c.member(x & self.lo_mask)

    def insert(self, x: int) -> None:
        if self.min is None:
            self.min = self.max = x
            return
        if x < self.min:
            x, self.min = self.min, x
        if self.bits > 1:
            h, l = x >> self.lo_bits, x & self.lo_mask
            c = self.clusters.get(h)
            if c is None:
                c = self.clusters[h] = _Node(self.lo_bits)
            if c.min is None:
                if self.summary is None:
                    self.summary = _Node(self.bits - self.lo_bits)
                self.summary.insert(h)
            c.insert(l)
        if x > self.max:
            self.max = x

    def delete(self, x: int) -> None:
        if self.min == self.max:
            self.min = self.max = None
            return
        if self.bits == 1:
            self.min = self.max = 1 - x
            return
        if x == self.min:
            h = self.summary.min
            x = (h << self.lo_bits) | self.clusters[h].min
            self.min = x
        h, l = x >> self.lo_bits, x & self.lo_mask
        c = self.clusters[h]
        c.delete(l)
        if c.min is None:
            del self.clusters[h]
            self.summary.delete(h)
            if self.summary.min is None:
                self.summary = None
            if x == self.max:
                if self.summary is None:
                    self.max = self.min
                else:
                    sh = self.summary.max
                    self.max = (sh << self.lo_bits) | self.clusters[sh].max
        elif x == self.max:
            self.max = (h << self.lo_bits) | c.max


class VebTree:
    """Integer set over [1, U-1] where U is the smallest power of two > bound."""

    def __init__(self, bound: int):
        if bound < 1:
            raise InputError(f"universe bound must be >= 1, got {bound}")
        self.universe = next_power_of_two(bound + 1)
        self._root = _Node(self.universe.bit_length() - 1)
        self._size = 0

    def _check(self, x: int) -> int:
        if not isinstance(x, int) or not 1 <= x < self.universe:
            raise InputError(f"key {x} outside universe [1, {self.universe - 1}]")
        return x

    def contains(self, x: int) -> bool:
        return self._root.member(self._check(x))

    def insert(self, x: int) -> None:
        self._check(x)
        if not self._root.member(x):
            self._root.insert(x)
            self._size += 1

    def delete(self, x: int) -> None:
        self._check(x)
        if self._root.member(x):
            self._root.delete(x)
            self._size -= 1

    def min(self) -> int | None:
        return self._root.min

    def __len__(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._size > 0
