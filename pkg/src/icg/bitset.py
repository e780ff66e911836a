"""Immutable vertex sets backed by integer bitmasks."""

from __future__ import annotations

from typing import Iterable, Iterator


class VertexSet:
    """A frozen set of vertex ids drawn from the universe 0..capacity-1.

    Wraps a Python int bitmask, so capacity is soft: it bounds which ids
    are admitted and defines the complement universe, nothing more.
    """

    __slots__ = ("_mask", "_capacity")

    def __init__(self, capacity: int, members: Iterable[int] = ()) -> None:
        if capacity < 0:
            raise ValueError("capacity must be nonnegative")
        mask = 0
        for v in members:
            if not 0 <= v < capacity:
                raise ValueError(f"vertex {v} outside universe 0..{capacity - 1}")
            mask |= 1 << v
        self._mask = mask
        self._capacity = capacity

    @classmethod
    def from_mask(cls, capacity: int, mask: int) -> "VertexSet":
        if mask < 0 or mask >> capacity:
            raise ValueError("mask has bits outside the universe")
        out = cls.__new__(cls)
        out._mask = mask
        out._capacity = capacity
        return out

    @property
    def mask(self) -> int:
        return self._mask

    @property
    def capacity(self) -> int:
        return self._capacity

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self._capacity and self._mask >> v & 1 == 1

    def __iter__(self) -> Iterator[int]:
        mask = self._mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self._mask.bit_count()

    def __bool__(self) -> bool:
        return self._mask != 0

    def _coerce(self, other: "VertexSet") -> int:
        if not isinstance(other, VertexSet):
            raise TypeError(f"expected VertexSet, got {type(other).__name__}")
        if other._capacity != self._capacity:
            raise ValueError("mismatched universes")
        return other._mask

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_mask(self._capacity, self._mask & self._coerce(other))

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_mask(self._capacity, self._mask | self._coerce(other))

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_mask(self._capacity, self._mask & ~self._coerce(other))

    def __xor__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_mask(self._capacity, self._mask ^ self._coerce(other))

    def complement(self) -> "VertexSet":
        universe = (1 << self._capacity) - 1
        return VertexSet.from_mask(self._capacity, universe & ~self._mask)

    def issubset(self, other: "VertexSet") -> bool:
        return self._mask & ~self._coerce(other) == 0

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self._mask & self._coerce(other) == 0

    def add(self, v: int) -> "VertexSet":
        if not 0 <= v < self._capacity:
            raise ValueError(f"vertex {v} outside universe")
        return VertexSet.from_mask(self._capacity, self._mask | 1 << v)

    def remove(self, v: int) -> "VertexSet":
        if v not in self:
            raise KeyError(v)
        return VertexSet.from_mask(self._capacity, self._mask & ~(1 << v))

    def min(self) -> int:
        if not self._mask:
            raise ValueError("empty set has no minimum")
        return (self._mask & -self._mask).bit_length() - 1

    def to_list(self) -> list[int]:
        return list(self)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VertexSet)
            and self._mask == other._mask
            and self._capacity == other._capacity
        )

    def __hash__(self) -> int:
        return hash((self._mask, self._capacity))

    def __repr__(self) -> str:
        return f"VertexSet({{{', '.join(map(str, self))}}})"
