"""Fixed-width bit sets for object and attribute sets.

A table row, a column, an extent and an intent are all just sets of small
indices, so everything downstream works on int masks.  Set algebra on masks
is word-parallel, which matters because closures sit in the innermost loops.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class BitSet:
    """Immutable set of indices in ``[0, width)`` backed by an int mask.

    Operations never mutate; they return new instances.  Mixing widths is a
    contract violation and raises ``ValueError``.
    """

    __slots__ = ("mask", "width")

    def __init__(self, width: int, mask: int = 0):
        if width < 0:
            raise ValueError("width must be nonnegative")
        if mask < 0 or mask >> width:
            raise ValueError(f"mask {mask:#x} does not fit width {width}")
        self.mask = mask
        self.width = width

    @classmethod
    def empty(cls, width: int) -> "BitSet":
        return cls(width, 0)

    @classmethod
    def full(cls, width: int) -> "BitSet":
        return cls(width, (1 << width) - 1)

    @classmethod
    def from_indices(cls, width: int, indices: Iterable[int]) -> "BitSet":
        mask = 0
        for i in indices:
            if not 0 <= i < width:
                raise ValueError(f"index {i} out of range for width {width}")
            mask |= 1 << i
        return cls(width, mask)

    def _check(self, other: "BitSet") -> None:
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")

    def add(self, i: int) -> "BitSet":
        if not 0 <= i < self.width:
            raise ValueError(f"index {i} out of range for width {self.width}")
        return BitSet(self.width, self.mask | (1 << i))

    def remove(self, i: int) -> "BitSet":
        if not 0 <= i < self.width:
            raise ValueError(f"index {i} out of range for width {self.width}")
        return BitSet(self.width, self.mask & ~(1 << i))

    def invert(self) -> "BitSet":
        return BitSet(self.width, self.mask ^ ((1 << self.width) - 1))

    def issubset(self, other: "BitSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "BitSet") -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    def __and__(self, other: "BitSet") -> "BitSet":
        self._check(other)
        return BitSet(self.width, self.mask & other.mask)

    def __or__(self, other: "BitSet") -> "BitSet":
        self._check(other)
        return BitSet(self.width, self.mask | other.mask)

    def __sub__(self, other: "BitSet") -> "BitSet":
        self._check(other)
        return BitSet(self.width, self.mask & ~other.mask)

    def __le__(self, other: "BitSet") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "BitSet") -> bool:
        self._check(other)
        return self.mask != other.mask and self.mask & ~other.mask == 0

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.width and bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitSet)
            and self.width == other.width
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.width, self.mask))

    def indices(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return f"BitSet({self.width}, {{{', '.join(map(str, self))}}})"
