"""Immutable color sets over the palette ``{1, ..., q}`` stored as an int bitmask."""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_COLORS = 1024


class ColorSet:
    """A set of colors, bit ``c`` of ``bits`` set iff color ``c`` is a member.

    Bit 0 is never used; colors start at 1.
    """

    __slots__ = ("_bits",)

    def __init__(self, colors: Iterable[int] = ()) -> None:
        bits = 0
        for c in colors:
            if not 1 <= c <= MAX_COLORS:
                raise ValueError(f"color {c} outside [1, {MAX_COLORS}]")
            bits |= 1 << c
        self._bits = bits

    @classmethod
    def from_bits(cls, bits: int) -> ColorSet:
        if bits < 0 or bits & 1 or bits >> (MAX_COLORS + 1):
            raise ValueError("bitmask does not describe colors in [1, 1024]")
        obj = cls.__new__(cls)
        obj._bits = bits
        return obj

    @classmethod
    def full(cls, q: int) -> ColorSet:
        """The whole palette ``[q]``."""
        if not 0 <= q <= MAX_COLORS:
            raise ValueError(f"q={q} outside [0, {MAX_COLORS}]")
        return cls.from_bits(((1 << q) - 1) << 1)

    @property
    def bits(self) -> int:
        return self._bits

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self._bits)

    def __len__(self) -> int:
        return self._bits.bit_count()

    def __bool__(self) -> bool:
        return self._bits != 0

    def __contains__(self, color: object) -> bool:
        return isinstance(color, int) and color > 0 and (self._bits >> color) & 1 == 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ColorSet):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("ColorSet", self._bits))

    def __or__(self, other: ColorSet) -> ColorSet:
        return ColorSet.from_bits(self._bits | other._bits)

    def __and__(self, other: ColorSet) -> ColorSet:
        return ColorSet.from_bits(self._bits & other._bits)

    def __sub__(self, other: ColorSet) -> ColorSet:
        return ColorSet.from_bits(self._bits & ~other._bits)

    def __le__(self, other: ColorSet) -> bool:
        return self._bits & ~other._bits == 0

    def __ge__(self, other: ColorSet) -> bool:
        return other <= self

    def __lt__(self, other: ColorSet) -> bool:
        return self <= other and self._bits != other._bits

    def __gt__(self, other: ColorSet) -> bool:
        return other < self

    def issubset(self, other: ColorSet) -> bool:
        return self <= other

    def max_color(self) -> int:
        """Largest member, 0 for the empty set."""
        return self._bits.bit_length() - 1 if self._bits else 0

    def format(self) -> str:
        """Render as ``{1,2,5}``; the empty set is ``{}``."""
        return "{" + ",".join(map(str, self)) + "}"

    def __repr__(self) -> str:
        return f"ColorSet({self.format()})"


EMPTY = ColorSet()


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the set bit positions of ``bits`` in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def bits_of(colors: Iterable[int]) -> int:
    out = 0
    for c in colors:
        out |= 1 << c
    return out
