"""Colorful plane instances: a base grid with vertex colors and face-attached bridges."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .colorset import MAX_COLORS, ColorSet

Vertex = tuple[int, int]
Face = tuple[int, int]


class InstanceError(ValueError):
    """An instance violates one of its structural invariants."""


@dataclass(frozen=True)
class Bridge:
    """A bridge attached strictly inside one base-grid face.

    Face ``(i, j)`` is bounded by the grid vertices ``(i, j)``, ``(i, j+1)``,
    ``(i+1, j)`` and ``(i+1, j+1)``.
    """

    id: str
    face: Face
    colors: ColorSet


@dataclass(frozen=True)
class HostInstance:
    """A ``d_r x d_c`` grid with per-vertex colors and colored bridges.

    Vertex colors equal to the empty set are dropped on construction so that
    structural equality does not depend on how absent colors were written.
    """

    d_r: int
    d_c: int
    q: int
    vertex_colors: Mapping[Vertex, ColorSet] = field(default_factory=dict)
    bridges: tuple[Bridge, ...] = ()

    def __post_init__(self) -> None:
        if self.d_r < 2 or self.d_c < 2:
            raise InstanceError(f"grid must be at least 2x2, got {self.d_r}x{self.d_c}")
        if not 0 <= self.q <= MAX_COLORS:
            raise InstanceError(f"q={self.q} outside [0, {MAX_COLORS}]")
        palette = ColorSet.full(self.q)
        cleaned: dict[Vertex, ColorSet] = {}
        for (r, c), cs in sorted(self.vertex_colors.items()):
            if not (0 <= r < self.d_r and 0 <= c < self.d_c):
                raise InstanceError(f"vertex ({r},{c}) outside the grid")
            if not cs <= palette:
                raise InstanceError(f"vertex ({r},{c}) carries colors outside [{self.q}]")
            if cs:
                cleaned[(r, c)] = cs
        object.__setattr__(self, "vertex_colors", cleaned)
        seen: set[str] = set()
        for b in self.bridges:
            fr, fc = b.face
            if not (0 <= fr < self.d_r - 1 and 0 <= fc < self.d_c - 1):
                raise InstanceError(f"bridge {b.id} attached to face ({fr},{fc}) outside the grid")
            if not b.colors <= palette:
                raise InstanceError(f"bridge {b.id} carries colors outside [{self.q}]")
            if b.id in seen:
                raise InstanceError(f"duplicate bridge id {b.id}")
            seen.add(b.id)
        object.__setattr__(self, "bridges", tuple(sorted(self.bridges, key=lambda b: b.id)))

    @property
    def palette(self) -> ColorSet:
        return ColorSet.full(self.q)

    @cached_property
    def face_bits(self) -> dict[Face, int]:
        """Union of bridge palettes per face, as raw bitmasks, colorless faces omitted."""
        out: dict[Face, int] = {}
        for b in self.bridges:
            if b.colors:
                out[b.face] = out.get(b.face, 0) | b.colors.bits
        return out

    @cached_property
    def vertex_bits(self) -> dict[Vertex, int]:
        return {v: cs.bits for v, cs in self.vertex_colors.items()}

    @cached_property
    def total_bits(self) -> int:
        acc = 0
        for bits in self.face_bits.values():
            acc |= bits
        for bits in self.vertex_bits.values():
            acc |= bits
        return acc

    @cached_property
    def color_index(self):
        """Prefix-count index for rectangle color queries (built on first use)."""
        from .colorindex import ColorIndex

        return ColorIndex(self)

    def colors(self) -> ColorSet:
        """Every color used anywhere in the instance."""
        return ColorSet.from_bits(self.total_bits)

    def in_grid(self, v: Vertex) -> bool:
        return 0 <= v[0] < self.d_r and 0 <= v[1] < self.d_c
