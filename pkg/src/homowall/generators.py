"""Seeded instance generators: random, adversarial and fully colored."""

from __future__ import annotations

import math
import random
from typing import Literal

from .colorset import ColorSet
from .instance import Bridge, HostInstance

AdversarialMode = Literal["perimeter-heavy", "buffer-stripe", "single-tile"]
ADVERSARIAL_MODES: tuple[str, ...] = ("perimeter-heavy", "buffer-stripe", "single-tile")


def _check(d: int, q: int) -> None:
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    if q < 0:
        raise ValueError(f"q must be non-negative, got {q}")


def _bid(r: int, c: int) -> str:
    return f"f{r}_{c}"


def gen_random(
    d: int,
    q: int,
    face_density: float,
    palette_density: float,
    seed: int,
    vertex_density: float = 0.0,
) -> HostInstance:
    """A ``d x d`` instance where each face gets a bridge with probability
    ``face_density`` and each bridge holds each color with probability
    ``palette_density``.

    ``vertex_density`` optionally colors grid vertices the same way.
    """
    _check(d, q)
    for name, val in (("face_density", face_density), ("palette_density", palette_density),
                      ("vertex_density", vertex_density)):
        if not 0.0 <= val <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {val}")
    rng = random.Random(seed)

    def palette() -> ColorSet:
        return ColorSet(c for c in range(1, q + 1) if rng.random() < palette_density)

    bridges = []
    for r in range(d - 1):
        for c in range(d - 1):
            if rng.random() < face_density:
                bridges.append(Bridge(_bid(r, c), (r, c), palette()))
    vcolors = {}
    if vertex_density > 0.0:
        for r in range(d):
            for c in range(d):
                if rng.random() < vertex_density:
                    vcolors[(r, c)] = palette()
    return HostInstance(d, d, q, vcolors, tuple(bridges))


def gen_uniform(d: int, q: int) -> HostInstance:
    """Every face carries a bridge holding the full palette ``[q]``."""
    _check(d, q)
    full = ColorSet.full(q)
    bridges = tuple(Bridge(_bid(r, c), (r, c), full) for r in range(d - 1) for c in range(d - 1))
    return HostInstance(d, d, q, {}, bridges)


def ring_width(d: int) -> int:
    return math.ceil(d / 10)


def gen_adversarial(d: int, q: int, mode: str, seed: int) -> HostInstance:
    """Instances that concentrate colors where strip machinery struggles.

    ``perimeter-heavy`` puts every colored bridge into the outermost
    ``ceil(d/10)`` rings of faces. ``buffer-stripe`` gives each color its own
    one-face-wide column of faces. ``single-tile`` puts color 1 into exactly
    one face.
    """
    _check(d, q)
    rng = random.Random(seed)
    faces = d - 1
    bridges: list[Bridge] = []
    if mode == "perimeter-heavy":
        w = ring_width(d)
        for r in range(faces):
            for c in range(faces):
                inner = w <= r < d - 1 - w and w <= c < d - 1 - w
                if inner or q == 0 or rng.random() >= 0.5:
                    continue
                colors = ColorSet(x for x in range(1, q + 1) if rng.random() < 0.5)
                if not colors:
                    colors = ColorSet([rng.randint(1, q)])
                bridges.append(Bridge(_bid(r, c), (r, c), colors))
    elif mode == "buffer-stripe":
        if q > faces:
            raise ValueError(f"buffer-stripe needs q <= d-1, got q={q}, d={d}")
        columns = sorted(rng.sample(range(faces), q))
        for color, c in enumerate(columns, start=1):
            for r in range(faces):
                bridges.append(Bridge(_bid(r, c), (r, c), ColorSet([color])))
    elif mode == "single-tile":
        if q >= 1:
            r, c = rng.randrange(faces), rng.randrange(faces)
            bridges.append(Bridge(_bid(r, c), (r, c), ColorSet([1])))
    else:
        raise ValueError(f"unknown adversarial mode {mode!r}")
    return HostInstance(d, d, q, {}, tuple(bridges))
