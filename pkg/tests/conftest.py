import random

import pytest

from homowall.colorset import ColorSet
from homowall.instance import Bridge, HostInstance


def random_instance(rng: random.Random, d_r: int, d_c: int, q: int, density: float = 0.4) -> HostInstance:
    bridges = []
    for r in range(d_r - 1):
        for c in range(d_c - 1):
            if rng.random() < density:
                colors = ColorSet(x for x in range(1, q + 1) if rng.random() < 0.5)
                bridges.append(Bridge(f"b{r}_{c}_{len(bridges)}", (r, c), colors))
    vcolors = {}
    for r in range(d_r):
        for c in range(d_c):
            if q and rng.random() < density / 3:
                vcolors[(r, c)] = ColorSet([rng.randint(1, q)])
    return HostInstance(d_r, d_c, q, vcolors, tuple(bridges))


@pytest.fixture
def rng():
    return random.Random(20240607)
