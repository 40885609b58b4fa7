"""Pure-Python face-component labelling, used when the extension is absent."""

from __future__ import annotations

import numpy as np


def label_faces(block_h, block_v) -> np.ndarray:
    """Label the face components of an ``nr x nc`` face grid.

    Same contract as the compiled kernel: ``block_h`` is ``(nr+1, nc)``,
    ``block_v`` is ``(nr, nc+1)``, label 0 is the outside component and the
    others are numbered from 1 in row-major order of their first face.
    """
    bh = np.asarray(block_h, dtype=bool)
    bv = np.asarray(block_v, dtype=bool)
    nr, nc = bv.shape[0], bh.shape[1]
    if bh.shape != (nr + 1, nc) or bv.shape != (nr, nc + 1):
        raise ValueError("blocked-edge arrays have inconsistent shapes")
    bh_rows = bh.tolist()
    bv_rows = bv.tolist()
    labels = [[-1] * nc for _ in range(nr)]

    def fill(stack: list[tuple[int, int]], lab: int) -> None:
        while stack:
            r, c = stack.pop()
            row = labels[r]
            if r > 0 and not bh_rows[r][c] and labels[r - 1][c] < 0:
                labels[r - 1][c] = lab
                stack.append((r - 1, c))
            if r + 1 < nr and not bh_rows[r + 1][c] and labels[r + 1][c] < 0:
                labels[r + 1][c] = lab
                stack.append((r + 1, c))
            if c > 0 and not bv_rows[r][c] and row[c - 1] < 0:
                row[c - 1] = lab
                stack.append((r, c - 1))
            if c + 1 < nc and not bv_rows[r][c + 1] and row[c + 1] < 0:
                row[c + 1] = lab
                stack.append((r, c + 1))

    seeds: list[tuple[int, int]] = []
    for c in range(nc):
        if not bh_rows[0][c]:
            seeds.append((0, c))
        if not bh_rows[nr][c]:
            seeds.append((nr - 1, c))
    for r in range(nr):
        if not bv_rows[r][0]:
            seeds.append((r, 0))
        if not bv_rows[r][nc]:
            seeds.append((r, nc - 1))
    stack = []
    for r, c in seeds:
        if labels[r][c] < 0:
            labels[r][c] = 0
            stack.append((r, c))
    fill(stack, 0)
    lab = 0
    for r in range(nr):
        row = labels[r]
        for c in range(nc):
            if row[c] < 0:
                lab += 1
                row[c] = lab
                fill([(r, c)], lab)
    return np.array(labels, dtype=np.int32).reshape(nr, nc)
