"""Per-color prefix counts for constant-time rectangle color queries."""

from __future__ import annotations

import numpy as np

from .colorset import iter_bits


class ColorIndex:
    """Answers "which colors occur in this axis-aligned block" in O(#colors).

    Faces and vertices are counted separately so that closed rectangles
    (compass-style) and open rectangles (interior-style) can be assembled.
    """

    def __init__(self, inst) -> None:
        self.d_r, self.d_c = inst.d_r, inst.d_c
        self.colors = np.array(list(iter_bits(inst.total_bits)), dtype=np.int64)
        k = len(self.colors)
        slot = {int(c): i for i, c in enumerate(self.colors)}
        faces = np.zeros((k, self.d_r - 1, self.d_c - 1), dtype=np.int32)
        verts = np.zeros((k, self.d_r, self.d_c), dtype=np.int32)
        for (r, c), bits in inst.face_bits.items():
            for color in iter_bits(bits):
                faces[slot[color], r, c] = 1
        for (r, c), bits in inst.vertex_bits.items():
            for color in iter_bits(bits):
                verts[slot[color], r, c] = 1
        self._f = faces.astype(bool)
        self._v = verts.astype(bool)
        self._pf = self._prefix(faces)
        self._pv = self._prefix(verts)
        self._weights = [1 << int(c) for c in self.colors]

    @staticmethod
    def _prefix(arr: np.ndarray) -> np.ndarray:
        k, h, w = arr.shape
        out = np.zeros((k, h + 1, w + 1), dtype=np.int64)
        if h and w:
            out[:, 1:, 1:] = arr.cumsum(axis=1).cumsum(axis=2)
        return out

    def _query(self, pre: np.ndarray, r0: int, r1: int, c0: int, c1: int, h: int, w: int) -> int:
        r0, c0 = max(r0, 0), max(c0, 0)
        r1, c1 = min(r1, h - 1), min(c1, w - 1)
        if r1 < r0 or c1 < c0 or not self._weights:
            return 0
        counts = pre[:, r1 + 1, c1 + 1] - pre[:, r0, c1 + 1] - pre[:, r1 + 1, c0] + pre[:, r0, c0]
        bits = 0
        for i in np.flatnonzero(counts):
            bits |= self._weights[i]
        return bits

    def face_bits(self, r0: int, r1: int, c0: int, c1: int) -> int:
        """Colors on bridges in faces with row in [r0, r1] and col in [c0, c1]."""
        return self._query(self._pf, r0, r1, c0, c1, self.d_r - 1, self.d_c - 1)

    def vertex_bits(self, r0: int, r1: int, c0: int, c1: int) -> int:
        """Colors on grid vertices with row in [r0, r1] and col in [c0, c1]."""
        return self._query(self._pv, r0, r1, c0, c1, self.d_r, self.d_c)

    def closed_rect(self, r0: int, r1: int, c0: int, c1: int) -> int:
        """Colors of the compass of the rectangle with corner rows r0..r1, cols c0..c1."""
        return self.face_bits(r0, r1 - 1, c0, c1 - 1) | self.vertex_bits(r0, r1, c0, c1)

    def open_rect(self, r0: int, r1: int, c0: int, c1: int) -> int:
        """Colors strictly inside the rectangle with corner rows r0..r1, cols c0..c1."""
        return self.face_bits(r0, r1 - 1, c0, c1 - 1) | self.vertex_bits(r0 + 1, r1 - 1, c0 + 1, c1 - 1)

    def mask_bits(self, r0: int, c0: int, face_mask: np.ndarray, vert_mask: np.ndarray) -> int:
        """Colors on faces/vertices selected by boolean masks anchored at ``(r0, c0)``.

        ``face_mask`` covers faces ``r0..r0+h-1``; ``vert_mask`` covers vertices
        ``r0..r0+h`` (one row and column larger).
        """
        h, w = face_mask.shape
        bits = 0
        for i, weight in enumerate(self._weights):
            if self._f[i, r0:r0 + h, c0:c0 + w][face_mask].any() or self._v[i, r0:r0 + h + 1, c0:c0 + w + 1][
                vert_mask
            ].any():
                bits |= weight
        return bits
