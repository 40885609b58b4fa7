# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled face-component labelling over a grid with blocked edges."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline void _push(int[::1] stack, int *top, unsigned char[:, ::1] seen,
                       int[:, ::1] labels, int r, int c, int nc, int lab):
    seen[r, c] = 1
    labels[r, c] = lab
    stack[top[0]] = r * nc + c
    top[0] += 1


cdef void _fill(unsigned char[:, ::1] bh, unsigned char[:, ::1] bv,
                unsigned char[:, ::1] seen, int[:, ::1] labels, int[::1] stack,
                int top, int nr, int nc, int lab):
    cdef int cell, r, c
    while top > 0:
        top -= 1
        cell = stack[top]
        r = cell // nc
        c = cell - r * nc
        if r > 0 and not bh[r, c] and not seen[r - 1, c]:
            _push(stack, &top, seen, labels, r - 1, c, nc, lab)
        if r + 1 < nr and not bh[r + 1, c] and not seen[r + 1, c]:
            _push(stack, &top, seen, labels, r + 1, c, nc, lab)
        if c > 0 and not bv[r, c] and not seen[r, c - 1]:
            _push(stack, &top, seen, labels, r, c - 1, nc, lab)
        if c + 1 < nc and not bv[r, c + 1] and not seen[r, c + 1]:
            _push(stack, &top, seen, labels, r, c + 1, nc, lab)


def label_faces(block_h, block_v):
    """Label the face components of an ``nr x nc`` face grid.

    ``block_h`` has shape ``(nr+1, nc)`` and ``block_v`` shape ``(nr, nc+1)``;
    a nonzero entry blocks the edge between the two faces it separates, with
    the outermost rows/columns separating faces from the outside. Label 0 is
    the component of the outside; the rest are numbered from 1 in row-major
    order of their first face.
    """
    cdef unsigned char[:, ::1] bh = np.ascontiguousarray(block_h, dtype=np.uint8)
    cdef unsigned char[:, ::1] bv = np.ascontiguousarray(block_v, dtype=np.uint8)
    cdef int nr = bv.shape[0]
    cdef int nc = bh.shape[1]
    if bh.shape[0] != nr + 1 or bv.shape[1] != nc + 1:
        raise ValueError("blocked-edge arrays have inconsistent shapes")
    out = np.full((nr, nc), -1, dtype=np.int32)
    cdef int[:, ::1] labels = out
    cdef unsigned char[:, ::1] seen = np.zeros((nr, nc), dtype=np.uint8)
    cdef int[::1] stack = np.empty(max(nr * nc, 1), dtype=np.int32)
    cdef int top = 0
    cdef int r, c, lab
    for c in range(nc):
        if not bh[0, c] and not seen[0, c]:
            _push(stack, &top, seen, labels, 0, c, nc, 0)
        if not bh[nr, c] and not seen[nr - 1, c]:
            _push(stack, &top, seen, labels, nr - 1, c, nc, 0)
    for r in range(nr):
        if not bv[r, 0] and not seen[r, 0]:
            _push(stack, &top, seen, labels, r, 0, nc, 0)
        if not bv[r, nc] and not seen[r, nc - 1]:
            _push(stack, &top, seen, labels, r, nc - 1, nc, 0)
    _fill(bh, bv, seen, labels, stack, top, nr, nc, 0)
    lab = 0
    for r in range(nr):
        for c in range(nc):
            if not seen[r, c]:
                lab += 1
                top = 0
                _push(stack, &top, seen, labels, r, c, nc, lab)
                _fill(bh, bv, seen, labels, stack, top, nr, nc, lab)
    return out
