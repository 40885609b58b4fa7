"""Path constructions on top of tile-confined packings.

``build_rainbow_mesh`` snakes ``m`` parallel paths through the column strips
and parks tiles inside the middle cells. ``fold_to_uniform`` folds those
snakes into a square mesh, and ``mesh_to_wall``/``select_homogeneous_wall``
turn a square mesh into a wall.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .colorset import ColorSet
from .geometry import GeometryError, Mesh, Path, Vertex, mesh_cycle, mesh_validate, tile_rects
from .homogenizer import Confinement, InsufficientMeshError, tile_bits
from .instance import HostInstance


@dataclass(frozen=True)
class RainbowMesh:
    mesh: Mesh
    middle_cycles: tuple[tuple[Vertex, ...], ...]
    collected: tuple[ColorSet, ...]
    captures: tuple[tuple[str, int], ...]
    trace: tuple[str, ...]

    @property
    def middle(self) -> int:
        return self.mesh.n // 2


class _Pen:
    """Draws an axis-parallel polyline vertex by vertex."""

    def __init__(self, start: Vertex) -> None:
        self.path: list[Vertex] = [start]

    def to(self, r: int, c: int) -> None:
        r0, c0 = self.path[-1]
        if r0 != r and c0 != c:
            raise GeometryError(f"diagonal move {(r0, c0)} -> {(r, c)}")
        if r0 != r:
            step = 1 if r > r0 else -1
            self.path.extend((x, c) for x in range(r0 + step, r + step, step))
        elif c0 != c:
            step = 1 if c > c0 else -1
            self.path.extend((r, x) for x in range(c0 + step, c + step, step))


def build_rainbow_mesh(inst: HostInstance, conf: Confinement, n: int, m: int) -> RainbowMesh:
    """An ``n x m`` mesh whose middle row cells each gather tiles of new colors.

    The verticals snake up through each column strip (left part) and back
    down (right part); the horizontals are short straight rows at the bottom
    of the first column strip and the top of the last one.
    """
    if n % 2 or n < 2 or m < 2:
        raise ValueError("need even n >= 2 and m >= 2")
    pC, pR = conf.packC, conf.packR
    p = pC.p
    half = n // 2
    if pR.p != p or p < max(2 * m, half + m):
        raise GeometryError(f"padding {p} too small for a {n}x{m} rainbow")
    if not pC.frames or not pR.frames:
        raise InsufficientMeshError("rainbow capture", "empty packing", 1, 0)
    y0, y1 = pR.frames[0][0], pR.frames[-1][1]
    ncols = len(pC.frames)
    got = [0] * m  # got[k] for cells k = 1..m-1
    captures: list[tuple[str, int]] = []
    trace: list[str] = []

    def capture(bits: int, label: str) -> int | None:
        for k in range(1, m):
            if bits & ~got[k]:
                got[k] |= bits
                captures.append((label, k))
                trace.append(f"CAPTURE tile={label} cell={k}")
                return k
        return None

    def x_left(i: int, h: int) -> int:
        return pC.frames[i][0] + p - m - 1 + h

    def x_right(i: int, h: int) -> int:
        return pC.frames[i][1] - (h - 1)

    pens = [_Pen((y0, x_left(0, h))) for h in range(1, m + 1)]
    for i in range(ncols):
        for t in tile_rects(pR, pC.strip(i), p):
            k = capture(tile_bits(inst, t), f"C{i + 1}/{t.label()}")
            if k is None:
                continue
            a, b, right = t.rect.r0, t.rect.r1, t.rect.c1
            for h in range(k + 1, m + 1):
                pen = pens[h - 1]
                pen.to(a - (h - 1), x_left(i, h))
                pen.to(a - (h - 1), right + (h - 1))
                pen.to(b + (h - 1), right + (h - 1))
                pen.to(b + (h - 1), x_left(i, h))
        if i == ncols - 1:
            for h in range(1, m + 1):
                pens[h - 1].to(y1, x_left(i, h))
            break
        for h in range(1, m + 1):
            pens[h - 1].to(y1 - (h - 1), x_left(i, h))
            pens[h - 1].to(y1 - (h - 1), x_right(i, h))
        nxt = pC.frames[i + 1][0]
        for j in range(len(pR.frames) - 1, -1, -1):
            between = [t for t in tile_rects(pC, pR.strip(j), p) if t.kind == "between" and t.index == (i, i + 1)]
            t = between[0]
            k = capture(tile_bits(inst, t), f"R{j + 1}/{t.label()}")
            if k is None:
                continue
            a, b = t.rect.r0, t.rect.r1
            for h in range(1, k + 1):
                pen = pens[h - 1]
                pen.to(b + (m - h), x_right(i, h))
                pen.to(b + (m - h), nxt + m - h)
                pen.to(a - (m - h), nxt + m - h)
                pen.to(a - (m - h), x_right(i, h))
        for h in range(1, m + 1):
            pens[h - 1].to(y0 + m - h, x_right(i, h))
            pens[h - 1].to(y0 + m - h, x_left(i + 1, h))
    first, last = 0, ncols - 1
    bottom = [tuple((y, c) for c in range(x_left(first, 1), x_left(first, m) + 1)) for y in range(y0, y0 + half)]
    top = [tuple((y, c) for c in range(x_left(last, 1), x_left(last, m) + 1)) for y in range(y1 - half + 1, y1 + 1)]
    mesh = Mesh(inst, tuple(bottom + top), tuple(tuple(pen.path) for pen in pens))
    verdict = mesh_validate(mesh)
    if not verdict.ok:
        raise GeometryError("rainbow mesh is malformed:\n" + verdict.text())
    cycles = tuple(tuple(mesh_cycle(mesh, half - 1, half, k - 1, k)) for k in range(1, m))
    return RainbowMesh(mesh, cycles, tuple(ColorSet.from_bits(g) for g in got[1:]), tuple(captures), tuple(trace))


# ---------------------------------------------------------------------------
# folding


def crossing(a: Sequence[Vertex], b: Sequence[Vertex]) -> Vertex:
    """The single common vertex of two paths."""
    common = set(a).intersection(b)
    if len(common) != 1:
        raise GeometryError(f"paths share {len(common)} vertices, expected exactly one")
    return next(iter(common))


def walk(path: Sequence[Vertex], u: Vertex, v: Vertex) -> list[Vertex]:
    """The subpath of ``path`` from ``u`` to ``v`` (in either direction)."""
    i, j = path.index(u), path.index(v)
    return list(path[i : j + 1]) if i <= j else list(path[j : i + 1][::-1])


def _chain(segments: Sequence[list[Vertex]]) -> Path:
    out: list[Vertex] = []
    for seg in segments:
        if out and seg and seg[0] == out[-1]:
            seg = seg[1:]
        out.extend(seg)
    return tuple(out)


def fold_to_uniform(inst: HostInstance, mesh: Mesh, *, check: bool = True) -> Mesh:
    """Fold a ``2N x (N^2-N)`` rainbow row mesh into a uniform ``N``-mesh.

    Vertical ``j`` of the result zigzags between the two middle rows, turning
    along the outer rows so that every new cell contains a middle cell.
    """
    from .verifier import verify_rainbow_row

    N = mesh.n // 2
    if mesh.n != 2 * N or N < 2 or mesh.m != N * N - N:
        raise ValueError(f"expected a 2N x (N^2-N) mesh, got {mesh.n} x {mesh.m}")
    if check:
        verdict = verify_rainbow_row(inst, mesh, interiors=True)
        if not verdict.ok:
            raise ValueError("input is not a rainbow row mesh:\n" + verdict.text())
    Q, P = mesh.horizontals, mesh.verticals

    def q(t: int) -> Path:
        return Q[t - 1]

    def pv(t: int) -> Path:
        return P[t - 1]

    def seg_on(path: Path, a: Path, b: Path) -> list[Vertex]:
        return walk(path, crossing(path, a), crossing(path, b))

    verticals = []
    for j in range(1, N + 1):
        parts = [seg_on(pv(j), q(N + 1), q(N))]
        for i in range(3, N + 1):
            if i % 2:
                pa, pb, row = pv((i - 3) * N + j), pv((i - 2) * N + 1 + N - j), q(j)
                parts += [seg_on(pa, q(N), row), walk(row, crossing(row, pa), crossing(row, pb)), seg_on(pb, row, q(N + 1))]
            else:
                pa, pb, row = pv((i - 3) * N + 1 + N - j), pv((i - 2) * N + j), q(N + j)
                parts += [seg_on(pa, q(N + 1), row), walk(row, crossing(row, pa), crossing(row, pb)), seg_on(pb, row, q(N))]
        verticals.append(_chain(parts))
    rows = [seg_on(q(N + 1), pv(1), pv(N)), seg_on(q(N), pv(1), pv(N))]
    for i in range(3, N + 1):
        if i % 2:
            rows.append(seg_on(q(N + 1), pv((i - 1) * N), pv((i - 2) * N + 1)))
        else:
            rows.append(seg_on(q(N), pv((i - 2) * N + 1), pv((i - 1) * N)))
    out = Mesh(inst, tuple(tuple(r) for r in rows), tuple(verticals))
    verdict = mesh_validate(out)
    if not verdict.ok:
        raise GeometryError("folded mesh is malformed:\n" + verdict.text())
    return out


# ---------------------------------------------------------------------------
# walls


def _forward_until(path: Sequence[Vertex], start: int, targets: set[Vertex], step: int) -> int:
    i = start
    while 0 <= i < len(path):
        if path[i] in targets:
            return i
        i += step
    raise GeometryError("path never reaches the target")


def _span(path: Sequence[Vertex], first: set[Vertex], last: set[Vertex]) -> Path:
    lo = min(i for i, v in enumerate(path) if v in first)
    hi = max(i for i, v in enumerate(path) if v in last)
    if hi < lo:
        raise GeometryError("trim targets out of order")
    return tuple(path[lo : hi + 1])


def mesh_to_wall(mesh: Mesh) -> Mesh:
    """Extract a ``l/2``-wall from the lower half of a square ``l``-mesh.

    Vertical ``i`` of the wall alternates between mesh verticals ``2i-1`` and
    ``2i``, switching sides along every horizontal it reaches.
    """
    ell = mesh.n
    if mesh.m != ell or ell % 2 or ell < 4:
        raise ValueError(f"need a square mesh of even size >= 4, got {mesh.n} x {mesh.m}")
    half = ell // 2
    Q, P = mesh.horizontals, mesh.verticals
    daggers = []
    for i in range(0, ell, 2):
        pair = (P[i], P[i + 1])
        cur = 0
        pos = _forward_until(pair[0], 0, set(Q[0]), 1)
        out: list[Vertex] = [pair[0][pos]]
        for j in range(1, half):
            path = pair[cur]
            row = Q[j]
            end = _forward_until(path, pos, set(row), 1)
            out.extend(path[pos + 1 : end + 1])
            other = pair[1 - cur]
            at = row.index(path[end])
            stop = _forward_until(row, at, set(other), 1 if cur == 0 else -1)
            sl = row[at + 1 : stop + 1] if cur == 0 else row[stop:at][::-1]
            out.extend(sl)
            cur = 1 - cur
            pos = pair[cur].index(row[stop])
        daggers.append(tuple(out))
    first, last = set(daggers[0]), set(daggers[-1])
    rows = tuple(_span(Q[j], first, last) for j in range(half))
    wall = Mesh(mesh.host, rows, tuple(daggers))
    verdict = mesh_validate(wall)
    if not verdict.ok:
        raise GeometryError("extracted wall is malformed:\n" + verdict.text())
    return wall


def select_homogeneous_wall(wall: Mesh) -> Mesh:
    """Keep every third horizontal and vertical, starting with the first."""
    if wall.n != wall.m or wall.n % 3:
        raise ValueError(f"need a square wall of size divisible by 3, got {wall.n} x {wall.m}")
    hs = wall.horizontals[::3]
    vs = wall.verticals[::3]
    h_first, h_last = set(hs[0]), set(hs[-1])
    v_first, v_last = set(vs[0]), set(vs[-1])
    rows = tuple(_span(h, v_first, v_last) for h in hs)
    cols = tuple(_span(v, h_first, h_last) for v in vs)
    out = Mesh(wall.host, rows, cols)
    verdict = mesh_validate(out)
    if not verdict.ok:
        raise GeometryError("selected wall is malformed:\n" + verdict.text())
    return out
