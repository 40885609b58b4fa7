"""Meshes, windows, strips, paddings, tiles and enclosed regions on the base grid.

Conventions: grid vertex ``(r, c)`` sits on horizontal base path ``r`` and
vertical base path ``c``. Strip frames store absolute base-path indices. For
row strips "left to right" means increasing row index.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

from .colorset import ColorSet
from .instance import Face, HostInstance, Vertex
from .kernels import label_faces
from .verdict import OK, Verdict, violation

Path = tuple[Vertex, ...]
Orientation = Literal["column", "row"]


class GeometryError(ValueError):
    """Malformed geometric input (bad cycle, insufficient breadth, ...)."""


# ---------------------------------------------------------------------------
# meshes


@dataclass(frozen=True)
class Mesh:
    """Ordered horizontal and vertical paths inside a host instance."""

    host: HostInstance = field(compare=False, repr=False)
    horizontals: tuple[Path, ...]
    verticals: tuple[Path, ...]

    @property
    def n(self) -> int:
        return len(self.horizontals)

    @property
    def m(self) -> int:
        return len(self.verticals)

    def paths(self) -> Iterator[Path]:
        yield from self.horizontals
        yield from self.verticals

    def vertices(self) -> set[Vertex]:
        return {v for p in self.paths() for v in p}

    def edges(self) -> set[tuple[Vertex, Vertex]]:
        return {_edge(a, b) for p in self.paths() for a, b in zip(p, p[1:])}


def _edge(a: Vertex, b: Vertex) -> tuple[Vertex, Vertex]:
    return (a, b) if a <= b else (b, a)


def base_mesh(inst: HostInstance) -> Mesh:
    hs = tuple(tuple((r, c) for c in range(inst.d_c)) for r in range(inst.d_r))
    vs = tuple(tuple((r, c) for r in range(inst.d_r)) for c in range(inst.d_c))
    return Mesh(inst, hs, vs)


def window_mesh(inst: HostInstance, window: MeshWindow) -> Mesh:
    """The axis-aligned submesh of the base grid spanned by ``window``."""
    hs = tuple(
        tuple((r, c) for c in range(window.c0, window.c1 + 1)) for r in range(window.r0, window.r1 + 1)
    )
    vs = tuple(
        tuple((r, c) for r in range(window.r0, window.r1 + 1)) for c in range(window.c0, window.c1 + 1)
    )
    return Mesh(inst, hs, vs)


def _adjacent(a: Vertex, b: Vertex) -> bool:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


def _check_path(host: HostInstance, path: Sequence[Vertex]) -> str | None:
    if not path:
        return "empty"
    for v in path:
        if not host.in_grid(v):
            return f"vertex-outside-grid({v[0]},{v[1]})"
    for a, b in zip(path, path[1:]):
        if not _adjacent(a, b):
            return f"non-grid-edge({a[0]},{a[1]})-({b[0]},{b[1]})"
    if len(set(path)) != len(path):
        return "repeated-vertex"
    return None


def _order_check(paths: Sequence[Path], others: Sequence[Path]) -> tuple[int, str] | None:
    """Check that each path meets ``others`` in one contiguous block each, in order."""
    owner: dict[Vertex, int] = {}
    for j, p in enumerate(others):
        for v in p:
            owner[v] = j
    m = len(others)
    for i, p in enumerate(paths):
        if owner.get(p[0]) != 0 or owner.get(p[-1]) != m - 1:
            return i, "endpoints"
        seq: list[int] = []
        prev = None
        for v in p:
            j = owner.get(v)
            if j != prev:
                seq.append(-1 if j is None else j)
                prev = j
        hits = [j for j in seq if j >= 0]
        if hits != list(range(m)):
            return i, "order"
    return None


def mesh_validate(mesh: Mesh) -> Verdict:
    """Check the mesh axioms; report the first violated one with witness indices.

    Indices in witnesses are 1-based.
    """
    host = mesh.host
    if mesh.n == 0 or mesh.m == 0:
        return Verdict.of([violation("empty-mesh", mesh.n, mesh.m)])
    for kind, fam in (("h", mesh.horizontals), ("v", mesh.verticals)):
        for i, p in enumerate(fam):
            problem = _check_path(host, p)
            if problem:
                return Verdict.of([violation("not-a-grid-path", f"{kind}{i + 1}", problem)])
    for name, fam in (("horizontals-not-disjoint", mesh.horizontals), ("verticals-not-disjoint", mesh.verticals)):
        seen: dict[Vertex, int] = {}
        for i, p in enumerate(fam):
            for v in p:
                if v in seen:
                    return Verdict.of([violation(name, seen[v] + 1, i + 1)])
                seen[v] = i
    hpos = [{v: k for k, v in enumerate(p)} for p in mesh.horizontals]
    vpos = [{v: k for k, v in enumerate(p)} for p in mesh.verticals]
    for i, hp in enumerate(hpos):
        for j, vp in enumerate(vpos):
            common = hp.keys() & vp.keys()
            if not common:
                return Verdict.of([violation("intersection-not-a-path", i + 1, j + 1, "empty")])
            a = sorted(hp[v] for v in common)
            b = sorted(vp[v] for v in common)
            if a[-1] - a[0] != len(a) - 1 or b[-1] - b[0] != len(b) - 1:
                return Verdict.of([violation("intersection-not-a-path", i + 1, j + 1)])
    bad = _order_check(mesh.horizontals, mesh.verticals)
    if bad:
        return Verdict.of([violation("horizontal-order", bad[0] + 1, bad[1])])
    bad = _order_check(mesh.verticals, mesh.horizontals)
    if bad:
        return Verdict.of([violation("vertical-order", bad[0] + 1, bad[1])])
    return OK


class MeshFormatError(ValueError):
    pass


def format_mesh(mesh: Mesh) -> str:
    out = [f"mesh {mesh.n} {mesh.m}"]
    for tag, fam in (("h", mesh.horizontals), ("v", mesh.verticals)):
        for i, p in enumerate(fam, start=1):
            out.append(f"{tag} {i}: " + " ".join(f"({r},{c})" for r, c in p))
    return "\n".join(out) + "\n"


def parse_mesh(text: str, host: HostInstance) -> Mesh:
    """Inverse of :func:`format_mesh`; every vertex must lie in ``host``."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise MeshFormatError("empty mesh file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "mesh" or not head[1].isdigit() or not head[2].isdigit():
        raise MeshFormatError("expected header 'mesh <n> <m>'")
    n, m = int(head[1]), int(head[2])
    hs: dict[int, Path] = {}
    vs: dict[int, Path] = {}
    for lineno, ln in enumerate(lines[1:], start=2):
        label, _, body = ln.partition(":")
        parts = label.split()
        if len(parts) != 2 or parts[0] not in ("h", "v") or not parts[1].isdigit():
            raise MeshFormatError(f"line {lineno}: expected 'h <i>:' or 'v <j>:'")
        verts = []
        for tok in body.split():
            if not (tok.startswith("(") and tok.endswith(")")):
                raise MeshFormatError(f"line {lineno}: bad vertex token {tok!r}")
            rc = tok[1:-1].split(",")
            if len(rc) != 2 or not all(x.strip().lstrip("-").isdigit() for x in rc):
                raise MeshFormatError(f"line {lineno}: bad vertex token {tok!r}")
            v = (int(rc[0]), int(rc[1]))
            if not host.in_grid(v):
                raise MeshFormatError(f"line {lineno}: vertex {v} outside the {host.d_r}x{host.d_c} grid")
            verts.append(v)
        target = hs if parts[0] == "h" else vs
        idx = int(parts[1])
        if idx in target:
            raise MeshFormatError(f"line {lineno}: duplicate path {parts[0]} {idx}")
        target[idx] = tuple(verts)
    if sorted(hs) != list(range(1, n + 1)) or sorted(vs) != list(range(1, m + 1)):
        raise MeshFormatError("path indices do not match the header")
    return Mesh(host, tuple(hs[i] for i in range(1, n + 1)), tuple(vs[j] for j in range(1, m + 1)))


# ---------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class Region:
    """Faces and grid vertices of a compass or interior.

    ``boundary`` holds the vertices of the bounding cycle; they count only for
    compass-style queries.
    """

    faces: frozenset[Face]
    vertices: frozenset[Vertex]
    boundary: frozenset[Vertex] = frozenset()

    def __or__(self, other: Region) -> Region:
        return Region(self.faces | other.faces, self.vertices | other.vertices, self.boundary | other.boundary)


EMPTY_REGION = Region(frozenset(), frozenset())


def cycle_edges(cycle: Sequence[Vertex]) -> list[tuple[Vertex, Vertex]]:
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def _normalize_cycle(cycle: Sequence[Vertex]) -> list[Vertex]:
    cyc = list(cycle)
    if len(cyc) > 1 and cyc[0] == cyc[-1]:
        cyc.pop()
    if len(cyc) < 4:
        raise GeometryError("a grid cycle needs at least 4 vertices")
    if len(set(cyc)) != len(cyc):
        raise GeometryError("cycle is not simple")
    for a, b in cycle_edges(cyc):
        if not _adjacent(a, b):
            raise GeometryError(f"cycle is not closed along grid edges at {a}-{b}")
    return cyc


def block_edges(
    edges: Iterable[tuple[Vertex, Vertex]], r0: int, c0: int, nr: int, nc: int
) -> tuple[np.ndarray, np.ndarray]:
    """Blocked-edge arrays for the face grid with top-left face ``(r0, c0)``."""
    bh = np.zeros((nr + 1, nc), dtype=np.uint8)
    bv = np.zeros((nr, nc + 1), dtype=np.uint8)
    for a, b in edges:
        (ra, ca), (rb, cb) = _edge(a, b)
        if ra == rb:
            r, c = ra - r0, ca - c0
            if 0 <= r <= nr and 0 <= c < nc:
                bh[r, c] = 1
        else:
            r, c = ra - r0, ca - c0
            if 0 <= r < nr and 0 <= c <= nc:
                bv[r, c] = 1
    return bh, bv


def region_colors(inst: HostInstance, region: Region, include_boundary_vertices: bool = False) -> ColorSet:
    """Union of bridge palettes over the faces and vertex colors over the vertices."""
    bits = 0
    fb = inst.face_bits
    if len(region.faces) < len(fb):
        for f in region.faces:
            bits |= fb.get(f, 0)
    else:
        for f, b in fb.items():
            if f in region.faces:
                bits |= b
    vb = inst.vertex_bits
    verts = region.vertices | region.boundary if include_boundary_vertices else region.vertices
    if len(verts) < len(vb):
        for v in verts:
            bits |= vb.get(v, 0)
    else:
        for v, b in vb.items():
            if v in verts:
                bits |= b
    return ColorSet.from_bits(bits)


@dataclass(frozen=True)
class Rect:
    """The rectangle cycle through corner rows ``r0 < r1`` and columns ``c0 < c1``."""

    r0: int
    r1: int
    c0: int
    c1: int

    def cycle(self) -> list[Vertex]:
        top = [(self.r0, c) for c in range(self.c0, self.c1)]
        right = [(r, self.c1) for r in range(self.r0, self.r1)]
        bottom = [(self.r1, c) for c in range(self.c1, self.c0, -1)]
        left = [(r, self.c0) for r in range(self.r1, self.r0, -1)]
        return top + right + bottom + left

    def interior(self) -> Region:
        faces = frozenset((r, c) for r in range(self.r0, self.r1) for c in range(self.c0, self.c1))
        verts = frozenset(
            (r, c) for r in range(self.r0 + 1, self.r1) for c in range(self.c0 + 1, self.c1)
        )
        return Region(faces, verts, frozenset(self.cycle()))

    def compass(self) -> Region:
        inner = self.interior()
        return Region(inner.faces, inner.vertices | inner.boundary, inner.boundary)

    def open_bits(self, inst: HostInstance) -> int:
        return inst.color_index.open_rect(self.r0, self.r1, self.c0, self.c1)

    def closed_bits(self, inst: HostInstance) -> int:
        return inst.color_index.closed_rect(self.r0, self.r1, self.c0, self.c1)


# ---------------------------------------------------------------------------
# windows, strips, packings


@dataclass(frozen=True)
class MeshWindow:
    """Axis-aligned submesh: base rows ``r0..r1`` and base columns ``c0..c1``."""

    r0: int
    r1: int
    c0: int
    c1: int

    def __post_init__(self) -> None:
        if self.r1 - self.r0 < 1 or self.c1 - self.c0 < 1:
            raise GeometryError(f"window {self} must span at least two rows and two columns")

    @classmethod
    def of(cls, inst: HostInstance) -> MeshWindow:
        return cls(0, inst.d_r - 1, 0, inst.d_c - 1)

    def extent(self, orientation: Orientation) -> int:
        """Number of base paths available to strips of the given type."""
        return self.c1 - self.c0 + 1 if orientation == "column" else self.r1 - self.r0 + 1

    def span(self, orientation: Orientation) -> tuple[int, int]:
        return (self.c0, self.c1) if orientation == "column" else (self.r0, self.r1)

    def contains(self, other: MeshWindow) -> bool:
        return self.r0 <= other.r0 and other.r1 <= self.r1 and self.c0 <= other.c0 and other.c1 <= self.c1

    def within(self, inst: HostInstance) -> bool:
        return 0 <= self.r0 and self.r1 < inst.d_r and 0 <= self.c0 and self.c1 < inst.d_c


def frame_rect(window: MeshWindow, orientation: Orientation, lo: int, hi: int) -> Rect:
    """Boundary rectangle of the frame ``lo..hi`` stretched across ``window``."""
    if orientation == "column":
        return Rect(window.r0, window.r1, lo, hi)
    return Rect(lo, hi, window.c0, window.c1)


@dataclass(frozen=True)
class Strip:
    window: MeshWindow
    orientation: Orientation
    lo: int
    hi: int

    def __post_init__(self) -> None:
        a, b = self.window.span(self.orientation)
        if not a <= self.lo < self.hi <= b:
            raise GeometryError(f"frame [{self.lo},{self.hi}] not inside window span [{a},{b}] or breadth < 2")

    @property
    def breadth(self) -> int:
        return self.hi - self.lo + 1

    def rect(self) -> Rect:
        return frame_rect(self.window, self.orientation, self.lo, self.hi)


@dataclass(frozen=True)
class PaddedStrip:
    strip: Strip
    p: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.strip.breadth - 2 * self.p < 1:
            raise GeometryError(f"cannot pad a strip of breadth {self.strip.breadth} by {self.p}")

    @property
    def left_buffer(self) -> tuple[int, int]:
        return self.strip.lo, self.strip.lo + self.p - 1

    @property
    def core(self) -> tuple[int, int]:
        return self.strip.lo + self.p, self.strip.hi - self.p

    @property
    def right_buffer(self) -> tuple[int, int]:
        return self.strip.hi - self.p + 1, self.strip.hi

    def core_rect(self) -> Rect:
        lo, hi = self.core
        if hi <= lo:
            raise GeometryError("core of breadth 1 has no compass")
        return frame_rect(self.strip.window, self.strip.orientation, lo, hi)

    @property
    def inner_paths(self) -> tuple[int, int]:
        """Innermost paths of the left and right buffers."""
        if self.p < 1:
            raise GeometryError("unpadded strip has no buffer paths")
        return self.strip.lo + self.p - 1, self.strip.hi - self.p + 1


def pad(s: Strip, k: int, b: int) -> PaddedStrip:
    if k < 0 or b < 0:
        raise GeometryError("padding and core width must be non-negative")
    if s.breadth < 2 * k + b:
        raise GeometryError(f"breadth {s.breadth} < 2*{k}+{b}")
    return PaddedStrip(s, k)


@dataclass(frozen=True)
class StripPacking:
    """Pairwise-disjoint same-type strips in left-to-right order, each p-padded."""

    window: MeshWindow
    orientation: Orientation
    frames: tuple[tuple[int, int], ...]
    p: int
    b: int

    def __post_init__(self) -> None:
        a, z = self.window.span(self.orientation)
        prev = a - 1
        for lo, hi in self.frames:
            if lo <= prev:
                raise GeometryError("frames overlap or are out of order")
            if hi > z:
                raise GeometryError("frame leaves the window")
            if hi - lo + 1 < max(2, 2 * self.p + self.b):
                raise GeometryError(f"frame [{lo},{hi}] narrower than 2p+b={2 * self.p + self.b}")
            prev = hi

    def __len__(self) -> int:
        return len(self.frames)

    @classmethod
    def unchecked(cls, window: MeshWindow, orientation: Orientation, frames, p: int, b: int) -> StripPacking:
        """Build without validation, for feeding malformed packings to checkers."""
        obj = object.__new__(cls)
        for name, val in (("window", window), ("orientation", orientation), ("frames", tuple(frames)), ("p", p), ("b", b)):
            object.__setattr__(obj, name, val)
        return obj

    @property
    def strips(self) -> tuple[PaddedStrip, ...]:
        return tuple(PaddedStrip(Strip(self.window, self.orientation, lo, hi), self.p) for lo, hi in self.frames)

    def strip(self, i: int) -> PaddedStrip:
        lo, hi = self.frames[i]
        return PaddedStrip(Strip(self.window, self.orientation, lo, hi), self.p)

    def with_frames(self, frames: Iterable[tuple[int, int]]) -> StripPacking:
        return replace(self, frames=tuple(frames))

    def breadths(self) -> list[int]:
        return [hi - lo + 1 for lo, hi in self.frames]


def trim(pk: StripPacking) -> StripPacking:
    """Replace every strip by its p-core; the result is unpadded."""
    frames = tuple((lo + pk.p, hi - pk.p) for lo, hi in pk.frames)
    for lo, hi in frames:
        if hi - lo + 1 < 2:
            raise GeometryError("trimmed core too narrow to be a strip")
    return StripPacking(pk.window, pk.orientation, frames, 0, pk.b)


def repad(pk: StripPacking, p: int, b: int | None = None) -> StripPacking:
    return replace(pk, p=p, b=pk.b if b is None else b)


def crop(window: MeshWindow, pk: StripPacking) -> MeshWindow:
    """Smallest submesh of ``window`` containing every frame path of ``pk``."""
    if not pk.frames:
        raise GeometryError("cannot crop to an empty packing")
    lo, hi = pk.frames[0][0], pk.frames[-1][1]
    if pk.orientation == "column":
        return replace(window, c0=lo, c1=hi)
    return replace(window, r0=lo, r1=hi)


def restrict(pk: StripPacking, window: MeshWindow) -> StripPacking:
    """The same frames read over another window (cropping or lifting)."""
    return replace(pk, window=window)


def lift(window_outer: MeshWindow, pk: StripPacking) -> StripPacking:
    if not window_outer.contains(pk.window):
        raise GeometryError("lift target does not contain the packing window")
    return restrict(pk, window_outer)


def strip_region(window: MeshWindow, s: Strip) -> Region:
    """Compass of the frame boundary: all faces and vertices between the frame extremes."""
    return frame_rect(window, s.orientation, s.lo, s.hi).compass()


# ---------------------------------------------------------------------------
# tiles and boundary


@dataclass(frozen=True)
class Tile:
    """A tile of a strip: ``kind`` is ``"Z"`` (one crossing strip) or
    ``"between"`` (two consecutive crossing strips); ``index`` holds their
    positions in the crossing packing."""

    kind: str
    index: tuple[int, ...]
    rect: Rect

    def label(self) -> str:
        return f"{self.kind}:" + "-".join(str(i + 1) for i in self.index)


def tile_rects(pkZ: StripPacking, s: PaddedStrip, k: int) -> list[Tile]:
    """Tiles of ``s`` cut out by the ``k``-padded packing ``pkZ``, left to right."""
    if pkZ.orientation == s.strip.orientation:
        raise GeometryError("tiles need a crossing packing of the other type")
    if not pkZ.frames:
        raise GeometryError("tiles need a nonempty crossing packing")
    if k < 1:
        raise GeometryError("tiles need buffers of width at least 1")
    a, b = s.inner_paths
    out: list[Tile] = []
    for z, (lo, hi) in enumerate(pkZ.frames):
        if z:
            prev_hi = pkZ.frames[z - 1][1]
            out.append(Tile("between", (z - 1, z), _cross(s, prev_hi, lo, a, b)))
        if hi - lo + 1 < 2 * k:
            raise GeometryError("crossing strip too narrow for its buffers")
        out.append(Tile("Z", (z,), _cross(s, lo + k - 1, hi - k + 1, a, b)))
    return out


def _cross(s: PaddedStrip, zlo: int, zhi: int, a: int, b: int) -> Rect:
    if s.strip.orientation == "column":
        return Rect(zlo, zhi, a, b)
    return Rect(a, b, zlo, zhi)


def tiles(pkZ: StripPacking, s: PaddedStrip, k: int) -> list[tuple[Tile, Region]]:
    return [(t, t.rect.interior()) for t in tile_rects(pkZ, s, k)]


def boundary_rects(pkC: StripPacking, pkR: StripPacking) -> list[Rect]:
    if not pkC.frames or not pkR.frames:
        raise GeometryError("boundary needs two nonempty packings")
    out = []
    for pk in (pkC, pkR):
        idx = sorted({0, len(pk.frames) - 1})
        for i in idx:
            out.append(pk.strip(i).strip.rect())
    return out


def boundary_strips(pkC: StripPacking, pkR: StripPacking) -> Region:
    region = EMPTY_REGION
    for rect in boundary_rects(pkC, pkR):
        region = region | rect.compass()
    return Region(region.faces, region.vertices)


# ---------------------------------------------------------------------------
# enclosures of cycles and mesh cells


@dataclass(frozen=True)
class Enclosure:
    """Bounding-box-local masks of the faces and vertices strictly inside a cycle."""

    r0: int
    c0: int
    faces: np.ndarray
    vertices: np.ndarray
    cycle: tuple[Vertex, ...]

    def region(self) -> Region:
        fr, fc = np.nonzero(self.faces)
        vr, vc = np.nonzero(self.vertices)
        return Region(
            frozenset(zip((fr + self.r0).tolist(), (fc + self.c0).tolist())),
            frozenset(zip((vr + self.r0).tolist(), (vc + self.c0).tolist())),
            frozenset(self.cycle),
        )

    def bits(self, inst: HostInstance, include_boundary_vertices: bool = False) -> int:
        verts = self.vertices
        if include_boundary_vertices:
            verts = verts.copy()
            for r, c in self.cycle:
                verts[r - self.r0, c - self.c0] = True
        return inst.color_index.mask_bits(self.r0, self.c0, self.faces, verts)

    @property
    def face_count(self) -> int:
        return int(self.faces.sum())


def enclose(inst: HostInstance, cycle: Sequence[Vertex]) -> Enclosure:
    """Flood-fill the faces of the cycle's bounding box from outside; the rest is enclosed."""
    cyc = _normalize_cycle(cycle)
    for v in cyc:
        if not inst.in_grid(v):
            raise GeometryError(f"cycle vertex {v} outside the grid")
    rows = [r for r, _ in cyc]
    cols = [c for _, c in cyc]
    r0, c0 = min(rows), min(cols)
    nr, nc = max(rows) - r0, max(cols) - c0
    bh, bv = block_edges(cycle_edges(cyc), r0, c0, nr, nc)
    inside = label_faces(bh, bv) > 0
    on = np.zeros((nr + 1, nc + 1), dtype=bool)
    for r, c in cyc:
        on[r - r0, c - c0] = True
    verts = np.zeros((nr + 1, nc + 1), dtype=bool)
    verts[1:nr, 1:nc] = inside[: nr - 1, : nc - 1] & ~on[1:nr, 1:nc]
    return Enclosure(r0, c0, inside, verts, tuple(cyc))


def cycle_interior(inst: HostInstance, cycle: Sequence[Vertex]) -> Region:
    """Faces and grid vertices strictly enclosed by a simple grid cycle."""
    return enclose(inst, cycle).region()


def mesh_cycle(mesh: Mesh, i1: int, i2: int, j1: int, j2: int) -> list[Vertex]:
    """The cycle bounded by horizontals ``i1 < i2`` and verticals ``j1 < j2`` (0-based)."""
    if not (0 <= i1 < i2 < mesh.n and 0 <= j1 < mesh.m and j1 < j2 < mesh.m):
        raise GeometryError(f"no cycle between h{i1 + 1},h{i2 + 1} and v{j1 + 1},v{j2 + 1}")
    h1, h2 = mesh.horizontals[i1], mesh.horizontals[i2]
    v1, v2 = mesh.verticals[j1], mesh.verticals[j2]
    sv1, sv2, sh2 = set(v1), set(v2), set(h2)
    a = max(k for k, v in enumerate(h1) if v in sv1)
    b = min(k for k, v in enumerate(h1) if v in sv2)
    pos_v2 = v2.index(h1[b])
    d = min(k for k, v in enumerate(v2) if v in sh2)
    pos_h2 = h2.index(v2[d])
    f = max(k for k, v in enumerate(h2) if v in sv1)
    lo_v1, hi_v1 = v1.index(h1[a]), v1.index(h2[f])
    if not (a < b and pos_v2 < d and f < pos_h2 and lo_v1 < hi_v1):
        raise GeometryError("mesh paths do not bound a cycle")
    cyc = list(h1[a : b + 1]) + list(v2[pos_v2 + 1 : d + 1]) + list(h2[f:pos_h2][::-1])
    cyc += list(v1[lo_v1 + 1 : hi_v1][::-1])
    if len(set(cyc)) != len(cyc):
        raise GeometryError("mesh paths do not bound a simple cycle")
    return cyc


def cell_cycle(mesh: Mesh, i: int, j: int) -> list[Vertex]:
    """Boundary of cell ``(i, j)``, between horizontals i,i+1 and verticals j,j+1."""
    return mesh_cycle(mesh, i, i + 1, j, j + 1)


def perimeter_cycle(mesh: Mesh) -> list[Vertex]:
    return mesh_cycle(mesh, 0, mesh.n - 1, 0, mesh.m - 1)


def mesh_compass_bits(mesh: Mesh) -> int:
    """Colors of the mesh compass: the perimeter cycle plus everything it encloses."""
    inst = mesh.host
    if mesh.n < 2 or mesh.m < 2:
        bits = 0
        for v in mesh.vertices():
            bits |= inst.vertex_bits.get(v, 0)
        return bits
    return enclose(inst, perimeter_cycle(mesh)).bits(inst, include_boundary_vertices=True)


def cell_interior_bits(mesh: Mesh, i: int, j: int) -> int:
    return enclose(mesh.host, cell_cycle(mesh, i, j)).bits(mesh.host)
