"""Independent checks of pipeline outputs.

Nothing here reuses the decisions made while building; colors are recomputed
from scratch (flood-filled enclosures or explicit region sets) and every
failure becomes a ``Violation`` with 1-based witnesses.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .colorset import ColorSet, iter_bits
from .geometry import (
    GeometryError,
    Mesh,
    StripPacking,
    Vertex,
    cell_cycle,
    enclose,
    frame_rect,
    mesh_compass_bits,
    mesh_cycle,
    mesh_validate,
    region_colors,
    tile_rects,
)
from .instance import HostInstance
from .verdict import OK, Verdict, violation


def _fmt(bits: int) -> str:
    return ColorSet.from_bits(bits).format()


def verify_uniform(inst: HostInstance, mesh: Mesh) -> Verdict:
    """Every cell interior carries every color of the mesh compass."""
    compass = mesh_compass_bits(mesh)
    out = []
    for i in range(mesh.n - 1):
        for j in range(mesh.m - 1):
            inner = enclose(inst, cell_cycle(mesh, i, j)).bits(inst)
            if compass & ~inner:
                out.append(violation("cell-missing-colors", f"cell({i + 1},{j + 1})", f"missing={_fmt(compass & ~inner)}"))
    return Verdict.of(out)


def verify_rainbow_row(inst: HostInstance, rainbow, *, interiors: bool = False) -> Verdict:
    """Each middle-row cell sees all compass colors; with ``interiors`` strictly inside."""
    mesh = rainbow.mesh if hasattr(rainbow, "mesh") else rainbow
    if mesh.n % 2 or mesh.n < 2 or mesh.m < 2:
        return Verdict.of([violation("rainbow-shape", mesh.n, mesh.m)])
    half = mesh.n // 2
    compass = mesh_compass_bits(mesh)
    out = []
    for k in range(1, mesh.m):
        enc = enclose(inst, mesh_cycle(mesh, half - 1, half, k - 1, k))
        seen = enc.bits(inst, include_boundary_vertices=True)
        if compass & ~seen:
            out.append(violation("rainbow-compass", f"cell({k})", f"missing={_fmt(compass & ~seen)}"))
        elif interiors:
            inner = enc.bits(inst)
            if compass & ~inner:
                out.append(violation("rainbow-interior", f"cell({k})", f"missing={_fmt(compass & ~inner)}"))
    return Verdict.of(out)


def verify_homogeneous_wall(inst: HostInstance, wall: Mesh, colors: ColorSet | None = None) -> Verdict:
    """Homogeneity of a wall whose bricks are its cells.

    ``I`` defaults to the colors of the compass; pass ``colors`` to test a
    claimed split into ``I`` and the rest instead.
    """
    compass = mesh_compass_bits(wall)
    chosen = compass if colors is None else colors.bits
    out = []
    stray = compass & ~chosen
    if stray:
        out.append(violation("outside-color-in-compass", f"colors={_fmt(stray)}"))
    for i in range(wall.n - 1):
        for j in range(wall.m - 1):
            inner = enclose(inst, cell_cycle(wall, i, j)).bits(inst)
            if chosen & ~inner:
                out.append(violation("brick-missing-colors", f"brick({i + 1},{j + 1})", f"missing={_fmt(chosen & ~inner)}"))
    return Verdict.of(out)


# ---------------------------------------------------------------------------
# truncation


def _owners(old: Mesh) -> tuple[dict[Vertex, int], dict[Vertex, int]]:
    hs = {v: i for i, p in enumerate(old.horizontals) for v in p}
    vs = {v: j for j, p in enumerate(old.verticals) for v in p}
    return hs, vs


def disjoint_path_count(adj: dict[Vertex, list[Vertex]], sources: Iterable[Vertex], sinks: Iterable[Vertex], limit: int) -> int:
    """Maximum number (capped at ``limit``) of vertex-disjoint source-sink paths.

    Unit vertex capacities, handled by splitting every vertex into an in-node
    and an out-node; augmenting paths are found by breadth-first search.
    """
    src, dst = set(sources), set(sinks)
    nodes = list(adj)
    index = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    S, T = 2 * n, 2 * n + 1
    graph: list[list[int]] = [[] for _ in range(2 * n + 2)]
    head: list[int] = []
    cap: list[int] = []

    def arc(a: int, b: int) -> None:
        graph[a].append(len(head))
        head.append(b)
        cap.append(1)
        graph[b].append(len(head))
        head.append(a)
        cap.append(0)

    for v in nodes:
        i = index[v]
        arc(2 * i, 2 * i + 1)
        for w in adj[v]:
            arc(2 * i + 1, 2 * index[w])
        if v in src:
            arc(S, 2 * i)
        if v in dst:
            arc(2 * i + 1, T)
    flow = 0
    while flow < limit:
        prev = [-1] * len(graph)
        prev[S] = -2
        dq = deque([S])
        while dq and prev[T] == -1:
            u = dq.popleft()
            for e in graph[u]:
                w = head[e]
                if cap[e] and prev[w] == -1:
                    prev[w] = e
                    dq.append(w)
        if prev[T] == -1:
            break
        w = T
        while w != S:
            e = prev[w]
            cap[e] -= 1
            cap[e ^ 1] += 1
            w = head[e ^ 1]
        flow += 1
    return flow


def mesh_adjacency(mesh: Mesh) -> dict[Vertex, list[Vertex]]:
    adj: dict[Vertex, set[Vertex]] = {}
    for p in mesh.paths():
        for v in p:
            adj.setdefault(v, set())
        for a, b in zip(p, p[1:]):
            adj[a].add(b)
            adj[b].add(a)
    return {v: sorted(ws) for v, ws in adj.items()}


FLOW_VERTEX_LIMIT = 400


def verify_tangle_truncation(new: Mesh, old: Mesh, *, flow: bool | None = None) -> Verdict:
    """Every new horizontal/vertical pair reaches ``min(n, m)`` distinct old paths of each kind.

    Old paths are the rows and columns of ``old``; a pair "reaches" an old path
    when their union shares a vertex with it. With ``flow`` (default: hosts of
    at most 400 vertices) the pair union must also be joined to every old path
    by that many vertex-disjoint paths inside the old mesh.
    """
    need = min(new.n, new.m)
    out = []
    old_v = old.vertices()
    for kind, fam in (("h", new.horizontals), ("v", new.verticals)):
        for i, p in enumerate(fam):
            if not set(p) <= old_v:
                out.append(violation("truncation-outside-old-mesh", f"{kind}{i + 1}"))
    if out:
        return Verdict.of(out)
    h_own, v_own = _owners(old)
    h_rows = [{h_own[v] for v in p if v in h_own} for p in new.horizontals]
    h_cols = [{v_own[v] for v in p if v in v_own} for p in new.horizontals]
    v_rows = [{h_own[v] for v in p if v in h_own} for p in new.verticals]
    v_cols = [{v_own[v] for v in p if v in v_own} for p in new.verticals]
    for i in range(new.n):
        for j in range(new.m):
            rows = len(h_rows[i] | v_rows[j])
            cols = len(h_cols[i] | v_cols[j])
            if rows < need or cols < need:
                out.append(violation("truncation-pair", f"h{i + 1}", f"v{j + 1}", f"rows={rows}", f"cols={cols}", f"need={need}"))
    if out:
        return Verdict.of(out)
    host = new.host
    if flow is None:
        flow = host.d_r * host.d_c <= FLOW_VERTEX_LIMIT
    if not flow:
        return OK
    adj = mesh_adjacency(old)
    for i, hp in enumerate(new.horizontals):
        for j, vp in enumerate(new.verticals):
            union = set(hp) | set(vp)
            for kind, fam in (("h", old.horizontals), ("v", old.verticals)):
                for t, target in enumerate(fam):
                    got = disjoint_path_count(adj, union, target, need)
                    if got < need:
                        out.append(violation("truncation-flow", f"h{i + 1}", f"v{j + 1}", f"old-{kind}{t + 1}", f"paths={got}", f"need={need}"))
    return Verdict.of(out)


def verify_mesh_output(inst: HostInstance, mesh: Mesh, old: Mesh, *, uniform: bool) -> Verdict:
    verdict = mesh_validate(mesh)
    if not verdict.ok:
        return verdict
    if uniform:
        verdict = verdict.merge(verify_uniform(inst, mesh))
    return verdict.merge(verify_tangle_truncation(mesh, old))


# ---------------------------------------------------------------------------
# strip stage outputs


def _strip_colors(inst: HostInstance, pk: StripPacking, lo: int, hi: int) -> int:
    return region_colors(inst, frame_rect(pk.window, pk.orientation, lo, hi).compass(), True).bits


def _packing_shape(pk: StripPacking, label: str) -> list:
    out = []
    a, z = pk.window.span(pk.orientation)
    prev = a - 1
    for k, (lo, hi) in enumerate(pk.frames):
        if lo <= prev:
            out.append(violation("frames-overlap", label, f"strip{k + 1}"))
        if hi > z:
            out.append(violation("frame-outside-window", label, f"strip{k + 1}"))
        if hi - lo + 1 < max(2, 2 * pk.p + pk.b):
            out.append(violation("strip-too-narrow", label, f"strip{k + 1}", f"breadth={hi - lo + 1}"))
        prev = max(prev, hi)
    return out


def _boundary_cut(pk: StripPacking, other: StripPacking, k: int) -> tuple[set, set]:
    """Faces and vertices of the p-core of strip ``k`` away from the extremal strips."""
    if k in (0, len(pk.frames) - 1) or len(other.frames) < 2:
        return set(), set()
    lo, hi = pk.frames[k]
    clo, chi = lo + pk.p, hi - pk.p
    a, z = other.frames[0][1], other.frames[-1][0]
    faces = {(x, y) for x in range(a, z) for y in range(clo, chi)}
    verts = {(x, y) for x in range(a + 1, z) for y in range(clo, chi + 1)}
    if pk.orientation == "row":
        faces = {(y, x) for x, y in faces}
        verts = {(y, x) for x, y in verts}
    return faces, verts


def _bits_of(inst: HostInstance, faces: set, verts: set) -> int:
    bits = 0
    for f in faces:
        bits |= inst.face_bits.get(f, 0)
    for v in verts:
        bits |= inst.vertex_bits.get(v, 0)
    return bits


def _check_sort_trim(inst, out, r: int, p: int, b: int, x: int) -> list:
    pk = out.packing
    chosen = out.colors.bits
    found = _packing_shape(pk, pk.orientation)
    need = out.colors.bits.bit_count() * (r - 1) + x
    if len(pk.frames) < need:
        found.append(violation("too-few-strips", f"have={len(pk.frames)}", f"need={need}"))
    width = 2 * (chosen.bit_count() + 1) * p + b
    for k, w in enumerate(pk.breadths()):
        if w < width:
            found.append(violation("strip-breadth", f"strip{k + 1}", f"breadth={w}", f"need={width}"))
    found += _colors_and_cores(inst, pk, chosen, r, None, pk.orientation)
    return found


def _colors_and_cores(inst, pk: StripPacking, chosen: int, r: int, other: StripPacking | None, label: str) -> list:
    found = []
    cores = []
    for k, (lo, hi) in enumerate(pk.frames):
        extra = _strip_colors(inst, pk, lo, hi) & ~chosen
        if extra:
            found.append(violation("strip-outside-colors", label, f"strip{k + 1}", f"colors={_fmt(extra)}"))
        if other is None:
            cores.append(_strip_colors(inst, pk, lo + pk.p, hi - pk.p) if hi - lo > 2 * pk.p else 0)
        else:
            cores.append(_bits_of(inst, *_boundary_cut(pk, other, k)))
    for color in iter_bits(chosen):
        count = sum(1 for c in cores if c >> color & 1)
        if count < r:
            found.append(violation("color-in-few-cores", label, f"color={color}", f"cores={count}", f"need={r}"))
    return found


def _check_balanced(inst, out, r: int) -> list:
    found = []
    pC, pR = out.packC, out.packR
    for pk, label in ((pC, "column"), (pR, "row")):
        if pk.window != out.window:
            found.append(violation("packing-not-cropped", label))
        found += _packing_shape(pk, label)
    if found:
        return found
    IC, IR = out.I_C.bits, out.I_R.bits
    for pk, mine, theirs, other, label in ((pC, IC, IR, pR, "column"), (pR, IR, IC, pC, "row")):
        need = mine.bit_count() * (r - 1) + 2 * theirs.bit_count() + 1
        if len(pk.frames) < need:
            found.append(violation("too-few-strips", label, f"have={len(pk.frames)}", f"need={need}"))
        found += _colors_and_cores(inst, pk, mine, r, other, label)
    return found


def _check_tiles(inst, out, r: int) -> list:
    found = []
    pC, pR = out.packC, out.packR
    for pk, label in ((pC, "column"), (pR, "row")):
        if not pk.frames:
            found.append(violation("empty-packing", label))
        else:
            found += _packing_shape(pk, label)
    if found:
        return found
    for pk, chosen, label in ((pC, out.I_C.bits, "column"), (pR, out.I_R.bits, "row")):
        for k, (lo, hi) in enumerate(pk.frames):
            extra = _strip_colors(inst, pk, lo, hi) & ~chosen
            if extra:
                found.append(violation("strip-outside-colors", label, f"strip{k + 1}", f"colors={_fmt(extra)}"))
    holders: dict[str, list[set[int]]] = {}
    for pk, other, label in ((pC, pR, "column"), (pR, pC, "row")):
        per_strip = []
        for k in range(len(pk.frames)):
            seen: set[int] = set()
            for t in tile_rects(other, pk.strip(k), other.p):
                seen.update(iter_bits(region_colors(inst, t.rect.interior()).bits))
            per_strip.append(seen)
        holders[label] = per_strip
    for color in iter_bits(out.I_C.bits | out.I_R.bits):
        best = max(sum(1 for s in holders[lab] if color in s) for lab in ("column", "row"))
        if best < r:
            found.append(violation("color-not-in-tiles", f"color={color}", f"strips={best}", f"need={r}"))
    return found


def verify_lemma_output(inst: HostInstance, stage: str, out, *, r: int, p: int = 0, b: int = 0, x: int = 1) -> Verdict:
    """Check the conclusions of a strip stage on its output.

    ``stage`` is ``"sort-trim"``, ``"crop"`` or ``"tiles"``.
    """
    try:
        if stage == "sort-trim":
            found = _check_sort_trim(inst, out, r, p, b, x)
        elif stage == "crop":
            found = _check_balanced(inst, out, r)
        elif stage == "tiles":
            found = _check_tiles(inst, out, r)
        else:
            raise ValueError(f"unknown stage {stage!r}")
    except GeometryError as exc:
        found = [violation("malformed-output", str(exc).replace(" ", "-"))]
    return Verdict.of(found)


def cycle_color_bits(inst: HostInstance, cycle: Sequence[Vertex]) -> int:
    return enclose(inst, cycle).bits(inst)
