"""Strip sorting, cropping and tile confinement, plus the end-to-end pipelines.

All color queries go through the instance's prefix-count index. Every
decision that changes a packing is appended to a line-oriented trace.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .bounds import r_hat, rainbow_parameters, strip_breadth
from .colorset import ColorSet, iter_bits
from .geometry import (
    Mesh,
    MeshWindow,
    Orientation,
    StripPacking,
    base_mesh,
    crop,
    frame_rect,
    restrict,
    tile_rects,
)
from .instance import HostInstance


class InsufficientMeshError(Exception):
    """The mesh is too small for a stage; carries the missing quantity."""

    def __init__(self, stage: str, detail: str, required: int | None = None, available: int | None = None):
        self.stage = stage
        self.detail = detail
        self.required = required
        self.available = available
        msg = f"{stage}: {detail}"
        if required is not None:
            msg += f" (required {required}, available {available})"
        super().__init__(msg)


class PipelineError(RuntimeError):
    """A constructed object failed verification although its inputs were valid."""


# ---------------------------------------------------------------------------
# color helpers


def _rect_bits(inst: HostInstance, r0: int, r1: int, c0: int, c1: int) -> int:
    return inst.color_index.closed_rect(r0, r1, c0, c1)


def frame_bits(inst: HostInstance, pk: StripPacking, lo: int, hi: int) -> int:
    """Colors of the compass of frame ``lo..hi`` stretched across ``pk.window``."""
    rect = frame_rect(pk.window, pk.orientation, lo, hi)
    return _rect_bits(inst, rect.r0, rect.r1, rect.c0, rect.c1)


def strip_bits(inst: HostInstance, pk: StripPacking, i: int) -> int:
    lo, hi = pk.frames[i]
    return frame_bits(inst, pk, lo, hi)


def core_bits(inst: HostInstance, pk: StripPacking, i: int) -> int:
    lo, hi = pk.frames[i]
    return frame_bits(inst, pk, lo + pk.p, hi - pk.p)


def core_minus_boundary_bits(inst: HostInstance, pk: StripPacking, i: int, other: StripPacking) -> int:
    """Colors of the p-core of strip ``i`` after deleting the boundary strips.

    The boundary consists of the extremal strips of both packings, so the
    result is empty for an extremal strip or when ``other`` has one strip.
    """
    if i == 0 or i == len(pk.frames) - 1 or len(other.frames) < 2:
        return 0
    lo, hi = pk.frames[i]
    clo, chi = lo + pk.p, hi - pk.p
    a = other.frames[0][1]
    z = other.frames[-1][0]
    if z - a < 1:
        return 0
    idx = inst.color_index
    if pk.orientation == "column":
        return idx.face_bits(a, z - 1, clo, chi - 1) | idx.vertex_bits(a + 1, z - 1, clo, chi)
    return idx.face_bits(clo, chi - 1, a, z - 1) | idx.vertex_bits(clo, chi, a + 1, z - 1)


def tile_bits(inst: HostInstance, tile) -> int:
    return tile.rect.open_bits(inst)


# ---------------------------------------------------------------------------
# Sort / Trim


@dataclass(frozen=True)
class SortTrimOutput:
    colors: ColorSet
    packing: StripPacking
    trace: tuple[str, ...]
    discarded: tuple[int, ...]
    sort_rounds: int
    trim_rounds: int


def initial_packing(window: MeshWindow, orientation: Orientation, count: int, breadth: int, p: int, b: int) -> StripPacking:
    start = window.span(orientation)[0]
    frames = tuple((start + i * breadth, start + (i + 1) * breadth - 1) for i in range(count))
    return StripPacking(window, orientation, frames, p, b)


def sort_and_trim(
    inst: HostInstance,
    window: MeshWindow,
    orientation: Orientation,
    q: int,
    r: int,
    p: int,
    b: int,
    x: int,
    *,
    initial: StripPacking | None = None,
    colors: ColorSet | None = None,
    forced: int | None = None,
    stage: str | None = None,
) -> SortTrimOutput:
    """Find a color set I and a (p,b)-padded packing whose strips only carry
    colors of I, each color of I appearing in at least ``r`` cores.

    Without ``initial`` the packing starts from ``q(r-1)+x`` strips of breadth
    ``2(q+1)p+b`` at the start of the window. With ``initial`` (and its color
    set ``colors``) the given packing is sorted instead; strips surviving an
    emptied color set are then all kept. ``forced`` names a color the first
    Trim must discard.
    """
    if x < 1:
        raise ValueError(f"x must be at least 1, got {x}")
    if r < 0 or p < 0 or b < 0 or q < 0:
        raise ValueError("q, r, p and b must be non-negative")
    if p > 0 and b < 2:
        raise ValueError("b must be at least 2 when strips get trimmed")
    stage = stage or orientation
    if initial is None:
        breadth = strip_breadth(q, p, b)
        count = q * (r - 1) + x if r >= 1 else x
        have = window.extent(orientation)
        if have < count * breadth:
            raise InsufficientMeshError("initial packing", f"{orientation} extent", count * breadth, have)
        pk = initial_packing(window, orientation, count, breadth, p, b)
        alive = ColorSet.full(q).bits
        prescribed = False
    else:
        pk = initial
        alive = (colors if colors is not None else ColorSet.full(q)).bits
        prescribed = True
    window = pk.window
    frames = list(pk.frames)
    trace: list[str] = []
    discarded: list[int] = []
    sort_rounds = trim_rounds = 0

    def bits_of(lo: int, hi: int) -> int:
        return frame_bits(inst, pk, lo, hi) & alive

    while True:
        # Sort: drop colors carried by fewer than r strips, with their strips.
        sort_rounds += 1
        dropped_here = False
        while alive:
            sbits = [bits_of(lo, hi) for lo, hi in frames]
            victim = None
            for color in iter_bits(alive):
                if sum(1 for s in sbits if s >> color & 1) < r:
                    victim = color
                    break
            if victim is None:
                break
            keep = [f for f, s in zip(frames, sbits) if not s >> victim & 1]
            trace.append(f"DISCARD-COLOR {victim} stage={stage}:sort strips={len(frames) - len(keep)}")
            frames = keep
            alive &= ~(1 << victim)
            discarded.append(victim)
            dropped_here = True
        if dropped_here and not alive and not prescribed:
            frames = frames[:x]
            break
        # Trim: every surviving color must reach r cores, else drop one and trim.
        trim_rounds += 1
        cbits = [bits_of(lo + p, hi - p) for lo, hi in frames]
        victim = None
        if forced is not None and alive >> forced & 1:
            victim = forced
        else:
            for color in iter_bits(alive):
                if sum(1 for c in cbits if c >> color & 1) < r:
                    victim = color
                    break
        forced = None
        if victim is None:
            break
        keep = [f for f, c in zip(frames, cbits) if not c >> victim & 1]
        trace.append(f"DISCARD-COLOR {victim} stage={stage}:trim strips={len(frames) - len(keep)}")
        alive &= ~(1 << victim)
        discarded.append(victim)
        frames = [(lo + p, hi - p) for lo, hi in keep]
        for lo, hi in frames:
            if hi - lo + 1 < max(2, 2 * p + b):
                raise InsufficientMeshError(stage, "strip breadth after trimming", max(2, 2 * p + b), hi - lo + 1)
        if p:
            trace.append(f"TRIM p={p} stage={stage} strips={len(frames)}")
    out = StripPacking(window, orientation, tuple(frames), p, b)
    return SortTrimOutput(ColorSet.from_bits(alive), out, tuple(trace), tuple(discarded), sort_rounds, trim_rounds)


# ---------------------------------------------------------------------------
# cropping and rebalancing


@dataclass(frozen=True)
class BalancedPackings:
    I_C: ColorSet
    I_R: ColorSet
    packC: StripPacking
    packR: StripPacking
    window: MeshWindow
    trace: tuple[str, ...]
    rounds: int = 0


def _fail_core(inst, pk: StripPacking, alive: int, r: int, other: StripPacking | None) -> int | None:
    if other is None:
        bits = [core_bits(inst, pk, i) for i in range(len(pk.frames))]
    else:
        bits = [core_minus_boundary_bits(inst, pk, i, other) for i in range(len(pk.frames))]
    for color in iter_bits(alive):
        if sum(1 for c in bits if c >> color & 1) < r:
            return color
    return None


def _first_failure(inst, pC, IC, pR, IR, r, with_boundary: bool) -> tuple[str, int] | None:
    for name, pk, alive, other in (("column", pC, IC, pR), ("row", pR, IR, pC)):
        bad = _fail_core(inst, pk, alive, r, other if with_boundary else None)
        if bad is not None:
            return name, bad
    return None


def crop_and_rebalance(inst: HostInstance, window: MeshWindow, q: int, r: int, p: int, b: int) -> BalancedPackings:
    """Column and row packings whose colors survive cropping to their own span
    and stay abundant in cores away from the extremal strips."""
    x = 2 * q + 1
    st_c = sort_and_trim(inst, window, "column", q, r, p, b, x, stage="crop-init-column")
    st_r = sort_and_trim(inst, window, "row", q, r, p, b, x, stage="crop-init-row")
    trace = list(st_c.trace + st_r.trace)
    IC, IR = st_c.colors.bits, st_r.colors.bits
    pC, pR = st_c.packing, st_r.packing
    w = window
    for rnd in range(2 * q + 2):
        if not pC.frames or not pR.frames:
            raise InsufficientMeshError("crop and rebalance", "empty packing", 1, 0)
        w = crop(crop(w, pC), pR)
        pC, pR = restrict(pC, w), restrict(pR, w)
        fail = _first_failure(inst, pC, IC, pR, IR, r, with_boundary=False)
        via_case1 = False
        if fail is None:
            fail = _first_failure(inst, pC, IC, pR, IR, r, with_boundary=True)
            if fail is None:
                for name, pk, mine, theirs in (("column", pC, IC, IR), ("row", pR, IR, IC)):
                    need = mine.bit_count() * (r - 1) + 2 * theirs.bit_count() + 1
                    if len(pk.frames) < need:
                        raise InsufficientMeshError("crop and rebalance", f"{name} strips", need, len(pk.frames))
                trace.append(f"BALANCED rounds={rnd} columns={len(pC.frames)} rows={len(pR.frames)}")
                return BalancedPackings(
                    ColorSet.from_bits(IC), ColorSet.from_bits(IR), pC, pR, w, tuple(trace), rnd
                )
            name, color = fail
            other_pk = pR if name == "column" else pC
            if len(other_pk.frames) < 3:
                raise InsufficientMeshError("crop and rebalance", "strips to drop at the boundary", 3, len(other_pk.frames))
            other_pk = other_pk.with_frames(other_pk.frames[1:-1])
            w = crop(w, other_pk)
            if name == "column":
                pR = restrict(other_pk, w)
                pC = restrict(pC, w)
            else:
                pC = restrict(other_pk, w)
                pR = restrict(pR, w)
            trace.append(f"BOUNDARY-DROP family={'row' if name == 'column' else 'column'} color={color}")
            via_case1 = True
        name, color = fail
        n_c = IC.bit_count() - (1 if via_case1 and name == "column" else 0)
        n_r = IR.bit_count() - (1 if via_case1 and name == "row" else 0)
        out_c = sort_and_trim(
            inst, w, "column", q, r, p, b, 2 * n_r + 1, initial=pC, colors=ColorSet.from_bits(IC),
            forced=color if name == "column" else None, stage=f"crop-round{rnd + 1}-column",
        )
        out_r = sort_and_trim(
            inst, w, "row", q, r, p, b, 2 * n_c + 1, initial=pR, colors=ColorSet.from_bits(IR),
            forced=color if name == "row" else None, stage=f"crop-round{rnd + 1}-row",
        )
        trace.extend(out_c.trace + out_r.trace)
        IC, IR = out_c.colors.bits, out_r.colors.bits
        pC, pR = out_c.packing, out_r.packing
    raise InsufficientMeshError("crop and rebalance", "round limit", 2 * q + 1, 2 * q + 2)


# ---------------------------------------------------------------------------
# tile confinement


@dataclass(frozen=True)
class TileCertificate:
    """Strips of ``family`` each holding a tile (w.r.t. the other family) that carries ``color``."""

    color: int
    family: Orientation
    witnesses: tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class Confinement:
    I_C: ColorSet
    I_R: ColorSet
    packC: StripPacking
    packR: StripPacking
    window: MeshWindow
    certificates: tuple[TileCertificate, ...]
    trace: tuple[str, ...]


def _tile_witnesses(inst, pk: StripPacking, other: StripPacking, color: int) -> list[tuple[int, str]]:
    out = []
    for i in range(len(pk.frames)):
        for t in tile_rects(other, pk.strip(i), other.p):
            if tile_bits(inst, t) >> color & 1:
                out.append((i, t.label()))
                break
    return out


def certify_tiles(inst, pC: StripPacking, pR: StripPacking, colors: int, r: int) -> tuple[list[TileCertificate], list[int]]:
    """Certificates for every color in ``colors``; also returns uncertified colors."""
    certs, missing = [], []
    for color in iter_bits(colors):
        best = None
        for fam, pk, other in (("column", pC, pR), ("row", pR, pC)):
            wit = _tile_witnesses(inst, pk, other, color)
            if len(wit) >= r:
                best = TileCertificate(color, fam, tuple(wit))
                break
        if best is None:
            missing.append(color)
        else:
            certs.append(best)
    return certs, missing


def confine_to_tiles(inst: HostInstance, window: MeshWindow, q: int, r: int, p: int, b: int) -> Confinement:
    """Packings in which every surviving color shows up in tiles of at least ``r`` strips."""
    if r < 1:
        raise ValueError(f"r must be at least 1, got {r}")
    if p < 1:
        raise ValueError("tiles need padding p >= 1")
    bal = crop_and_rebalance(inst, window, q, r_hat(q, r), p, b)
    trace = list(bal.trace)
    pC, pR = bal.packC, bal.packR
    rows = list(pR.frames)
    inner_cols = range(1, len(pC.frames) - 1)
    col_cores = {c: (pC.frames[c][0] + p, pC.frames[c][1] - p) for c in inner_cols}
    for color in iter_bits(bal.I_C.bits & bal.I_R.bits):
        pk_rows = pR.with_frames(rows)
        holders = [c for c in inner_cols if any(
            tile_bits(inst, t) >> color & 1 for t in tile_rects(pk_rows, pC.strip(c), p)
        )]
        if len(holders) >= r:
            trace.append(f"TILES-OK color={color} columns={len(holders)}")
            continue
        inner_rows = list(range(1, len(rows) - 1))

        def meets(c: int, j: int) -> bool:
            lo, hi = col_cores[c]
            rs, re = rows[j]
            return _rect_bits(inst, rs, re, lo, hi) >> color & 1 == 1

        used: set[int] = set()
        pairs: list[tuple[int, int]] = []
        for c in inner_cols:
            for j in inner_rows:
                if j not in used and meets(c, j):
                    pairs.append((c, j))
                    used.add(j)
                    break
        if len(pairs) >= r:
            gone = {j for _, j in pairs[:r]}
            trace.append(f"TILES-PAIRED color={color} pairs={len(pairs)} removed-rows={len(gone)}")
        else:
            best, chosen = 0, None
            for j in inner_rows:
                count = sum(1 for c in inner_cols if meets(c, j))
                if count >= r:
                    chosen = j
                    break
                best = max(best, count)
            if chosen is None:
                raise InsufficientMeshError("tile confinement", f"columns meeting color {color} in one row", r, best)
            gone = {chosen}
            trace.append(f"TILES-ROW color={color} row={chosen + 1}")
        rows = [f for j, f in enumerate(rows) if j not in gone]
    pR = pR.with_frames(rows)
    certs, missing = certify_tiles(inst, pC, pR, bal.I_C.bits | bal.I_R.bits, r)
    if missing:
        raise InsufficientMeshError("tile confinement", f"tile certificate for color {missing[0]}", r, 0)
    return Confinement(bal.I_C, bal.I_R, pC, pR, bal.window, tuple(certs), tuple(trace))


def greedy_packings(inst: HostInstance, window: MeshWindow, p: int, b: int) -> Confinement:
    """As many colorless-assumption strips of breadth 2p+b as fit, no color bookkeeping.

    Used below the bound, where the sorting machinery has nothing to work with;
    whatever is built on top of these packings must be verified afterwards.
    """
    breadth = 2 * p + b
    packs = {}
    for orient in ("column", "row"):
        have = window.extent(orient)
        count = have // breadth
        if count < 1:
            raise InsufficientMeshError("initial packing", f"{orient} extent", breadth, have)
        packs[orient] = initial_packing(window, orient, count, breadth, p, b)
    w = crop(crop(window, packs["column"]), packs["row"])
    pC, pR = restrict(packs["column"], w), restrict(packs["row"], w)
    everything = ColorSet.from_bits(_rect_bits(inst, w.r0, w.r1, w.c0, w.c1))
    trace = (f"GREEDY-PACKING columns={len(pC.frames)} rows={len(pR.frames)} breadth={breadth}",)
    return Confinement(everything, everything, pC, pR, w, (), trace)


# ---------------------------------------------------------------------------
# pipelines


@dataclass(frozen=True)
class Success:
    mesh: Mesh
    kind: str


@dataclass(frozen=True)
class InsufficientMesh:
    stage: str
    detail: str
    required: int | None = None
    available: int | None = None

    def describe(self) -> str:
        out = f"{self.stage}: {self.detail}"
        if self.required is not None:
            out += f" (required {self.required}, available {self.available})"
        return out


@dataclass
class PipelineResult:
    outcome: Success | InsufficientMesh
    stats: dict = field(default_factory=dict)
    trace: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return isinstance(self.outcome, Success)

    @property
    def mesh(self) -> Mesh | None:
        return self.outcome.mesh if isinstance(self.outcome, Success) else None


class _Stages:
    def __init__(self) -> None:
        self.stats: dict = {}
        self.trace: list[str] = []

    def run(self, name: str, fn: Callable, *args, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kw)
        finally:
            self.stats.setdefault(name, {})["seconds"] = round(time.perf_counter() - t0, 6)


def _confine_for_rainbow(inst: HostInstance, window: MeshWindow, n: int, m: int, q: int, st: _Stages) -> Confinement:
    p, b, r = rainbow_parameters(n, m, q)
    try:
        conf = st.run("confine", confine_to_tiles, inst, window, q, r, p, b)
        st.stats["confine"]["mode"] = "exact"
    except InsufficientMeshError as exc:
        st.trace.append(f"FALLBACK stage={exc.stage.replace(' ', '-')}")
        st.stats["exact_failure"] = str(exc)
        conf = st.run("confine", greedy_packings, inst, window, p, b)
        st.stats["confine"]["mode"] = "greedy"
    st.trace.extend(conf.trace)
    st.trace.append(f"MODE {st.stats['confine']['mode']}")
    gone = sorted({int(t.split()[1]) for t in conf.trace if t.startswith("DISCARD-COLOR")})
    st.stats["confine"].update(
        discarded=gone, columns=len(conf.packC.frames), rows=len(conf.packR.frames),
        I_C=conf.I_C.format(), I_R=conf.I_R.format(), p=p, b=b, r=r,
    )
    st.trace.append(_packing_line(conf.packC))
    st.trace.append(_packing_line(conf.packR))
    return conf


def _packing_line(pk: StripPacking) -> str:
    w = pk.window
    frames = ",".join(f"{lo}-{hi}" for lo, hi in pk.frames)
    return f"PACKING {pk.orientation} p={pk.p} b={pk.b} window={w.r0},{w.r1},{w.c0},{w.c1} frames={frames}"


def uniform_mesh(inst: HostInstance, ell: int, *, _stages: _Stages | None = None) -> PipelineResult:
    """A verified uniform ``ell``-mesh, or the stage at which the host ran out."""
    from . import verifier, weave

    if ell < 2:
        raise ValueError(f"ell must be at least 2, got {ell}")
    st = _stages or _Stages()
    n, m = 2 * ell, ell * ell - ell
    window = MeshWindow.of(inst)
    try:
        conf = _confine_for_rainbow(inst, window, n, m, inst.q, st)
        rb = st.run("rainbow", weave.build_rainbow_mesh, inst, conf, n, m)
        st.trace.extend(rb.trace)
        st.stats["rainbow"].update(n=n, m=m, captures=len(rb.captures))
        rv = verifier.verify_rainbow_row(inst, rb, interiors=True)
        if not rv.ok:
            raise InsufficientMeshError("rainbow capture", rv.violations[0].line())
        mesh = st.run("fold", weave.fold_to_uniform, inst, rb.mesh, check=False)
    except InsufficientMeshError as exc:
        st.trace.append(f"INSUFFICIENT stage={exc.stage.replace(' ', '-')}")
        return PipelineResult(InsufficientMesh(exc.stage, exc.detail, exc.required, exc.available), st.stats, tuple(st.trace))
    verdict = st.run(
        "verify",
        lambda: verifier.verify_mesh_output(inst, mesh, base_mesh(inst), uniform=True),
    )
    if not verdict.ok:
        raise PipelineError("uniform mesh failed verification:\n" + verdict.text())
    st.stats["fold"]["size"] = ell
    return PipelineResult(Success(mesh, "uniform-mesh"), st.stats, tuple(st.trace))


def homogeneous_wall(inst: HostInstance, k: int) -> PipelineResult:
    """A verified homogeneous ``k``-wall, or the stage at which the host ran out."""
    from . import verifier, weave

    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    st = _Stages()
    res = uniform_mesh(inst, 6 * k, _stages=st)
    if not res.ok:
        return res
    wall3 = st.run("wall", weave.mesh_to_wall, res.mesh)
    wall = st.run("select", weave.select_homogeneous_wall, wall3)
    verdict = verifier.verify_mesh_output(inst, wall, base_mesh(inst), uniform=False)
    verdict = verdict.merge(verifier.verify_homogeneous_wall(inst, wall))
    if not verdict.ok:
        raise PipelineError("homogeneous wall failed verification:\n" + verdict.text())
    st.stats["select"]["size"] = k
    return PipelineResult(Success(wall, "wall"), st.stats, tuple(st.trace))
