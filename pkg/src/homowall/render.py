"""SVG diagnostics: grid, strip packings with their tiles, mesh paths, face glyphs."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .geometry import GeometryError, Mesh, MeshWindow, StripPacking, tile_rects
from .instance import HostInstance

GRID = "#bbbbbb"
BUFFER = "#fde9b5"
CORE = "#cfe3f7"
TILE = "#d62728"
PATH_COLORS = ("#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf")
VERTEX_LIMIT = 10_000


def parse_packings(trace_text: str) -> list[StripPacking]:
    """Read ``PACKING`` lines written by the pipeline trace."""
    out = []
    for line in trace_text.splitlines():
        if not line.startswith("PACKING "):
            continue
        parts = line.split()
        fields = dict(p.split("=", 1) for p in parts[2:])
        r0, r1, c0, c1 = (int(x) for x in fields["window"].split(","))
        frames = []
        if fields.get("frames"):
            for fr in fields["frames"].split(","):
                lo, hi = fr.split("-")
                frames.append((int(lo), int(hi)))
        out.append(StripPacking(MeshWindow(r0, r1, c0, c1), parts[1], tuple(frames), int(fields["p"]), int(fields["b"])))
    return out


def _scale(inst: HostInstance) -> int:
    return max(2, min(24, 960 // max(inst.d_r, inst.d_c)))


def render_svg(inst: HostInstance, mesh: Mesh | None = None, packings: list[StripPacking] | None = None) -> str:
    s = _scale(inst)
    pad = s
    width = (inst.d_c - 1) * s + 2 * pad
    height = (inst.d_r - 1) * s + 2 * pad

    def x(c: float) -> str:
        return f"{pad + c * s:g}"

    def y(r: float) -> str:
        return f"{pad + r * s:g}"

    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg", "version": "1.1",
        "width": str(width), "height": str(height), "viewBox": f"0 0 {width} {height}",
    })
    strips = ET.SubElement(root, "g", {"class": "strips"})
    for pk in packings or []:
        w = pk.window
        for lo, hi in pk.frames:
            for role, a, b in (("buffer", lo, lo + pk.p), ("core", lo + pk.p, hi - pk.p), ("buffer", hi - pk.p, hi)):
                if b <= a:
                    continue
                if pk.orientation == "column":
                    box = (a, w.r0, b - a, w.r1 - w.r0)
                else:
                    box = (w.c0, a, w.c1 - w.c0, b - a)
                ET.SubElement(strips, "rect", {
                    "class": f"{pk.orientation} {role}", "x": x(box[0]), "y": y(box[1]),
                    "width": f"{box[2] * s:g}", "height": f"{box[3] * s:g}",
                    "fill": CORE if role == "core" else BUFFER, "fill-opacity": "0.5",
                })
    grid = ET.SubElement(root, "g", {"class": "grid", "stroke": GRID, "stroke-width": "0.5"})
    for r in range(inst.d_r):
        ET.SubElement(grid, "line", {"x1": x(0), "y1": y(r), "x2": x(inst.d_c - 1), "y2": y(r)})
    for c in range(inst.d_c):
        ET.SubElement(grid, "line", {"x1": x(c), "y1": y(0), "x2": x(c), "y2": y(inst.d_r - 1)})
    if inst.d_r * inst.d_c <= VERTEX_LIMIT:
        verts = ET.SubElement(root, "g", {"class": "vertices", "fill": GRID})
        for r in range(inst.d_r):
            for c in range(inst.d_c):
                ET.SubElement(verts, "circle", {"class": "vertex", "cx": x(c), "cy": y(r), "r": f"{max(s / 8, 0.5):g}"})
    by_kind = {pk.orientation: pk for pk in packings or []}
    if len(by_kind) == 2:
        outline = ET.SubElement(root, "g", {"class": "tiles", "fill": "none", "stroke": TILE, "stroke-width": "1"})
        cols, rows = by_kind["column"], by_kind["row"]
        for i in range(len(cols.frames)):
            try:
                found = tile_rects(rows, cols.strip(i), rows.p)
            except GeometryError:
                continue
            for t in found:
                ET.SubElement(outline, "rect", {
                    "class": f"tile {t.kind}", "x": x(t.rect.c0), "y": y(t.rect.r0),
                    "width": f"{(t.rect.c1 - t.rect.c0) * s:g}", "height": f"{(t.rect.r1 - t.rect.r0) * s:g}",
                })
    glyphs = ET.SubElement(root, "g", {"class": "glyphs", "font-size": f"{max(s * 0.6, 1):g}", "text-anchor": "middle"})
    for (r, c), bits in sorted(inst.face_bits.items()):
        if bits:
            label = ",".join(str(k) for k in range(1, inst.q + 1) if bits >> k & 1)
            ET.SubElement(glyphs, "text", {"class": "glyph", "x": x(c + 0.5), "y": y(r + 0.7)}).text = label
    if mesh is not None:
        paths = ET.SubElement(root, "g", {"class": "mesh", "fill": "none", "stroke-width": f"{max(s / 5, 1):g}"})
        for k, p in enumerate(mesh.paths()):
            pts = " ".join(f"{x(c)},{y(r)}" for r, c in p)
            kind = "horizontal" if k < mesh.n else "vertical"
            ET.SubElement(paths, "polyline", {"class": kind, "points": pts, "stroke": PATH_COLORS[k % len(PATH_COLORS)]})
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
