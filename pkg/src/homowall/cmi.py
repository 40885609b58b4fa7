"""Reader and writer for the line-oriented CMI instance format.

::

    cmi 1
    dims <d_r> <d_c> <q>
    vertexcolor <row> <col> {c1,c2,...}
    bridge <id> <face_row> <face_col> {c1,c2,...}

Lines starting with ``#`` are comments. Color lists are strictly increasing and
``{}`` is the empty set.
"""

from __future__ import annotations

import re

from .colorset import MAX_COLORS, ColorSet
from .instance import Bridge, HostInstance, InstanceError

_TOKEN = re.compile(r"\S+")
_SET = re.compile(r"\{([0-9,]*)\}\Z")


class CMIParseError(ValueError):
    def __init__(self, line: int, col: int, message: str) -> None:
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


def _tokens(text: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in _TOKEN.finditer(text)]


def _int(tok: tuple[int, str], lineno: int, what: str) -> int:
    col, s = tok
    if not s.isdigit():
        raise CMIParseError(lineno, col, f"expected non-negative integer for {what}, got {s!r}")
    return int(s)


def _colorset(tok: tuple[int, str], lineno: int, q: int) -> ColorSet:
    col, s = tok
    m = _SET.match(s)
    if m is None:
        raise CMIParseError(lineno, col, f"malformed color set {s!r}")
    body = m.group(1)
    if not body:
        return ColorSet()
    colors = []
    for part in body.split(","):
        if not part.isdigit():
            raise CMIParseError(lineno, col, f"malformed color set {s!r}")
        colors.append(int(part))
    for a, b in zip(colors, colors[1:]):
        if a >= b:
            raise CMIParseError(lineno, col, "colors must be strictly increasing")
    for c in colors:
        if not 1 <= c <= q:
            raise CMIParseError(lineno, col, f"color {c} outside [1, {q}]")
    return ColorSet(colors)


def parse_instance(data: str | bytes) -> HostInstance:
    """Parse CMI text into a validated :class:`HostInstance`."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CMIParseError(1, 1, f"input is not UTF-8: {exc}") from None
    lines = data.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    content = [
        (i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not content:
        raise CMIParseError(1, 1, "empty input, expected 'cmi 1'")
    lineno, header = content[0]
    if [t for _, t in _tokens(header)] != ["cmi", "1"]:
        raise CMIParseError(lineno, 1, "expected header 'cmi 1'")
    if len(content) < 2:
        raise CMIParseError(lineno + 1, 1, "missing dims line")
    lineno, dims_line = content[1]
    toks = _tokens(dims_line)
    if len(toks) != 4 or toks[0][1] != "dims":
        raise CMIParseError(lineno, 1, "expected 'dims <d_r> <d_c> <q>'")
    d_r = _int(toks[1], lineno, "d_r")
    d_c = _int(toks[2], lineno, "d_c")
    q = _int(toks[3], lineno, "q")
    if q > MAX_COLORS:
        raise CMIParseError(lineno, toks[3][0], f"q={q} exceeds the cap of {MAX_COLORS}")
    if d_r < 2 or d_c < 2:
        raise CMIParseError(lineno, toks[1][0], "grid dimensions must be at least 2")

    vertex_colors: dict[tuple[int, int], ColorSet] = {}
    bridges: list[Bridge] = []
    ids: set[str] = set()
    for lineno, ln in content[2:]:
        toks = _tokens(ln)
        kind = toks[0][1]
        if kind == "vertexcolor":
            if len(toks) != 4:
                raise CMIParseError(lineno, 1, "expected 'vertexcolor <row> <col> {...}'")
            r = _int(toks[1], lineno, "row")
            c = _int(toks[2], lineno, "col")
            if r >= d_r or c >= d_c:
                raise CMIParseError(lineno, toks[1][0], f"vertex ({r},{c}) outside the grid")
            if (r, c) in vertex_colors:
                raise CMIParseError(lineno, 1, f"duplicate vertexcolor for ({r},{c})")
            vertex_colors[(r, c)] = _colorset(toks[3], lineno, q)
        elif kind == "bridge":
            if len(toks) != 5:
                raise CMIParseError(lineno, 1, "expected 'bridge <id> <row> <col> {...}'")
            bid = toks[1][1]
            if "{" in bid or "}" in bid:
                raise CMIParseError(lineno, toks[1][0], f"invalid bridge id {bid!r}")
            if bid in ids:
                raise CMIParseError(lineno, toks[1][0], f"duplicate bridge id {bid}")
            fr = _int(toks[2], lineno, "face row")
            fc = _int(toks[3], lineno, "face col")
            if fr >= d_r - 1 or fc >= d_c - 1:
                raise CMIParseError(lineno, toks[2][0], f"face ({fr},{fc}) outside the grid")
            ids.add(bid)
            bridges.append(Bridge(bid, (fr, fc), _colorset(toks[4], lineno, q)))
        else:
            raise CMIParseError(lineno, toks[0][0], f"unknown record {kind!r}")
    try:
        return HostInstance(d_r, d_c, q, vertex_colors, tuple(bridges))
    except InstanceError as exc:  # pragma: no cover - parser checks come first
        raise CMIParseError(1, 1, str(exc)) from None


def write_instance(inst: HostInstance) -> str:
    """Canonical CMI text: vertex colors row-major, then bridges sorted by id."""
    out = ["cmi 1", f"dims {inst.d_r} {inst.d_c} {inst.q}"]
    for (r, c), cs in sorted(inst.vertex_colors.items()):
        out.append(f"vertexcolor {r} {c} {cs.format()}")
    for b in sorted(inst.bridges, key=lambda b: b.id):
        out.append(f"bridge {b.id} {b.face[0]} {b.face[1]} {b.colors.format()}")
    return "\n".join(out) + "\n"
