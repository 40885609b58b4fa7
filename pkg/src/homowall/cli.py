"""Command-line front end.

Exit codes: 0 success, 1 negative verdict or insufficient mesh, 2 usage or
input error, 3 I/O error.
"""

from __future__ import annotations

import json
import sys

import click

from . import bounds as B
from .cmi import CMIParseError, parse_instance, write_instance
from .colorset import MAX_COLORS
from .generators import ADVERSARIAL_MODES, gen_adversarial, gen_random, gen_uniform
from .geometry import MeshFormatError, base_mesh, format_mesh, parse_mesh
from .homogenizer import homogeneous_wall, uniform_mesh
from .render import parse_packings, render_svg
from .verdict import Verdict
from .verifier import verify_homogeneous_wall, verify_mesh_output, verify_rainbow_row, verify_tangle_truncation

OK_EXIT, NEGATIVE, USAGE, IO_ERROR = 0, 1, 2, 3
MODES = ("random", "uniform", *ADVERSARIAL_MODES)


def _die(code: int, msg: str):
    click.echo(msg, err=True)
    sys.exit(code)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        _die(IO_ERROR, f"error: cannot read {path}: {exc}")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        click.echo(text, nl=False)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        _die(IO_ERROR, f"error: cannot write {path}: {exc}")


def _load_instance(path: str):
    try:
        return parse_instance(_read(path))
    except CMIParseError as exc:
        _die(USAGE, f"error: {path}: {exc}")


def _load_mesh(path: str, inst):
    try:
        return parse_mesh(_read(path), inst)
    except MeshFormatError as exc:
        _die(USAGE, f"error: {path}: {exc}")


@click.group()
def cli() -> None:
    """Homogeneous walls and uniform meshes in colorful grids."""


@cli.command()
@click.option("--size", "d", type=click.IntRange(min=2), required=True, help="grid side length")
@click.option("--colors", "q", type=click.IntRange(min=0), required=True)
@click.option("--mode", type=click.Choice(MODES), default="random", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--density", type=click.FloatRange(0, 1), default=0.3, show_default=True, help="face density (random mode)")
@click.option("--out", type=str, default=None)
def generate(d: int, q: int, mode: str, seed: int, density: float, out: str | None) -> None:
    """Write a seeded instance in CMI format."""
    if q > MAX_COLORS:
        _die(USAGE, f"error: --colors {q} exceeds the cap of {MAX_COLORS}")
    try:
        if mode == "random":
            inst = gen_random(d, q, density, 0.5, seed)
        elif mode == "uniform":
            inst = gen_uniform(d, q)
        else:
            inst = gen_adversarial(d, q, mode, seed)
    except ValueError as exc:
        _die(USAGE, f"error: {exc}")
    _write(out, write_instance(inst))


@cli.command()
@click.option("--in", "src", required=True)
@click.option("--target-wall", "k", type=click.IntRange(min=1), default=None)
@click.option("--target-mesh", "ell", type=click.IntRange(min=2), default=None)
@click.option("--trace", "trace_path", type=str, default=None)
@click.option("--out", type=str, default=None)
def homogenize(src: str, k: int | None, ell: int | None, trace_path: str | None, out: str | None) -> None:
    """Extract a homogeneous wall or a uniform mesh."""
    if (k is None) == (ell is None):
        _die(USAGE, "error: give exactly one of --target-wall and --target-mesh")
    inst = _load_instance(src)
    res = homogeneous_wall(inst, k) if k is not None else uniform_mesh(inst, ell)
    if trace_path:
        _write(trace_path, "".join(line + "\n" for line in res.trace))
    click.echo(json.dumps(res.stats, sort_keys=True), err=True)
    if not res.ok:
        o = res.outcome
        click.echo(f"INSUFFICIENT stage={o.stage!r} detail={o.detail!r} required={o.required} available={o.available}")
        sys.exit(NEGATIVE)
    _write(out, format_mesh(res.mesh))


@cli.command()
@click.option("--in", "src", required=True)
@click.option("--mesh", "mesh_path", required=True)
@click.option("--suite", required=True, help="uniform | rainbow | wall | tangle:<old mesh file>")
def verify(src: str, mesh_path: str, suite: str) -> None:
    """Check a mesh against an instance; prints OK or violation lines."""
    inst = _load_instance(src)
    mesh = _load_mesh(mesh_path, inst)
    name, _, arg = suite.partition(":")
    if name == "uniform":
        verdict = verify_mesh_output(inst, mesh, base_mesh(inst), uniform=True)
    elif name == "rainbow":
        verdict = verify_rainbow_row(inst, mesh)
    elif name == "wall":
        verdict = verify_mesh_output(inst, mesh, base_mesh(inst), uniform=False)
        if verdict.ok:
            verdict = verify_homogeneous_wall(inst, mesh)
    elif name == "tangle" and arg:
        verdict = verify_tangle_truncation(mesh, _load_mesh(arg, inst))
    else:
        _die(USAGE, f"error: unknown suite {suite!r}")
    _finish(verdict)


def _finish(verdict: Verdict) -> None:
    click.echo(verdict.text(), nl=False)
    sys.exit(OK_EXIT if verdict.ok else NEGATIVE)


LEMMAS = {
    "31": (B.bound_lemma31, "q r p b x"),
    "32": (B.bound_lemma32, "q r p b"),
    "33": (B.bound_lemma33, "q p b r"),
    "rainbow": (B.bound_rainbow, "n m q"),
    "uniform": (B.bound_uniform, "ell q"),
}


@cli.command()
@click.option("--q", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--lemma", type=click.Choice(sorted(LEMMAS)), default=None)
@click.argument("args", nargs=-1, type=int)
def bounds(q: int | None, k: int | None, lemma: str | None, args: tuple[int, ...]) -> None:
    """Evaluate grid-size bounds."""
    try:
        if lemma is not None:
            fn, names = LEMMAS[lemma]
            if len(args) != len(names.split()):
                _die(USAGE, f"error: --lemma {lemma} takes {len(names.split())} integers ({names})")
            click.echo(str(fn(*args)))
            return
        if q is None or k is None or args:
            _die(USAGE, "error: give --q and --k, or --lemma with its integers")
        composed, printed = B.bound_main(q, k), B.printed_polynomial(q, k)
    except ValueError as exc:
        _die(USAGE, f"error: {exc}")
    click.echo(f"composed {composed}")
    click.echo(f"printed {printed}")
    click.echo(f"difference {composed - printed}")


@cli.command()
@click.option("--in", "src", required=True)
@click.option("--mesh", "mesh_path", default=None)
@click.option("--packings", "trace_path", default=None, help="trace file with PACKING lines")
@click.option("--out", required=True)
def render(src: str, mesh_path: str | None, trace_path: str | None, out: str) -> None:
    """Draw the instance, optional mesh and packings as SVG."""
    inst = _load_instance(src)
    mesh = _load_mesh(mesh_path, inst) if mesh_path else None
    packings = None
    if trace_path:
        try:
            packings = parse_packings(_read(trace_path))
        except (ValueError, KeyError) as exc:
            _die(USAGE, f"error: {trace_path}: bad PACKING line ({exc})")
    _write(out, render_svg(inst, mesh, packings))


main = cli

if __name__ == "__main__":  # pragma: no cover
    main()
