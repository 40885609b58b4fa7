import random

import pytest
from conftest import random_instance
from hypothesis import given, settings
from hypothesis import strategies as st

from homowall.bounds import rainbow_parameters
from homowall.colorset import ColorSet
from homowall.generators import gen_random, gen_uniform
from homowall.geometry import (
    Mesh,
    MeshWindow,
    StripPacking,
    base_mesh,
    cell_cycle,
    enclose,
    mesh_compass_bits,
    region_colors,
    window_mesh,
)
from homowall.homogenizer import (
    BalancedPackings,
    Confinement,
    SortTrimOutput,
    confine_to_tiles,
    crop_and_rebalance,
    greedy_packings,
    homogeneous_wall,
    sort_and_trim,
)
from homowall.instance import Bridge, HostInstance
from homowall.verifier import (
    disjoint_path_count,
    mesh_adjacency,
    verify_homogeneous_wall,
    verify_lemma_output,
    verify_rainbow_row,
    verify_tangle_truncation,
    verify_uniform,
)
from homowall.weave import build_rainbow_mesh
from oracles import all_cycles_uniform, grid_mesh, nx_disjoint, random_grid_mesh

# --- uniformity -------------------------------------------------------------


def test_uniform_colorless_is_ok():
    inst = gen_uniform(12, 0)
    assert verify_uniform(inst, grid_mesh(inst, [0, 5, 11], [0, 4, 11])).ok


def test_one_blank_brick_is_named():
    inst = gen_uniform(12, 2)
    mesh = grid_mesh(inst, [0, 5, 11], [0, 4, 11])
    holes = {(r, c) for r in range(5, 11) for c in range(4, 11)}
    blank = HostInstance(12, 12, 2, {}, tuple(b for b in inst.bridges if b.face not in holes))
    verdict = verify_uniform(blank, Mesh(blank, mesh.horizontals, mesh.verticals))
    assert [v.witness[0] for v in verdict.violations] == ["cell(2,2)"]
    assert verdict.violations[0].witness[1] == "missing={1,2}"


def test_cell_check_matches_cycle_enumeration_on_two_hundred_meshes():
    rng = random.Random(11)
    agree = uniform = 0
    for k in range(200):
        inst = random_instance(rng, rng.randint(6, 11), rng.randint(6, 11), 2, rng.choice([0.3, 0.6, 0.95]))
        mesh = random_grid_mesh(rng, inst, 5)
        assert (mesh.n - 1) * (mesh.m - 1) <= 16
        fast = verify_uniform(inst, mesh).ok
        agree += fast == all_cycles_uniform(inst, mesh)
        uniform += fast
    assert agree == 200
    assert 10 < uniform < 190


# --- rainbow ----------------------------------------------------------------


def small_rainbow(inst):
    p, b, _ = rainbow_parameters(4, 2, inst.q)
    return build_rainbow_mesh(inst, greedy_packings(inst, MeshWindow.of(inst), p, b), 4, 2)


def test_rainbow_colorless_ok():
    inst = gen_uniform(40, 0)
    assert verify_rainbow_row(inst, small_rainbow(inst), interiors=True).ok


def test_rainbow_reports_missing_color():
    inst = gen_uniform(40, 0)
    p, b, _ = rainbow_parameters(4, 4, 0)
    rb = build_rainbow_mesh(inst, greedy_packings(inst, MeshWindow.of(inst), p, b), 4, 4)
    inner = [min(enclose(inst, c).region().faces) for c in rb.middle_cycles]
    bridges = (Bridge("a", inner[0], ColorSet([1, 2])), Bridge("b", inner[1], ColorSet([1])), Bridge("c", inner[2], ColorSet([1, 2])))
    host = HostInstance(40, 40, 2, {}, bridges)
    verdict = verify_rainbow_row(host, Mesh(host, rb.mesh.horizontals, rb.mesh.verticals))
    assert [(v.prop, v.witness) for v in verdict.violations] == [("rainbow-compass", ("cell(2)", "missing={2}"))]


def test_rainbow_verdict_matches_region_recount_on_fifty_runs():
    rng = random.Random(3)
    for k in range(50):
        inst = gen_random(rng.randint(40, 70), 2, rng.choice([0.01, 0.05, 0.3]), 0.5, k)
        rb = small_rainbow(inst)
        compass = mesh_compass_bits(rb.mesh)
        expected = all(
            ColorSet.from_bits(compass) <= region_colors(inst, enclose(inst, c).region(), True) for c in rb.middle_cycles
        )
        assert verify_rainbow_row(inst, rb).ok == expected


# --- walls ------------------------------------------------------------------


def test_single_path_wall_is_vacuously_homogeneous():
    res = homogeneous_wall(gen_uniform(122, 0), 1)
    assert verify_homogeneous_wall(res.mesh.host, res.mesh).ok


def test_pipeline_walls_are_homogeneous():
    rng = random.Random(8)
    done = 0
    for k in range(20):
        q = rng.randint(0, 2)
        inst = gen_uniform(rng.randint(122, 140), q) if k % 2 else gen_random(130, q, 0.9, 1.0, k)
        res = homogeneous_wall(inst, 1)
        if res.ok:
            done += 1
            assert verify_homogeneous_wall(inst, res.mesh).ok
    assert done >= 10


def test_stray_outside_color_in_compass():
    inst = gen_uniform(12, 1)
    extra = HostInstance(12, 12, 2, {}, inst.bridges + (Bridge("odd", (0, 0), ColorSet([2])),))
    wall = grid_mesh(extra, [0, 5, 11], [0, 4, 11])
    assert verify_homogeneous_wall(extra, wall, ColorSet([1])).names() == {"outside-color-in-compass"}
    assert verify_homogeneous_wall(extra, wall).names() == {"brick-missing-colors"}


# --- truncation -------------------------------------------------------------


def test_identity_truncation():
    inst = gen_uniform(8, 0)
    mesh = base_mesh(inst)
    assert verify_tangle_truncation(mesh, mesh).ok


def test_mesh_squeezed_into_few_rows():
    # valid meshes over the full grid always pass, so squeeze six paths into two rows
    inst = gen_uniform(12, 0)
    hs = tuple(tuple((3, c) for c in range(4 * k, 4 * k + 3)) for k in range(3))
    vs = tuple(tuple((4, c) for c in range(4 * k, 4 * k + 3)) for k in range(3))
    verdict = verify_tangle_truncation(Mesh(inst, hs, vs), base_mesh(inst), flow=False)
    assert verdict.names() == {"truncation-pair"}
    assert "rows=2" in verdict.violations[0].witness


def test_new_mesh_must_live_in_old():
    inst = gen_uniform(12, 0)
    old = window_mesh(inst, MeshWindow(0, 5, 0, 5))
    verdict = verify_tangle_truncation(base_mesh(inst), old)
    assert "truncation-outside-old-mesh" in verdict.names()



@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_flow_matches_networkx(seed):
    rng = random.Random(seed)
    inst = gen_uniform(rng.randint(4, 9), 0)
    old = random_grid_mesh(rng, inst, 6)
    adj = mesh_adjacency(old)
    verts = sorted(adj)
    src = rng.sample(verts, rng.randint(1, 6))
    dst = rng.sample(verts, rng.randint(1, 6))
    assert disjoint_path_count(adj, src, dst, 10**6) == nx_disjoint(adj, src, dst)


def test_criterion_agrees_with_flow_on_hundred_pairs():
    rng = random.Random(17)
    passed = 0
    for k in range(100):
        inst = gen_uniform(rng.randint(8, 20), 0)
        rows = sorted(rng.sample(range(inst.d_r), rng.randint(3, 8)))
        cols = sorted(rng.sample(range(inst.d_c), rng.randint(3, 8)))
        old = grid_mesh(inst, rows, cols)
        new = grid_mesh(inst, sorted(rng.sample(rows, rng.randint(2, len(rows)))), sorted(rng.sample(cols, rng.randint(2, len(cols)))))
        assert inst.d_r * inst.d_c <= 400
        if verify_tangle_truncation(new, old, flow=False).ok:
            passed += 1
            assert verify_tangle_truncation(new, old, flow=True).ok
    assert passed >= 20


# --- strip stage outputs ----------------------------------------------------


def test_stage_outputs_without_colors():
    inst = gen_uniform(40, 0)
    w = MeshWindow.of(inst)
    out = sort_and_trim(inst, w, "column", 0, 2, 1, 2, 1)
    assert verify_lemma_output(inst, "sort-trim", out, r=2, p=1, b=2, x=1).ok
    assert verify_lemma_output(inst, "crop", crop_and_rebalance(inst, w, 0, 2, 1, 2), r=2).ok
    assert verify_lemma_output(inst, "tiles", confine_to_tiles(inst, w, 0, 2, 1, 2), r=2).ok


def test_overlapping_frames_are_reported():
    inst = gen_uniform(30, 0)
    w = MeshWindow.of(inst)
    bad = StripPacking.unchecked(w, "column", ((0, 9), (5, 14)), 1, 2)
    out = SortTrimOutput(ColorSet(), bad, (), (), 1, 1)
    assert "frames-overlap" in verify_lemma_output(inst, "sort-trim", out, r=2, p=1, b=2, x=1).names()
    good = StripPacking(w, "row", ((0, 9),), 1, 2)
    crop = BalancedPackings(ColorSet(), ColorSet(), bad, good, w, ())
    assert "frames-overlap" in verify_lemma_output(inst, "crop", crop, r=2).names()
    tiles = Confinement(ColorSet(), ColorSet(), bad, good, w, (), ())
    assert "frames-overlap" in verify_lemma_output(inst, "tiles", tiles, r=2).names()


def test_claimed_color_without_cores_is_reported():
    inst = gen_uniform(30, 0)
    w = MeshWindow.of(inst)
    out = sort_and_trim(inst, w, "column", 0, 2, 1, 2, 2)
    lie = SortTrimOutput(ColorSet([1]), out.packing, (), (), 1, 1)
    assert "color-in-few-cores" in verify_lemma_output(inst, "sort-trim", lie, r=2, p=1, b=2, x=2).names()


def test_unknown_stage():
    with pytest.raises(ValueError):
        verify_lemma_output(gen_uniform(4, 0), "nope", None, r=2)


def test_cell_cycle_bits_match_region_recount():
    rng = random.Random(5)
    inst = random_instance(rng, 12, 12, 3, 0.5)
    mesh = grid_mesh(inst, [0, 4, 7, 11], [1, 6, 10])
    for i in range(mesh.n - 1):
        for j in range(mesh.m - 1):
            enc = enclose(inst, cell_cycle(mesh, i, j))
            assert enc.bits(inst) == region_colors(inst, enc.region()).bits
