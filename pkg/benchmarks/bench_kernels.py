"""Compare the compiled face-labelling kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --sizes 64 256 1024 --repeat 5

Each size runs on two inputs: random blocked edges, and the edge pattern of a
square mesh (long cycles enclosing big regions, which is the pipeline's case).
Also times one full ``uniform_mesh`` run per backend in a subprocess, since
the backend is picked at import.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from homowall.kernels import _flood_py

try:
    from homowall.kernels import _flood
except ImportError:
    _flood = None


def random_edges(n: int, seed: int, p: float = 0.35):
    rng = np.random.default_rng(seed)
    return rng.random((n + 1, n)) < p, rng.random((n, n + 1)) < p


def mesh_edges(n: int, step: int):
    bh = np.zeros((n + 1, n), dtype=bool)
    bv = np.zeros((n, n + 1), dtype=bool)
    bh[::step, :] = True
    bv[:, ::step] = True
    return bh, bv


def best(fn, args, repeat: int) -> float:
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


PIPELINE = "import time; from homowall.generators import gen_uniform; from homowall.homogenizer import uniform_mesh; \
inst = gen_uniform({d}, 0); t = time.perf_counter(); assert uniform_mesh(inst, {ell}).ok; print(time.perf_counter() - t)"


def pipeline_seconds(pure: bool, d: int, ell: int) -> float:
    env = dict(os.environ, HOMOWALL_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", PIPELINE.format(d=d, ell=ell)], env=env, check=True, capture_output=True, text=True)
    return float(out.stdout)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--pipeline", type=int, nargs=2, metavar=("D", "ELL"), default=[122, 6])
    args = ap.parse_args(argv)
    if _flood is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first", file=sys.stderr)
        return 1
    print(f"{'input':<8}{'n':>6}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for n in args.sizes:
        for name, edges in (("random", random_edges(n, n)), ("mesh", mesh_edges(n, max(n // 8, 2)))):
            a = _flood_py.label_faces(*edges)
            b = _flood.label_faces(*edges)
            if not np.array_equal(a, b):
                print(f"labels differ on {name} n={n}", file=sys.stderr)
                return 2
            py = best(_flood_py.label_faces, edges, args.repeat)
            cy = best(_flood.label_faces, edges, args.repeat)
            print(f"{name:<8}{n:>6}{py:>12.5f}{cy:>12.5f}{py / cy:>9.1f}x")
    d, ell = args.pipeline
    py, cy = pipeline_seconds(True, d, ell), pipeline_seconds(False, d, ell)
    print(f"uniform_mesh d={d} ell={ell}: python {py:.3f}s, cython {cy:.3f}s, speedup {py / cy:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
