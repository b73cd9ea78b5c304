#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the per-face geometry, mass lumping, centroid moment and point
inversion kernels on torus grids of increasing size, plus one full
stiffness assembly and eigensolve for context (the eigensolve is
scipy either way and dominates end-to-end runtime).

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 32 64 128 256 --output bench.json
"""

import argparse
import json
import time

import numpy as np

from moebspec import _kernels_numba, _kernels_numpy
from moebspec import discreteops, eigen, surfgen


def _time(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def warmup_jit(vertices, faces):
    areas = _kernels_numba.tri_areas(vertices, faces)
    _kernels_numba.face_geometry(vertices, faces)
    _kernels_numba.lumped_vertex_areas(vertices.shape[0], faces, areas)
    _kernels_numba.area_centroid_moment(vertices, faces, areas)
    center = np.full(vertices.shape[1], 5.0)
    _kernels_numba.invert_points(vertices, center, 1.0)
    _kernels_numba.min_sq_distance(vertices, center)


def bench_kernels(sizes, repeats):
    rows = []
    print(f"{'n':>8} {'kernel':>22} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}")
    print("-" * 68)
    for n in sizes:
        mesh = surfgen.gen_clifford((n, n))
        v, f = mesh.vertices, mesh.faces
        areas = _kernels_numpy.tri_areas(v, f)
        center = np.full(v.shape[1], 5.0)
        cases = [
            ("face_geometry", (v, f)),
            ("lumped_vertex_areas", (v.shape[0], f, areas)),
            ("area_centroid_moment", (v, f, areas)),
            ("invert_points", (v, center, 1.0)),
        ]
        for name, args in cases:
            t_nb = _time(getattr(_kernels_numba, name), *args, repeats=repeats)
            t_np = _time(getattr(_kernels_numpy, name), *args, repeats=repeats)
            print(
                f"{v.shape[0]:>8} {name:>22} {t_nb * 1e3:>12.3f} "
                f"{t_np * 1e3:>12.3f} {t_np / t_nb:>8.1f}x"
            )
            rows.append(
                {
                    "n": v.shape[0],
                    "kernel": name,
                    "numba_s": t_nb,
                    "numpy_s": t_np,
                    "speedup": t_np / t_nb,
                }
            )
    return rows


def bench_pipeline(n):
    mesh = surfgen.gen_clifford((n, n))
    t0 = time.perf_counter()
    L = discreteops.cotan_stiffness(mesh)
    M = discreteops.lumped_mass(mesh)
    t_assembly = time.perf_counter() - t0
    t0 = time.perf_counter()
    eigen.solve_generalized(L, M, k=8)
    t_solve = time.perf_counter() - t0
    print(
        f"\npipeline at n={mesh.n_vertices}: assembly {t_assembly * 1e3:.1f} ms, "
        f"eigensolve {t_solve * 1e3:.1f} ms (scipy, backend-independent)"
    )
    return {"n": mesh.n_vertices, "assembly_s": t_assembly, "eigsolve_s": t_solve}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 48, 96, 192])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--output", help="write results as JSON")
    args = parser.parse_args()

    warm = surfgen.gen_clifford((8, 8))
    print("warming up JIT...")
    warmup_jit(warm.vertices, warm.faces)

    results = {
        "sizes": args.sizes,
        "kernels": bench_kernels(args.sizes, args.repeats),
        "pipeline": bench_pipeline(max(args.sizes)),
    }
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(results, fh, indent=2)
        print(f"results written to {args.output}")


if __name__ == "__main__":
    main()
