"""Command-line frontend.

Subcommands: ``gen`` (write a surface as EMESH), ``spectrum`` (first
eigenvalues and diagnostics), ``willmore`` (area and bending energy),
``moebius`` (apply conformal primitives in command-line order) and
``verify`` (run the named verification suites).

Exit codes are a stable contract: 0 success, 1 verification failure,
2 usage error, 3 generation failure, 4 solver failure, 5 transform
failure.
"""

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import discreteops, eigen, meshcore, moebius, surfgen, verify
from .errors import (
    ConvergenceFailure,
    InsufficientSpectrum,
    InversionPole,
    MeshError,
    MoebspecError,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_GENERATION = 3
EXIT_SOLVER = 4
EXIT_TRANSFORM = 5


class _TransformAction(argparse.Action):
    """Collect transform flags preserving their command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        items = getattr(namespace, "transforms", None)
        if items is None:
            items = []
            namespace.transforms = items
        items.append((self.dest, values))


def _parse_vector(text):
    return np.array([float(x) for x in text.split(",")], dtype=np.float64)


def _parse_inversion(text, m):
    head, _, tail = text.partition(":")
    center = _parse_vector(head)
    if center.size != m:
        raise ValueError(f"inversion center has {center.size} entries, mesh has m={m}")
    return moebius.Inversion(center, float(tail) if tail else 1.0)


def _build_map(transforms, m):
    primitives = []
    for kind, raw in transforms:
        if kind == "inversion":
            primitives.append(_parse_inversion(raw, m))
        elif kind == "rotate":
            primitives.extend(moebius.random_rotation(int(raw), m).primitives)
        elif kind == "translate":
            offset = _parse_vector(raw)
            if offset.size != m:
                raise ValueError(f"translation has {offset.size} entries, mesh has m={m}")
            primitives.append(moebius.Translation(offset))
        elif kind == "scale":
            primitives.append(moebius.Homothety(float(raw)))
    return moebius.ConformalMap(tuple(primitives))


def _parse_res(text):
    if "x" in text:
        a, b = text.lower().split("x")
        return surfgen.GridResolution(int(a), int(b))
    n = int(text)
    return surfgen.GridResolution(n, n)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="moebspec",
        description="spectra, bending energy and conformal images of embedded surface meshes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a surface and write it as EMESH")
    p_gen.add_argument(
        "surface", choices=["sphere", "clifford", "anchor", "veronese", "cyclide"]
    )
    p_gen.add_argument("--res", type=_parse_res, help="grid resolution, e.g. 96x96")
    p_gen.add_argument("--subdiv", type=int, help="icosphere subdivision level")
    p_gen.add_argument("--radius", type=float, default=1.0, help="sphere radius")
    p_gen.add_argument("--a", type=float, default=1.0, help="anchor-ring tube radius")
    p_gen.add_argument("--inv-center", help="cyclide inversion center, e.g. 5,0,0")
    p_gen.add_argument("--inv-scale", type=float, default=1.0)
    p_gen.add_argument("-o", "--out", required=True, help="output EMESH path")

    p_spec = sub.add_parser("spectrum", help="first eigenvalues and diagnostics")
    p_spec.add_argument("mesh", help="EMESH file")
    p_spec.add_argument("--k", type=int, default=8)
    p_spec.add_argument("--tol", type=float, default=eigen.DEFAULT_SOLVE_TOL)
    p_spec.add_argument("--seed", type=int, default=0)

    p_wil = sub.add_parser("willmore", help="area, bending energy and defect")
    p_wil.add_argument("mesh", help="EMESH file")

    p_moe = sub.add_parser("moebius", help="apply conformal primitives in flag order")
    p_moe.add_argument("mesh", help="EMESH file")
    p_moe.add_argument("--inversion", dest="inversion", action=_TransformAction,
                       help="cx,cy,...:scale")
    p_moe.add_argument("--rotate", dest="rotate", action=_TransformAction,
                       help="seed for a deterministic rotation")
    p_moe.add_argument("--translate", dest="translate", action=_TransformAction,
                       help="tx,ty,...")
    p_moe.add_argument("--scale", dest="scale", action=_TransformAction,
                       help="homothety factor")
    p_moe.add_argument("--normalize-area", action="store_true",
                       help="rescale the image back to the input area")
    p_moe.add_argument("-o", "--out", required=True, help="output EMESH path")

    p_ver = sub.add_parser("verify", help="run verification suites")
    p_ver.add_argument("suite", choices=sorted(verify.SUITES) + ["all"])
    p_ver.add_argument("--csv", action="store_true", help="emit a flat CSV table")
    p_ver.add_argument("-o", "--out", help="write the report here instead of stdout")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--jobs", type=int, default=1,
                       help="run suites in parallel processes")
    return parser


def _cmd_gen(args, parser):
    try:
        if args.surface == "sphere":
            if args.res is not None:
                parser.error("sphere takes --subdiv, not --res")
            mesh = surfgen.gen_sphere(args.radius, args.subdiv if args.subdiv is not None else 4)
        elif args.surface == "clifford":
            if args.subdiv is not None:
                parser.error("clifford takes --res, not --subdiv")
            mesh = surfgen.gen_clifford(args.res or surfgen.GridResolution(96, 96))
        elif args.surface == "anchor":
            if args.subdiv is not None:
                parser.error("anchor takes --res, not --subdiv")
            mesh = surfgen.gen_anchor_ring(args.a, args.res or surfgen.GridResolution(128, 128))
        elif args.surface == "veronese":
            if args.res is not None:
                parser.error("veronese takes --subdiv, not --res")
            mesh = surfgen.gen_veronese(args.subdiv if args.subdiv is not None else 4)
        else:
            if args.inv_center is None:
                parser.error("cyclide requires --inv-center")
            mesh = surfgen.gen_cyclide(
                args.a, _parse_vector(args.inv_center), args.inv_scale,
                args.res or surfgen.GridResolution(128, 128),
            )
    except (MoebspecError, ValueError) as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    meshcore.write_emesh(mesh, args.out)
    print(f"n {mesh.n_vertices}")
    print(f"A {meshcore.surface_area(mesh):.12g}")
    return EXIT_OK


def _cmd_spectrum(args):
    mesh = meshcore.read_emesh(args.mesh)
    centered = meshcore.center_mesh(mesh)
    try:
        spectrum = eigen.spectrum_of(centered, k=args.k, solve_tol=args.tol, seed=args.seed)
        cluster = eigen.first_nonzero(spectrum)
        resid = eigen.order_one_residual(centered, spectrum)
        takahashi = eigen.takahashi_radius_check(centered, spectrum, tol=0.02)
    except (ConvergenceFailure, InsufficientSpectrum, MoebspecError) as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    print("eigenvalues " + " ".join(f"{v:.12g}" for v in spectrum.eigenvalues))
    print(f"lambda1 {cluster.value:.12g}")
    print(f"multiplicity {cluster.multiplicity}")
    print(f"order1_residual {resid:.6g}")
    print(f"takahashi_r_star {takahashi.r_star:.12g}")
    deviation = (
        f"{takahashi.max_radius_deviation:.6g}" if takahashi.applicable else "not-applicable"
    )
    print(f"takahashi_deviation {deviation}")
    return EXIT_OK


def _cmd_willmore(args):
    mesh = meshcore.read_emesh(args.mesh)
    area = meshcore.surface_area(mesh)
    tmc = discreteops.total_mean_curvature(mesh)
    defect = discreteops.minkowski_defect(mesh)
    print(f"n {mesh.n_vertices}")
    print(f"A {area:.12g}")
    print(f"TMC {tmc:.12g}")
    print(f"minkowski_defect_rel {abs(defect) / area:.6g}")
    return EXIT_OK


def _cmd_moebius(args):
    mesh = meshcore.read_emesh(args.mesh)
    transforms = getattr(args, "transforms", [])
    try:
        cmap = _build_map(transforms, mesh.ambient_dim)
    except (ValueError, MoebspecError) as exc:
        print(f"bad transform: {exc}", file=sys.stderr)
        return EXIT_USAGE
    area_before = meshcore.surface_area(mesh)
    try:
        image = moebius.apply_mesh(cmap, mesh)
        scale = 1.0
        if args.normalize_area:
            image, scale = moebius.area_normalize(mesh, image)
    except (InversionPole, MeshError) as exc:
        print(f"transform failed: {exc}", file=sys.stderr)
        return EXIT_TRANSFORM
    meshcore.write_emesh(image, args.out)
    print(f"A_before {area_before:.12g}")
    print(f"A_after {meshcore.surface_area(image):.12g}")
    print(f"scale {scale:.12g}")
    return EXIT_OK


def _run_named_suite(name, seed):
    return name, [r.to_dict() for r in verify.run_suite(name, seed=seed)]


def _cmd_verify(args):
    names = sorted(verify.SUITES) if args.suite == "all" else [args.suite]
    results = {}
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for name, reports in pool.map(_run_named_suite, names, [args.seed] * len(names)):
                results[name] = reports
    else:
        for name in names:
            results[name] = _run_named_suite(name, args.seed)[1]

    all_pass = all(
        r["verdict"] != "fail" for reports in results.values() for r in reports
    )
    if args.csv:
        payload = _to_csv(results)
    else:
        payload = json.dumps({"suites": results}, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    for name in names:
        verdicts = [r["verdict"] for r in results[name]]
        print(
            f"suite {name}: {verdicts.count('pass')} pass, "
            f"{verdicts.count('fail')} fail, "
            f"{verdicts.count('not-applicable')} not-applicable",
            file=sys.stderr,
        )
    return EXIT_OK if all_pass else EXIT_VERIFY_FAIL


def _to_csv(results):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["experiment", "mesh", "n", "A", "lambda1", "mult", "TMC", "lambda1A",
         "margin", "verdict"]
    )
    for name in sorted(results):
        for r in results[name]:
            q = r["quantities"]
            margin = min(r["margins"].values()) if r["margins"] else ""
            writer.writerow(
                [
                    f"{name}/{r['experiment']}",
                    r["mesh"].get("generator", ""),
                    r["mesh"].get("n", ""),
                    q.get("A", ""),
                    q.get("lambda1", ""),
                    q.get("multiplicity", ""),
                    q.get("TMC", ""),
                    q.get("lambda1A", ""),
                    margin,
                    r["verdict"],
                ]
            )
    return buf.getvalue()


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen":
        return _cmd_gen(args, parser)
    if args.command == "spectrum":
        return _cmd_spectrum(args)
    if args.command == "willmore":
        return _cmd_willmore(args)
    if args.command == "moebius":
        return _cmd_moebius(args)
    return _cmd_verify(args)


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
