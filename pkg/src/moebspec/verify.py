"""Numerical verification catalog.

Each check instantiates one inequality or identity as a pass/fail
experiment.  Reports are self-auditing: ``margins`` holds signed slack
values (nonnegative means the check holds), so the verdict is a pure
function of the stored numbers and can be recomputed by any consumer.

Equality-type checks carry a 2% discretization budget and strict
inequalities a 1% one by default, set from refinement trends; every
report records the budget it used.
"""

from dataclasses import dataclass, field

import numpy as np

from . import discreteops, eigen, meshcore, moebius, surfgen

FOUR_PI_SQ = 4.0 * np.pi**2
EQUALITY_SLACK = 0.02
STRICT_SLACK = 0.01
DRIFT_FLOOR = 1e-12


@dataclass
class ExperimentReport:
    """Quantities, signed margins and a verdict for one experiment."""

    experiment: str
    mesh_meta: dict
    quantities: dict
    margins: dict
    tolerances: dict
    verdict: str = field(init=False, default="")
    applicable: bool = True

    def __post_init__(self):
        self.verdict = self.recomputed_verdict()

    def recomputed_verdict(self):
        """Re-derive the verdict from the stored margins."""
        if not self.applicable:
            return "not-applicable"
        ok = all(v >= 0 for v in self.margins.values())
        return "pass" if ok else "fail"

    @property
    def passed(self):
        return self.verdict != "fail"

    def to_dict(self):
        return {
            "experiment": self.experiment,
            "mesh": self.mesh_meta,
            "quantities": self.quantities,
            "margins": self.margins,
            "tolerances": self.tolerances,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class RefinementSeries:
    """A quantity tracked over strictly increasing resolutions."""

    resolutions: tuple
    values: tuple

    def __post_init__(self):
        if list(self.resolutions) != sorted(set(self.resolutions)):
            raise ValueError("resolutions must be strictly increasing")

    def ratios(self):
        """Successive improvement factors |v_k| / |v_{k+1}|."""
        v = [abs(x) for x in self.values]
        return tuple(
            a / b if b > 0 else np.inf for a, b in zip(v[:-1], v[1:])
        )


def _meta(generator, n, **params):
    return {"generator": generator, "params": params, "n": int(n)}


def _spectral_quantities(mesh, k=8, seed=0):
    """Shared bundle: area, first cluster, energy, first-band residual."""
    centered = meshcore.center_mesh(mesh)
    L = discreteops.cotan_stiffness(centered)
    M = discreteops.lumped_mass(centered)
    spectrum = eigen.spectrum_of(centered, k=k, seed=seed, L=L, M=M)
    cluster = eigen.first_nonzero(spectrum)
    area = meshcore.surface_area(centered)
    tmc = discreteops.total_mean_curvature(centered, L, M)
    quantities = {
        "A": area,
        "lambda1": cluster.value,
        "multiplicity": cluster.multiplicity,
        "TMC": tmc,
        "lambda1A": cluster.value * area,
        "order1_residual": eigen.order_one_residual(centered, spectrum, L, M),
    }
    return centered, L, M, spectrum, quantities


# -- individual checks --------------------------------------------------------

def check_reilly(mesh, meta, slack_rel=EQUALITY_SLACK, strict_min=None, seed=0):
    """Energy bound: TMC >= (lambda1 / 2) A, equality for first-band meshes."""
    _, _, _, _, q = _spectral_quantities(mesh, seed=seed)
    half_la = 0.5 * q["lambda1A"]
    gap = q["TMC"] - half_la
    gap_rel = gap / half_la
    q["reilly_gap"] = gap
    q["reilly_gap_rel"] = gap_rel
    margins = {"reilly": gap_rel + slack_rel}
    tolerances = {"slack_rel": slack_rel}
    if strict_min is not None:
        margins["strictly_positive"] = gap_rel - strict_min
        tolerances["strict_min"] = strict_min
    return ExperimentReport("reilly", meta, q, margins, tolerances)


def check_minkowski(mesh, meta, tol=0.03):
    """Closed-surface balance |A + sum(x.H) dV| / A below budget."""
    area = meshcore.surface_area(mesh)
    defect = discreteops.minkowski_defect(mesh)
    rel = abs(defect) / area
    return ExperimentReport(
        "minkowski",
        meta,
        {"A": area, "minkowski_defect": defect, "minkowski_defect_rel": rel},
        {"defect": tol - rel},
        {"tol": tol},
    )


def check_conformal_tmc(builder, cmap, refinements, meta, tol=EQUALITY_SLACK):
    """Invariance of TMC under the map, tracked over refinements.

    ``builder(res)`` must return the surface at grid resolution
    ``res``.  Passes when the final relative drift is within ``tol``
    and the drift does not increase from one refinement to the next
    (an absolute floor absorbs roundoff on exactly invariant maps).
    """
    drifts = []
    for res in refinements:
        base = builder(res)
        image = moebius.apply_mesh(cmap, base)
        t0 = discreteops.total_mean_curvature(base)
        t1 = discreteops.total_mean_curvature(image)
        drifts.append(abs(t1 - t0) / t0)
    series = RefinementSeries(tuple(refinements), tuple(drifts))
    quantities = {
        f"drift_{r}": d for r, d in zip(series.resolutions, series.values)
    }
    margins = {"final_drift": tol - drifts[-1]}
    if len(drifts) >= 2:
        margins["non_increasing"] = min(
            a - b + DRIFT_FLOOR for a, b in zip(drifts[:-1], drifts[1:])
        )
    return ExperimentReport(
        "tmc-conformal", meta, quantities, margins,
        {"tol": tol, "drift_floor": DRIFT_FLOOR},
    )


def run_theorem1(mesh, cmap, meta, slack=EQUALITY_SLACK, seed=0):
    """Area-preserving conformal images of a first-band surface cannot
    raise the first eigenvalue.

    Re-centers, applies the map, normalizes back to the source area and
    compares first eigenvalues; not applicable when the source is not
    (numerically) first-band.
    """
    centered, _, _, spectrum, q = _spectral_quantities(mesh, seed=seed)
    applicable = q["order1_residual"] <= 0.05
    quantities = {
        "lambda1_base": q["lambda1"],
        "lambda1A_base": q["lambda1A"],
        "order1_residual": q["order1_residual"],
    }
    margins = {}
    if applicable:
        image = moebius.apply_mesh(cmap, centered)
        normalized, scale = moebius.area_normalize(centered, image)
        spec1 = eigen.spectrum_of(normalized, k=spectrum.k, seed=seed)
        lam1 = eigen.first_nonzero(spec1).value
        quantities.update(
            {
                "lambda1_image": lam1,
                "lambda1A_image": lam1 * meshcore.surface_area(normalized),
                "normalizing_scale": scale,
            }
        )
        margins["lambda1_bound"] = (1.0 + slack) - lam1 / q["lambda1"]
    report = ExperimentReport(
        "theorem1", meta, quantities, margins, {"slack": slack, "order1_max": 0.05}
    )
    report.applicable = applicable
    report.verdict = report.recomputed_verdict()
    return report


def _normalized_lambda1(mesh, target_area, k=8, seed=0):
    normalized, _ = moebius.scale_to_area(meshcore.center_mesh(mesh), target_area)
    spectrum = eigen.spectrum_of(normalized, k=k, seed=seed)
    return eigen.first_nonzero(spectrum).value


def run_theorem2(maps, res=(96, 96), anchor_a=2.0 ** -0.25,
                 anchor_res=(128, 128), slack=EQUALITY_SLACK, seed=0):
    """First-eigenvalue bound for conformal images of the flat torus.

    Every area-4pi^2 member must have lambda1 <= 1; the flat torus in
    E^4 attains the bound and the E^3 torus of revolution stays
    strictly below it.
    """
    base = surfgen.gen_clifford(res)
    quantities, margins = {}, {}

    lam_id = _normalized_lambda1(base, FOUR_PI_SQ, seed=seed)
    quantities["lambda1/identity"] = lam_id
    margins["bound/identity"] = (1.0 + slack) - lam_id
    margins["identity_attains"] = slack - abs(lam_id - 1.0)

    centered = meshcore.center_mesh(base)
    for i, cmap in enumerate(maps):
        image = moebius.apply_mesh(cmap, centered)
        lam = _normalized_lambda1(image, FOUR_PI_SQ, seed=seed)
        quantities[f"lambda1/map{i}"] = lam
        margins[f"bound/map{i}"] = (1.0 + slack) - lam

    if anchor_a is not None:
        ring = surfgen.gen_anchor_ring(anchor_a, anchor_res)
        quantities["anchor_area"] = meshcore.surface_area(ring)
        lam = _normalized_lambda1(ring, FOUR_PI_SQ, seed=seed)
        quantities["lambda1/anchor"] = lam
        margins["bound/anchor"] = (1.0 + slack) - lam
        margins["anchor_strictly_below"] = (1.0 - 0.05) - lam

    meta = _meta("clifford", base.n_vertices, res=list(res), maps=len(maps))
    return ExperimentReport(
        "theorem2", meta, quantities, margins,
        {"slack": slack, "anchor_margin": 0.05, "target_area": FOUR_PI_SQ},
    )


def run_theorem3(maps, subdiv=5, slack=EQUALITY_SLACK, identity_band=0.15, seed=0):
    """First-eigenvalue bound for conformal images of the projective
    plane in E^5: every area-2pi member must have lambda1 <= 6."""
    base = surfgen.gen_veronese(subdiv)
    target = 2.0 * np.pi
    quantities, margins = {}, {}

    lam_id = _normalized_lambda1(base, target, seed=seed)
    quantities["lambda1/identity"] = lam_id
    margins["bound/identity"] = 6.0 * (1.0 + slack) - lam_id
    margins["identity_attains"] = identity_band - abs(lam_id - 6.0)

    centered = meshcore.center_mesh(base)
    for i, cmap in enumerate(maps):
        image = moebius.apply_mesh(cmap, centered)
        lam = _normalized_lambda1(image, target, seed=seed)
        quantities[f"lambda1/map{i}"] = lam
        margins[f"bound/map{i}"] = 6.0 * (1.0 + slack) - lam
        if isinstance(cmap, moebius.ConformalMap) and cmap.is_rigid():
            margins[f"rigid_equality/map{i}"] = 1e-9 - abs(lam - lam_id) / lam_id

    meta = _meta("veronese", base.n_vertices, subdiv=subdiv, maps=len(maps))
    return ExperimentReport(
        "theorem3", meta, quantities, margins,
        {"slack": slack, "identity_band": identity_band, "target_area": target},
    )


def run_cyclide(a=1.0, inv_center=(5.0, 0.0, 0.0), inv_scale=1.0,
                res=(128, 128), strict=STRICT_SLACK, seed=0):
    """Inversion image of the anchor ring: lambda1 A < 4pi^2 strictly."""
    mesh = surfgen.gen_cyclide(a, inv_center, inv_scale, res)
    area = meshcore.surface_area(mesh)
    spectrum = eigen.spectrum_of(meshcore.center_mesh(mesh), k=8, seed=seed)
    lam1 = eigen.first_nonzero(spectrum).value
    lam1A = lam1 * area
    meta = _meta(
        "cyclide", mesh.n_vertices, a=a, inv_center=list(inv_center),
        inv_scale=inv_scale, res=list(res),
    )
    return ExperimentReport(
        "cyclide", meta,
        {"A": area, "lambda1": lam1, "lambda1A": lam1A},
        {"product_bound": (FOUR_PI_SQ * (1.0 - strict) - lam1A) / FOUR_PI_SQ},
        {"strict": strict},
    )


def check_scaling(mesh, c, meta, tol=1e-11, seed=0):
    """Exact discrete similarity laws: lambda1 c^2 and area / c^2 invariant."""
    base_area = meshcore.surface_area(mesh)
    spec0 = eigen.spectrum_of(mesh, k=6, seed=seed)
    lam0 = eigen.first_nonzero(spec0).value
    scaled = meshcore.scale_mesh(mesh, c)
    spec1 = eigen.spectrum_of(scaled, k=6, seed=seed)
    lam1 = eigen.first_nonzero(spec1).value
    area_rel = abs(meshcore.surface_area(scaled) / (c * c) - base_area) / base_area
    lam_rel = abs(lam1 * c * c - lam0) / lam0
    return ExperimentReport(
        "scaling", meta,
        {"c": c, "lambda1": lam0, "lambda1_scaled": lam1,
         "lambda1_rel_err": lam_rel, "area_rel_err": area_rel},
        {"lambda1_scaling": tol - lam_rel, "area_scaling": tol - area_rel},
        {"tol": tol},
    )


def check_rigid_invariance(mesh, meta, seed=0, tol=1e-10, product_tol=1e-11):
    """A, lambda1 and TMC under rotation+translation; lambda1 A under a
    full similarity (exact discrete identities)."""
    m = mesh.ambient_dim
    rotation = moebius.random_rotation(seed, m)
    rng = np.random.default_rng(seed + 1)
    offset = rng.standard_normal(m)
    rigid = moebius.ConformalMap(
        rotation.primitives + (moebius.Translation(offset),)
    )
    moved = moebius.apply_mesh(rigid, mesh)

    def bundle(msh):
        area = meshcore.surface_area(msh)
        spectrum = eigen.spectrum_of(msh, k=6, seed=seed)
        lam = eigen.first_nonzero(spectrum).value
        return area, lam, discreteops.total_mean_curvature(msh)

    a0, l0, t0 = bundle(mesh)
    a1, l1, t1 = bundle(moved)
    similar = meshcore.scale_mesh(moved, 3.0)
    a2, l2, _ = bundle(similar)
    rels = {
        "A": abs(a1 - a0) / a0,
        "lambda1": abs(l1 - l0) / l0,
        "TMC": abs(t1 - t0) / t0,
    }
    product_rel = abs(l2 * a2 - l0 * a0) / (l0 * a0)
    quantities = {"A": a0, "lambda1": l0, "TMC": t0, "lambda1A": l0 * a0}
    quantities.update({f"rigid_rel_{k}": v for k, v in rels.items()})
    quantities["similarity_product_rel"] = product_rel
    margins = {f"rigid_{k}": tol - v for k, v in rels.items()}
    margins["lambda1A_similarity"] = product_tol - product_rel
    return ExperimentReport(
        "rigid-invariance", meta, quantities, margins,
        {"tol": tol, "product_tol": product_tol},
    )


def check_minimum_principle(mesh, meta, trials=50, seed=0, equality_tol=None):
    """Rayleigh quotients of mean-zero vectors sit above lambda1, and the
    coordinate Dirichlet energies add up to twice the area."""
    centered, L, M, spectrum, q = _spectral_quantities(mesh, seed=seed)
    lam1 = q["lambda1"]
    rng = np.random.default_rng(seed)
    total = M.sum()
    worst = np.inf
    for _ in range(trials):
        f = rng.standard_normal(centered.n_vertices)
        f -= (f @ M) / total
        worst = min(worst, discreteops.rayleigh_quotient(L, M, f))

    coord_energy = sum(
        discreteops.dirichlet_energy(L, centered.vertices[:, i])
        for i in range(centered.ambient_dim)
    )
    two_area = 2.0 * q["A"]
    moment = float(
        np.einsum("ij,ij->i", centered.vertices, centered.vertices) @ M
    )
    quantities = {
        "A": q["A"],
        "lambda1": lam1,
        "min_rayleigh": worst,
        "coord_dirichlet_sum": coord_energy,
        "two_A": two_area,
        "lambda1_norm2": lam1 * moment,
    }
    margins = {
        "rayleigh_floor": worst - (lam1 - 1e-9),
        "coord_energy_identity": EQUALITY_SLACK - abs(coord_energy - two_area) / two_area,
        "poincare": (two_area - lam1 * moment) / two_area + EQUALITY_SLACK,
    }
    tolerances = {"rayleigh_slack": 1e-9, "identity_tol": EQUALITY_SLACK, "trials": trials}
    if equality_tol is not None:
        margins["poincare_equality"] = equality_tol - abs(two_area - lam1 * moment) / two_area
        tolerances["equality_tol"] = equality_tol
    return ExperimentReport(
        "minimum-principle", meta, quantities, margins, tolerances
    )


# -- suite catalog -------------------------------------------------------------

def _clifford_meta(res):
    return _meta("clifford", res[0] * res[1], res=list(res))


def _seeded_inversion(seed, m, radius, scale=1.0):
    rng = np.random.default_rng(seed)
    direction = rng.standard_normal(m)
    direction /= np.linalg.norm(direction)
    return moebius.ConformalMap(
        (moebius.Inversion(radius * direction, scale),)
    )


def suite_reilly(seed=0):
    clifford = surfgen.gen_clifford((96, 96))
    sphere = surfgen.gen_sphere(1.0, 4)
    ellipsoid = surfgen.gen_ellipsoid((1.0, 1.0, 1.5), 4)
    return [
        check_reilly(clifford, _clifford_meta((96, 96)), seed=seed),
        check_reilly(sphere, _meta("sphere", sphere.n_vertices, r=1.0, subdiv=4), seed=seed),
        check_reilly(
            ellipsoid,
            _meta("ellipsoid", ellipsoid.n_vertices, axes=[1.0, 1.0, 1.5], subdiv=4),
            strict_min=0.05, seed=seed,
        ),
    ]


def suite_minkowski(seed=0):
    del seed
    sphere = surfgen.gen_sphere(1.0, 5)
    clifford = surfgen.gen_clifford((96, 96))
    reports = [
        check_minkowski(sphere, _meta("sphere", sphere.n_vertices, r=1.0, subdiv=5), tol=0.02),
        check_minkowski(clifford, _clifford_meta((96, 96)), tol=0.02),
    ]
    defects = []
    for n in (64, 128):
        ring = surfgen.gen_anchor_ring(1.0, (n, n))
        report = check_minkowski(
            ring, _meta("anchor", ring.n_vertices, a=1.0, res=[n, n]), tol=0.03
        )
        defects.append(report.quantities["minkowski_defect_rel"])
        reports.append(report)
    series = RefinementSeries((64, 128), tuple(defects))
    ratio = series.ratios()[0]
    # The lumped-mass curvature makes the balance an algebraic identity
    # (sum_i x_i^T L x_i = 2A exactly), so the defect sits at roundoff
    # for every resolution; demand the improvement ratio only when a
    # genuine discretization error is present.
    floor = 1e-10
    if max(defects) <= floor:
        improvement = floor - max(defects)
    else:
        improvement = ratio - 2.0
    reports.append(
        ExperimentReport(
            "minkowski-refinement",
            _meta("anchor", 128 * 128, a=1.0, res=[128, 128]),
            {"defect_64": defects[0], "defect_128": defects[1], "ratio": ratio},
            {"improvement": improvement},
            {"min_ratio": 2.0, "exactness_floor": floor},
        )
    )
    return reports


def suite_tmc_conformal(seed=0):
    del seed
    builder = lambda n: surfgen.gen_anchor_ring(1.0, (n, n))  # noqa: E731
    inversion = moebius.ConformalMap(
        (moebius.Inversion(np.array([5.0, 0.0, 0.0]), 2.0),)
    )
    rigid = moebius.ConformalMap(
        moebius.random_rotation(3, 3).primitives
        + (moebius.Translation(np.array([0.4, -0.2, 0.7])),)
    )
    return [
        check_conformal_tmc(
            builder, moebius.identity_map(), [48],
            _meta("anchor", 48 * 48, a=1.0, map="identity"), tol=1e-15,
        ),
        check_conformal_tmc(
            builder, rigid, [48],
            _meta("anchor", 48 * 48, a=1.0, map="rigid"), tol=1e-12,
        ),
        check_conformal_tmc(
            builder, inversion, [48, 96, 192],
            _meta("anchor", 192 * 192, a=1.0, map="inversion(5,0,0):2"),
        ),
    ]


def suite_theorem1(seed=0):
    mesh = surfgen.gen_clifford((96, 96))
    meta = _clifford_meta((96, 96))
    rigid = moebius.ConformalMap(
        moebius.random_rotation(seed + 7, 4).primitives
        + (moebius.Translation(np.array([0.3, -0.1, 0.2, 0.05])),)
    )
    reports = [run_theorem1(mesh, rigid, {**meta, "map": "rigid"}, seed=seed)]
    reports[0].margins["rigid_equality"] = 1e-10 - abs(
        reports[0].quantities["lambda1_image"] / reports[0].quantities["lambda1_base"] - 1.0
    )
    reports[0].verdict = reports[0].recomputed_verdict()
    for i in range(5):
        cmap = _seeded_inversion(seed + i, 4, radius=4.5)
        reports.append(
            run_theorem1(mesh, cmap, {**meta, "map": f"inversion-seed{seed + i}"}, seed=seed)
        )
    strict = sum(
        1 for r in reports[1:]
        if r.quantities.get("lambda1_image", np.inf)
        <= 0.95 * r.quantities["lambda1_base"]
    )
    reports.append(
        ExperimentReport(
            "theorem1-strict-count", meta,
            {"strict_cases": strict, "total_inversions": 5},
            {"enough_strict": strict - 3},
            {"min_strict": 3, "strict_ratio": 0.95},
        )
    )
    return reports


def suite_theorem2(seed=0):
    maps = [_seeded_inversion(seed + i, 4, radius=4.5) for i in range(3)]
    return [run_theorem2(maps, seed=seed)]


def suite_theorem3(seed=0):
    maps = [
        _seeded_inversion(seed, 5, radius=3.0 + 1.0 / np.sqrt(3.0)),
        moebius.random_rotation(seed + 11, 5),
    ]
    return [run_theorem3(maps, seed=seed)]


def suite_cyclide(seed=0):
    reports = [run_cyclide(seed=seed)]
    alt_1 = run_cyclide(inv_center=(0.0, 0.0, 10.0), inv_scale=3.0, res=(64, 64), seed=seed)
    alt_2 = run_cyclide(inv_center=(0.0, 0.0, 10.0), inv_scale=1.0, res=(64, 64), seed=seed)
    product_rel = abs(
        alt_1.quantities["lambda1A"] / alt_2.quantities["lambda1A"] - 1.0
    )
    alt_1.quantities["lambda1A_scale_rel"] = product_rel
    alt_1.margins["scale_invariance"] = 1e-11 - product_rel
    alt_1.verdict = alt_1.recomputed_verdict()
    reports.extend([alt_1, alt_2])
    return reports


def suite_scaling(seed=0):
    sphere = surfgen.gen_sphere(1.0, 3)
    clifford = surfgen.gen_clifford((32, 32))
    veronese = surfgen.gen_veronese(3)
    reports = []
    for c in (0.1, 2.0, 17.0):
        reports.append(
            check_scaling(sphere, c, _meta("sphere", sphere.n_vertices, r=1.0, subdiv=3, c=c), seed=seed)
        )
    reports.append(check_scaling(clifford, 2.0, {**_clifford_meta((32, 32)), "c": 2.0}, seed=seed))
    reports.append(
        check_scaling(veronese, 0.05, _meta("veronese", veronese.n_vertices, subdiv=3, c=0.05), seed=seed)
    )
    reports.append(
        check_rigid_invariance(sphere, _meta("sphere", sphere.n_vertices, r=1.0, subdiv=3), seed=seed)
    )
    reports.append(
        check_rigid_invariance(clifford, _clifford_meta((32, 32)), seed=seed)
    )
    return reports


def suite_minprinciple(seed=0):
    sphere = surfgen.gen_sphere(1.0, 3)
    clifford = surfgen.gen_clifford((96, 96))
    return [
        check_minimum_principle(
            sphere, _meta("sphere", sphere.n_vertices, r=1.0, subdiv=3),
            trials=50, seed=seed,
        ),
        check_minimum_principle(
            clifford, _clifford_meta((96, 96)),
            trials=50, seed=seed, equality_tol=0.03,
        ),
    ]


SUITES = {
    "reilly": suite_reilly,
    "minkowski": suite_minkowski,
    "tmc-conformal": suite_tmc_conformal,
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
    "theorem3": suite_theorem3,
    "cyclide": suite_cyclide,
    "scaling": suite_scaling,
    "minprinciple": suite_minprinciple,
}


def run_suite(name, seed=0):
    """Run one named suite; returns its reports in a fixed order."""
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return suite(seed=seed)
