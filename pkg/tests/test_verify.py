import numpy as np
import pytest

from moebspec import eigen, meshcore, moebius, surfgen, verify
from moebspec.errors import InversionPole, NotCentered


def test_refinement_series_requires_increasing():
    with pytest.raises(ValueError):
        verify.RefinementSeries((64, 32), (1.0, 2.0))


def test_refinement_series_ratios():
    series = verify.RefinementSeries((1, 2, 3), (0.4, 0.1, 0.05))
    assert series.ratios() == pytest.approx((4.0, 2.0))


def test_report_self_audit():
    report = verify.ExperimentReport(
        "demo", {"generator": "none", "n": 0}, {"x": 1.0},
        {"ok": 0.5, "bad": -0.1}, {},
    )
    assert report.verdict == "fail"
    report.margins["bad"] = 0.0
    assert report.recomputed_verdict() == "pass"


def test_report_serializes():
    report = verify.ExperimentReport("demo", {}, {"x": 1.0}, {"m": 1.0}, {"t": 2.0})
    d = report.to_dict()
    assert d["verdict"] == "pass"
    assert d["quantities"]["x"] == 1.0


# -- reilly ---------------------------------------------------------------------

def test_reilly_clifford_equality(clifford96):
    report = verify.check_reilly(clifford96, {"generator": "clifford", "n": 9216})
    assert report.verdict == "pass"
    assert abs(report.quantities["reilly_gap_rel"]) <= 0.02


def test_reilly_sphere_equality():
    mesh = surfgen.gen_sphere(1.0, 4)
    report = verify.check_reilly(mesh, {"generator": "sphere", "n": mesh.n_vertices})
    assert report.verdict == "pass"
    assert abs(report.quantities["reilly_gap_rel"]) <= 0.02


def test_reilly_ellipsoid_strict():
    mesh = surfgen.gen_ellipsoid((1.0, 1.0, 1.5), 4)
    report = verify.check_reilly(
        mesh, {"generator": "ellipsoid", "n": mesh.n_vertices}, strict_min=0.05
    )
    assert report.verdict == "pass"
    assert report.quantities["reilly_gap_rel"] >= 0.05


def test_reilly_margin_reproducible(clifford96):
    report = verify.check_reilly(clifford96, {})
    q = report.quantities
    rebuilt = q["reilly_gap_rel"] + report.tolerances["slack_rel"]
    assert report.margins["reilly"] == pytest.approx(rebuilt, abs=1e-15)


# -- minkowski ------------------------------------------------------------------

def test_minkowski_reports(sphere5):
    report = verify.check_minkowski(sphere5, {"generator": "sphere"}, tol=0.02)
    assert report.verdict == "pass"
    assert report.quantities["minkowski_defect_rel"] <= 0.02


def test_minkowski_suite_refinement_floor():
    reports = verify.suite_minkowski()
    refinement = [r for r in reports if r.experiment == "minkowski-refinement"][0]
    assert refinement.verdict == "pass"


# -- conformal TMC ----------------------------------------------------------------

def test_conformal_tmc_identity_exact():
    builder = lambda n: surfgen.gen_anchor_ring(1.0, (n, n))  # noqa: E731
    report = verify.check_conformal_tmc(
        builder, moebius.identity_map(), [24], {"generator": "anchor"}, tol=1e-15
    )
    assert report.quantities["drift_24"] == 0.0
    assert report.verdict == "pass"


def test_conformal_tmc_rigid():
    builder = lambda n: surfgen.gen_anchor_ring(1.0, (n, n))  # noqa: E731
    rigid = moebius.random_rotation(5, 3)
    report = verify.check_conformal_tmc(
        builder, rigid, [24], {"generator": "anchor"}, tol=1e-12
    )
    assert report.verdict == "pass"


def test_conformal_tmc_inversion_refinement():
    builder = lambda n: surfgen.gen_anchor_ring(1.0, (n, n))  # noqa: E731
    inversion = moebius.ConformalMap(
        (moebius.Inversion(np.array([5.0, 0.0, 0.0]), 2.0),)
    )
    report = verify.check_conformal_tmc(
        builder, inversion, [24, 48, 96], {"generator": "anchor"}
    )
    drifts = [report.quantities[f"drift_{n}"] for n in (24, 48, 96)]
    assert drifts[0] >= drifts[1] >= drifts[2]
    assert drifts[-1] <= 0.02
    assert report.verdict == "pass"


# -- theorem 1 --------------------------------------------------------------------

def test_theorem1_rigid_equality(clifford96):
    rigid = moebius.ConformalMap(
        moebius.random_rotation(7, 4).primitives
        + (moebius.Translation(np.array([0.3, -0.1, 0.2, 0.05])),)
    )
    report = verify.run_theorem1(clifford96, rigid, {"generator": "clifford"})
    assert report.verdict == "pass"
    lam_ratio = report.quantities["lambda1_image"] / report.quantities["lambda1_base"]
    assert abs(lam_ratio - 1.0) <= 1e-10


def test_theorem1_inversion_strict(clifford96):
    cmap = moebius.ConformalMap(
        (moebius.Inversion(np.array([3.0, 0.0, 0.0, 0.0]), 1.0),)
    )
    report = verify.run_theorem1(clifford96, cmap, {"generator": "clifford"})
    assert report.verdict == "pass"
    assert report.quantities["lambda1_image"] < report.quantities["lambda1_base"]


def test_theorem1_not_applicable_for_anchor():
    ring = surfgen.gen_anchor_ring(1.0, (48, 48))
    report = verify.run_theorem1(ring, moebius.identity_map(), {"generator": "anchor"})
    assert report.verdict == "not-applicable"


def test_homothety_scaling_then_normalization(clifford96):
    # lambda1 of the doubled mesh drops by exactly 4, and normalizing
    # the area restores equality
    spec0 = eigen.spectrum_of(clifford96, k=6)
    lam0 = eigen.first_nonzero(spec0).value
    doubled = moebius.apply_mesh(
        moebius.ConformalMap((moebius.Homothety(2.0),)), clifford96
    )
    lam2 = eigen.first_nonzero(eigen.spectrum_of(doubled, k=6)).value
    assert lam2 / lam0 == pytest.approx(0.25, rel=1e-11)
    normalized, _ = moebius.area_normalize(clifford96, doubled)
    lam_n = eigen.first_nonzero(eigen.spectrum_of(normalized, k=6)).value
    assert lam_n == pytest.approx(lam0, rel=1e-10)


# -- theorems 2 and 3 ----------------------------------------------------------------

def test_theorem2_report():
    maps = [
        moebius.ConformalMap((moebius.Inversion(np.array([4.5, 0, 0, 0.0]), 1.0),))
    ]
    report = verify.run_theorem2(maps, res=(48, 48), anchor_res=(64, 64))
    assert report.verdict == "pass"
    assert report.quantities["lambda1/identity"] == pytest.approx(1.0, abs=0.02)
    assert report.quantities["lambda1/map0"] <= 1.02
    assert report.quantities["lambda1/anchor"] <= 0.95
    assert report.quantities["anchor_area"] == pytest.approx(4 * np.pi**2, rel=0.005)


def test_theorem3_report():
    maps = [
        verify._seeded_inversion(0, 5, radius=3.0),
        moebius.random_rotation(11, 5),
    ]
    report = verify.run_theorem3(maps, subdiv=4)
    assert report.verdict == "pass"
    assert report.quantities["lambda1/identity"] == pytest.approx(6.0, abs=0.15)
    assert report.quantities["lambda1/map0"] <= 6.0 * 1.02
    assert report.margins["rigid_equality/map1"] >= 0


# -- cyclide ---------------------------------------------------------------------

def test_cyclide_bound():
    report = verify.run_cyclide(res=(64, 64))
    assert report.verdict == "pass"
    assert report.quantities["lambda1A"] < 4 * np.pi**2 * 0.99


def test_cyclide_center_on_ring_is_pole():
    ring = surfgen.gen_anchor_ring(1.0, (16, 16))
    with pytest.raises(InversionPole):
        verify.run_cyclide(inv_center=tuple(ring.vertices[0]), res=(16, 16))


# -- scaling and minimum principle ------------------------------------------------

@pytest.mark.parametrize("c", [1.0, 2.0, 0.05])
def test_check_scaling(c):
    mesh = surfgen.gen_sphere(1.0, 2)
    report = verify.check_scaling(mesh, c, {"generator": "sphere"})
    assert report.verdict == "pass"


def test_check_rigid_invariance():
    mesh = surfgen.gen_clifford((24, 24))
    report = verify.check_rigid_invariance(mesh, {"generator": "clifford"})
    assert report.verdict == "pass"


def test_minimum_principle_sphere():
    mesh = surfgen.gen_sphere(1.0, 3)
    report = verify.check_minimum_principle(
        mesh, {"generator": "sphere"}, trials=50, seed=0
    )
    assert report.verdict == "pass"
    assert report.margins["rayleigh_floor"] >= 0


def test_minimum_principle_clifford_equality(clifford96):
    report = verify.check_minimum_principle(
        clifford96, {"generator": "clifford"}, trials=20, seed=0, equality_tol=0.03
    )
    assert report.verdict == "pass"
    assert report.margins["poincare_equality"] >= 0


def test_minimum_principle_requires_centered():
    mesh = surfgen.gen_sphere(1.0, 2)
    moved = mesh.with_vertices(mesh.vertices + np.array([2.0, 0.0, 0.0]))
    # the check re-centers internally, so this must not raise
    report = verify.check_minimum_principle(moved, {}, trials=5)
    assert report.verdict == "pass"


def test_order_one_residual_requires_centered_mesh():
    mesh = surfgen.gen_sphere(1.0, 2)
    moved = mesh.with_vertices(mesh.vertices + np.array([2.0, 0.0, 0.0]))
    spectrum = eigen.spectrum_of(moved, k=6)
    with pytest.raises(NotCentered):
        eigen.order_one_residual(moved, spectrum)


# -- suite registry ----------------------------------------------------------------

def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        verify.run_suite("nope")


def test_fast_suites_all_pass_and_self_audit():
    for name in ("scaling", "reilly"):
        for report in verify.run_suite(name, seed=0):
            assert report.verdict == report.recomputed_verdict()
            assert report.verdict != "fail"
