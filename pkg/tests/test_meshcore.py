import numpy as np
import pytest

from moebspec import meshcore, surfgen
from moebspec.errors import (
    DegenerateFace,
    DisconnectedMesh,
    IndexOutOfRange,
    NoAntipodalPairing,
    NonManifoldEdge,
    NonpositiveScale,
)
from conftest import OCTA_FACES, OCTA_VERTICES

UNIT_SQUARE_V = np.array(
    [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]], dtype=np.float64
)
UNIT_SQUARE_F = np.array([[0, 1, 2], [0, 2, 3]], dtype=np.int64)


# -- validation ---------------------------------------------------------------

def test_octahedron_validates(octahedron):
    assert octahedron.n_vertices == 6
    assert octahedron.n_faces == 8
    assert octahedron.ambient_dim == 3


def test_pillow_passes_with_warning():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=np.float64)
    f = np.array([[0, 1, 2], [0, 2, 1]], dtype=np.int64)
    with pytest.warns(UserWarning, match="zero volume"):
        mesh = meshcore.validate_mesh(v, f)
    assert mesh.n_faces == 2


def test_single_triangle_is_open():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=np.float64)
    with pytest.raises(NonManifoldEdge):
        meshcore.validate_mesh(v, [[0, 1, 2]])


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        meshcore.validate_mesh(UNIT_SQUARE_V, [[0, 1, 7], [0, 2, 3]])


def test_repeated_vertex_in_face():
    with pytest.raises(DegenerateFace):
        meshcore.validate_mesh(UNIT_SQUARE_V, [[0, 1, 1], [0, 2, 3]])


def test_zero_area_face_rejected():
    v = np.concatenate([OCTA_VERTICES, [[1.0, 1e-17, 0.0]]])
    f = np.concatenate([OCTA_FACES, [[0, 6, 2], [2, 6, 0]]])
    with pytest.raises((DegenerateFace, NonManifoldEdge)):
        meshcore.validate_mesh(v, f)


def test_disconnected_mesh_rejected():
    v = np.concatenate([OCTA_VERTICES, OCTA_VERTICES + 10.0])
    f = np.concatenate([OCTA_FACES, OCTA_FACES + 6])
    with pytest.raises(DisconnectedMesh):
        meshcore.validate_mesh(v, f)


def test_ambient_dim_below_three_rejected():
    with pytest.raises(IndexOutOfRange):
        meshcore.validate_mesh(np.zeros((4, 2)), [[0, 1, 2]])


def test_vertices_are_frozen(octahedron):
    with pytest.raises(ValueError):
        octahedron.vertices[0, 0] = 9.0


# -- measures -----------------------------------------------------------------

def test_unit_square_area():
    patch = meshcore.validate_mesh(UNIT_SQUARE_V, UNIT_SQUARE_F, require_closed=False)
    assert meshcore.surface_area(patch) == pytest.approx(1.0, abs=1e-15)


def test_icosphere_area_and_convergence():
    errors = []
    for subdiv in (3, 4, 5):
        mesh = surfgen.gen_sphere(1.0, subdiv)
        errors.append(abs(meshcore.surface_area(mesh) - 4 * np.pi))
    assert errors[-1] / (4 * np.pi) < 0.005
    assert errors[0] / errors[1] >= 3.0
    assert errors[1] / errors[2] >= 3.0


def test_clifford_area(clifford96):
    area = meshcore.surface_area(clifford96)
    assert area == pytest.approx(4 * np.pi**2, rel=0.01)


def test_vertex_measure(octahedron):
    vm = meshcore.vertex_areas(octahedron)
    assert (vm.areas > 0).all()
    assert vm.total == pytest.approx(meshcore.surface_area(octahedron), rel=1e-12)


def test_center_of_gravity_symmetric(octahedron):
    assert np.abs(meshcore.center_of_gravity(octahedron)).max() <= 1e-14


def test_center_of_gravity_equivariant(octahedron):
    t = np.array([0.3, -1.2, 2.5])
    moved = octahedron.with_vertices(octahedron.vertices + t)
    np.testing.assert_allclose(meshcore.center_of_gravity(moved), t, atol=1e-14)


def test_center_of_gravity_anchor_ring():
    ring = surfgen.gen_anchor_ring(1.0, (32, 32))
    assert np.linalg.norm(meshcore.center_of_gravity(ring)) <= 1e-10


def test_center_mesh_translated(octahedron):
    moved = octahedron.with_vertices(octahedron.vertices + np.array([5.0, 1.0, -2.0]))
    centered = meshcore.center_mesh(moved)
    drift = np.linalg.norm(meshcore.center_of_gravity(centered))
    assert drift <= 1e-12 * centered.diameter()


def test_center_mesh_idempotent_bitwise(octahedron):
    # exact-zero centroid by symmetry, so centering must not move a bit
    centered = meshcore.center_mesh(octahedron)
    assert (centered.vertices == octahedron.vertices).all()


def test_center_mesh_clifford(clifford96):
    centered = meshcore.center_mesh(clifford96)
    assert np.abs(centered.vertices - clifford96.vertices).max() <= 1e-10


# -- scaling ------------------------------------------------------------------

def test_scale_identity(octahedron):
    assert (meshcore.scale_mesh(octahedron, 1.0).vertices == octahedron.vertices).all()


def test_scale_area_quadratic():
    patch = meshcore.validate_mesh(UNIT_SQUARE_V, UNIT_SQUARE_F, require_closed=False)
    assert meshcore.surface_area(meshcore.scale_mesh(patch, 2.0)) == pytest.approx(4.0, rel=1e-14)


@pytest.mark.parametrize("c", [0.1, 1.0, 2.0, 17.0])
def test_scale_law_exact(c):
    mesh = surfgen.gen_sphere(1.0, 3)
    base = meshcore.surface_area(mesh)
    scaled = meshcore.surface_area(meshcore.scale_mesh(mesh, c))
    assert scaled == pytest.approx(c * c * base, rel=1e-13)


def test_scale_rejects_nonpositive(octahedron):
    with pytest.raises(NonpositiveScale):
        meshcore.scale_mesh(octahedron, 0.0)
    with pytest.raises(NonpositiveScale):
        meshcore.scale_mesh(octahedron, -2.0)


# -- antipodal quotient -------------------------------------------------------

def test_quotient_icosahedron():
    ico = surfgen.gen_sphere(1.0, 0)
    q = meshcore.quotient_antipodal(ico)
    assert (q.n_vertices, q.n_faces) == (6, 10)
    assert q.is_quotient


def test_quotient_octahedron(octahedron):
    with pytest.warns(UserWarning):
        q = meshcore.quotient_antipodal(octahedron)
    assert (q.n_vertices, q.n_faces) == (3, 4)
    pairs, counts = meshcore.edge_slot_counts(q.faces)
    assert (counts % 2 == 0).all()
    assert q.n_edges == octahedron.n_edges // 2


def test_quotient_icosphere3_edge_audit():
    sphere = surfgen.gen_sphere(1.0, 3)
    assert sphere.n_vertices == 642
    q = meshcore.quotient_antipodal(sphere)
    assert q.n_vertices == 321
    # brute-force audit: every vertex pair carries an even slot count
    pairs, counts = meshcore.edge_slot_counts(q.faces)
    assert (counts == 2).all()
    assert q.n_faces == sphere.n_faces // 2
    assert q.n_edges == sphere.n_edges // 2


def test_quotient_halves_area():
    sphere = surfgen.gen_sphere(2.0, 3)
    q = meshcore.quotient_antipodal(sphere)
    assert meshcore.surface_area(q) == pytest.approx(
        0.5 * meshcore.surface_area(sphere), rel=1e-12
    )


def test_quotient_requires_symmetry():
    ring = surfgen.gen_anchor_ring(1.0, (8, 8))
    shifted = ring.with_vertices(ring.vertices + np.array([0.05, 0.0, 0.0]))
    with pytest.raises(NoAntipodalPairing):
        meshcore.quotient_antipodal(shifted)


# -- EMESH I/O ----------------------------------------------------------------

def test_emesh_round_trip_bitwise(tmp_path):
    mesh = surfgen.gen_veronese(2)
    path = tmp_path / "v.emesh"
    meshcore.write_emesh(mesh, path)
    back = meshcore.read_emesh(path)
    assert back.ambient_dim == 5
    assert back.is_quotient
    assert (back.vertices == mesh.vertices).all()
    assert (back.faces == mesh.faces).all()


def test_emesh_ignores_comments_and_blanks(tmp_path, octahedron):
    path = tmp_path / "o.emesh"
    meshcore.write_emesh(octahedron, path)
    text = path.read_text().splitlines()
    noisy = [text[0], "", "# a comment"] + text[1:] + ["   ", "# trailing"]
    path.write_text("\n".join(noisy) + "\n")
    back = meshcore.read_emesh(path)
    assert (back.vertices == octahedron.vertices).all()


def test_emesh_rejects_low_dimension(tmp_path):
    path = tmp_path / "bad.emesh"
    path.write_text("EMESH 2 3 1 0\n0 0\n1 0\n0 1\n0 1 2\n")
    with pytest.raises(ValueError, match="dimension"):
        meshcore.read_emesh(path)


def test_emesh_rejects_malformed_header(tmp_path):
    path = tmp_path / "bad.emesh"
    path.write_text("EMESH 3 3\n")
    with pytest.raises(ValueError):
        meshcore.read_emesh(path)
