"""Triangle meshes embedded in E^m: validation, measures, quotients, I/O.

A mesh stands in for a closed immersed surface.  Validation is purely
combinatorial: every edge slot must glue with exactly one partner slot
(closed surface, orientable or not), the mesh must be edge-connected,
and no face may be degenerate.  Geometric self-intersection is allowed;
immersed surfaces self-intersect.

Antipodal quotients (projective planes) can produce parallel edges:
two distinct edges joining the same vertex pair.  Edge bookkeeping
therefore counts *slots* per vertex pair; a pair carrying ``2k`` slots
holds ``k`` edges with two faces each, an odd count is a boundary or a
pinch and is rejected.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from . import kernels
from .errors import (
    DegenerateFace,
    DisconnectedMesh,
    IndexOutOfRange,
    NoAntipodalPairing,
    NonManifoldEdge,
    NonpositiveScale,
    SelfMappedFace,
)

DEGENERATE_AREA_REL = 1e-14
ANTIPODAL_TOL_REL = 1e-9


@dataclass(frozen=True)
class EmbeddedMesh:
    """Closed triangle mesh with vertices in E^m (m >= 3).

    Immutable after construction; build instances through
    ``validate_mesh`` or the generators in ``surfgen``.
    """

    vertices: np.ndarray
    faces: np.ndarray
    is_quotient: bool = False
    closed: bool = True

    @property
    def ambient_dim(self):
        return self.vertices.shape[1]

    @property
    def n_vertices(self):
        return self.vertices.shape[0]

    @property
    def n_faces(self):
        return self.faces.shape[0]

    @property
    def n_edges(self):
        """Number of glued edges (slot pairs), counting parallel edges."""
        return 3 * self.n_faces // 2

    def diameter(self):
        """Bounding-box diagonal, the length scale used by tolerances."""
        span = self.vertices.max(axis=0) - self.vertices.min(axis=0)
        return float(np.sqrt(span @ span))

    def with_vertices(self, vertices):
        """Same combinatorics over a new vertex array (revalidated)."""
        return validate_mesh(
            vertices, self.faces,
            is_quotient=self.is_quotient, require_closed=self.closed,
        )


@dataclass(frozen=True)
class VertexMeasure:
    """Lumped per-vertex areas; ``total`` equals the surface area."""

    areas: np.ndarray
    total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", float(self.areas.sum()))


def _freeze(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def edge_slot_counts(faces):
    """Undirected edge slots grouped per vertex pair.

    Returns ``(pairs, counts)``: unique (lo, hi) vertex pairs and how
    many face corners sit across each.
    """
    e = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    e.sort(axis=1)
    return np.unique(e, axis=0, return_counts=True)


def geometry_arrays(mesh):
    """Vertex/face arrays for the geometric kernels.

    On antipodal quotients each stored coordinate represents the point
    pair {x, -x}, so a face is lifted corner by corner to the sign
    nearest its first corner before any length or angle is taken; the
    lifted triangle is congruent to the one upstairs.  Plain meshes
    pass through untouched.
    """
    if not mesh.is_quotient:
        return mesh.vertices, mesh.faces
    tri = mesh.vertices[mesh.faces].copy()
    for t in (1, 2):
        d_plus = ((tri[:, t] - tri[:, 0]) ** 2).sum(axis=1)
        d_minus = ((tri[:, t] + tri[:, 0]) ** 2).sum(axis=1)
        flip = d_minus < d_plus
        tri[flip, t] *= -1.0
    coords = tri.reshape(-1, mesh.ambient_dim)
    faces = np.arange(coords.shape[0], dtype=np.int64).reshape(-1, 3)
    return coords, faces


def validate_mesh(raw_vertices, raw_faces, is_quotient=False, require_closed=True):
    """Check invariants and build an ``EmbeddedMesh``.

    ``require_closed=False`` skips the closed-surface and connectivity
    checks; it exists for flat test patches only.
    """
    vertices = np.asarray(raw_vertices, dtype=np.float64)
    faces = np.asarray(raw_faces, dtype=np.int64)
    if vertices.ndim != 2 or vertices.shape[1] < 3:
        raise IndexOutOfRange(
            f"vertices must be (n, m) with m >= 3, got shape {vertices.shape}"
        )
    if not np.isfinite(vertices).all():
        raise DegenerateFace("vertex coordinates must be finite")
    if faces.ndim != 2 or faces.shape[1] != 3 or faces.shape[0] == 0:
        raise IndexOutOfRange(f"faces must be (nf, 3), nf > 0, got shape {faces.shape}")
    n = vertices.shape[0]
    if faces.min() < 0 or faces.max() >= n:
        raise IndexOutOfRange("face index outside the vertex array")
    if (
        (faces[:, 0] == faces[:, 1])
        | (faces[:, 1] == faces[:, 2])
        | (faces[:, 2] == faces[:, 0])
    ).any():
        raise DegenerateFace("face with repeated vertices")

    mesh = EmbeddedMesh(
        _freeze(vertices), _freeze(faces), bool(is_quotient), bool(require_closed)
    )

    areas = kernels.tri_areas(*geometry_arrays(mesh))
    if (areas <= DEGENERATE_AREA_REL * areas.mean()).any():
        raise DegenerateFace("triangle with (numerically) zero area")

    if require_closed:
        pairs, counts = edge_slot_counts(faces)
        bad = counts % 2 != 0
        if bad.any():
            i, j = pairs[np.argmax(bad)]
            raise NonManifoldEdge(
                f"edge ({i}, {j}) has {counts[np.argmax(bad)]} incident faces"
            )
        adj = coo_matrix(
            (np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n)
        )
        n_comp, _ = connected_components(adj, directed=False)
        if n_comp != 1:
            raise DisconnectedMesh(f"mesh has {n_comp} components")

        sorted_faces = np.sort(faces, axis=1)
        _, face_counts = np.unique(sorted_faces, axis=0, return_counts=True)
        if (face_counts > 1).any():
            warnings.warn(
                "two faces share all three vertices: mesh is combinatorially "
                "closed but encloses zero volume",
                stacklevel=2,
            )
    return mesh


def surface_area(mesh):
    """Total area: sum of triangle areas in E^m."""
    return float(kernels.tri_areas(*geometry_arrays(mesh)).sum())


def vertex_areas(mesh):
    """Lumped vertex measure: one third of each incident triangle."""
    areas = kernels.tri_areas(*geometry_arrays(mesh))
    return VertexMeasure(
        _freeze(kernels.lumped_vertex_areas(mesh.n_vertices, mesh.faces, areas))
    )


def center_of_gravity(mesh):
    """Area-weighted centroid (the measure is area, not vertex count)."""
    coords, faces = geometry_arrays(mesh)
    areas = kernels.tri_areas(coords, faces)
    return kernels.area_centroid_moment(coords, faces, areas) / areas.sum()


def center_mesh(mesh):
    """Translate so the center of gravity lands on the origin."""
    return mesh.with_vertices(mesh.vertices - center_of_gravity(mesh))


def scale_mesh(mesh, c):
    """Similarity x -> c x; area scales by exactly c^2."""
    if not c > 0:
        raise NonpositiveScale(f"scale must be > 0, got {c}")
    return mesh.with_vertices(mesh.vertices * float(c))


def quotient_antipodal(mesh):
    """Identify v with -v; halves vertices, edges and faces.

    Requires the vertex set to be closed under negation (within
    ``1e-9 x diameter``) and every face to pair with a distinct
    antipodal partner face.
    """
    v = mesh.vertices
    n = mesh.n_vertices
    tol = ANTIPODAL_TOL_REL * mesh.diameter()
    dist, partner = cKDTree(v).query(-v, k=1)
    if (dist > tol).any():
        raise NoAntipodalPairing(
            f"{int((dist > tol).sum())} vertices have no antipodal partner"
        )
    idx = np.arange(n)
    if (partner == idx).any() or not (partner[partner] == idx).all():
        raise NoAntipodalPairing("antipodal pairing is not a free involution")

    rep = np.minimum(idx, partner)
    keep = np.flatnonzero(rep == idx)
    new_id = np.full(n, -1, dtype=np.int64)
    new_id[keep] = np.arange(keep.size)

    # Pair each face with the face on the negated vertices.
    nf = mesh.n_faces
    sorted_faces = np.sort(mesh.faces, axis=1)
    target = np.sort(partner[mesh.faces], axis=1)
    uniq, inv = np.unique(
        np.concatenate([sorted_faces, target]), axis=0, return_inverse=True
    )
    inv = inv.ravel()
    lookup = np.full(len(uniq), -1, dtype=np.int64)
    lookup[inv[:nf]] = np.arange(nf)
    partner_face = lookup[inv[nf:]]
    if (partner_face < 0).any():
        raise NoAntipodalPairing("face set is not closed under the antipodal map")
    if (partner_face == np.arange(nf)).any():
        raise SelfMappedFace("a face maps to itself under the antipodal map")

    keep_faces = np.flatnonzero(partner_face > np.arange(nf))
    if 2 * keep_faces.size != nf:
        raise NoAntipodalPairing("faces do not pair up two by two")
    return validate_mesh(v[keep], new_id[rep][mesh.faces[keep_faces]], is_quotient=True)


# -- EMESH text format --------------------------------------------------------
#
# line 1:  EMESH <m> <nv> <nf> <is_quotient:0|1>
# then nv vertex lines (m floats, 17 significant digits) and nf face
# lines (3 zero-based indices).  Blank lines and '#' comments ignored.


def write_emesh(mesh, path):
    """Write the mesh; floats round-trip bit-identically."""
    with open(path, "w") as fh:
        fh.write(
            f"EMESH {mesh.ambient_dim} {mesh.n_vertices} {mesh.n_faces} "
            f"{int(mesh.is_quotient)}\n"
        )
        for row in mesh.vertices:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")
        for f in mesh.faces:
            fh.write(f"{f[0]} {f[1]} {f[2]}\n")


def read_emesh(path):
    """Read and validate an EMESH file."""
    with open(path) as fh:
        lines = [
            s for s in (line.split("#", 1)[0].strip() for line in fh) if s
        ]
    if not lines or not lines[0].startswith("EMESH"):
        raise ValueError(f"{path}: missing EMESH header")
    head = lines[0].split()
    if len(head) != 5:
        raise ValueError(f"{path}: malformed header {lines[0]!r}")
    m, nv, nf, quot = (int(x) for x in head[1:])
    if m < 3:
        raise ValueError(f"{path}: ambient dimension {m} < 3")
    if len(lines) != 1 + nv + nf:
        raise ValueError(
            f"{path}: expected {1 + nv + nf} content lines, got {len(lines)}"
        )
    vertices = np.array(
        [[float(x) for x in line.split()] for line in lines[1 : 1 + nv]]
    )
    if vertices.shape != (nv, m):
        raise ValueError(f"{path}: vertex block has wrong shape")
    faces = np.array(
        [[int(x) for x in line.split()] for line in lines[1 + nv :]], dtype=np.int64
    )
    return validate_mesh(vertices, faces, is_quotient=bool(quot))
