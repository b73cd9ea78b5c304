"""Parametric generators for the model surfaces.

All generators return validated ``EmbeddedMesh`` instances and are
deterministic for fixed inputs.  Periodic grids split every cell along
the same diagonal, which keeps the flat-torus stiffness matrix equal to
the classic five-point grid Laplacian and usable as a closed-form
oracle.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CenterOnSurface, DomainRadiusViolation, NonpositiveScale
from .meshcore import quotient_antipodal, validate_mesh
from .moebius import ConformalMap, Inversion, apply_mesh

VERONESE_DOMAIN_RADIUS = np.sqrt(3.0)


@dataclass(frozen=True)
class GridResolution:
    """Sample counts for the two periodic parameters of a grid surface."""

    n_u: int
    n_v: int

    def __post_init__(self):
        if self.n_u < 3 or self.n_v < 3:
            raise ValueError(f"resolution must be >= 3x3, got {self.n_u}x{self.n_v}")


def as_resolution(res):
    """Coerce an int, pair, or GridResolution."""
    if isinstance(res, GridResolution):
        return res
    if isinstance(res, int):
        return GridResolution(res, res)
    n_u, n_v = res
    return GridResolution(int(n_u), int(n_v))


def _torus_faces(n_u, n_v):
    """Two triangles per grid cell, periodic in both directions."""
    i, j = np.meshgrid(np.arange(n_u), np.arange(n_v), indexing="ij")
    v00 = (i * n_v + j).ravel()
    v10 = ((i + 1) % n_u * n_v + j).ravel()
    v11 = ((i + 1) % n_u * n_v + (j + 1) % n_v).ravel()
    v01 = (i * n_v + (j + 1) % n_v).ravel()
    return np.concatenate(
        [np.column_stack([v00, v10, v11]), np.column_stack([v00, v11, v01])]
    )


def gen_clifford(res):
    """Product of two unit circles in E^4: (cos u, sin u, cos v, sin v)."""
    res = as_resolution(res)
    u = 2.0 * np.pi * np.arange(res.n_u) / res.n_u
    v = 2.0 * np.pi * np.arange(res.n_v) / res.n_v
    uu, vv = np.meshgrid(u, v, indexing="ij")
    vertices = np.column_stack(
        [np.cos(uu).ravel(), np.sin(uu).ravel(), np.cos(vv).ravel(), np.sin(vv).ravel()]
    )
    return validate_mesh(vertices, _torus_faces(res.n_u, res.n_v))


def gen_anchor_ring(a, res):
    """Torus of revolution: tube radius a, center-circle radius sqrt(2) a."""
    if not a > 0:
        raise NonpositiveScale(f"tube radius must be > 0, got {a}")
    res = as_resolution(res)
    u = 2.0 * np.pi * np.arange(res.n_u) / res.n_u
    v = 2.0 * np.pi * np.arange(res.n_v) / res.n_v
    uu, vv = np.meshgrid(u, v, indexing="ij")
    ring = (np.sqrt(2.0) + np.cos(uu)) * a
    vertices = np.column_stack(
        [(ring * np.cos(vv)).ravel(), (ring * np.sin(vv)).ravel(), (a * np.sin(uu)).ravel()]
    )
    return validate_mesh(vertices, _torus_faces(res.n_u, res.n_v))


# Icosahedron with vertex set closed under v -> -v.
_PHI = (1.0 + np.sqrt(5.0)) / 2.0
_ICO_VERTICES = np.array(
    [
        [-1, _PHI, 0], [1, _PHI, 0], [-1, -_PHI, 0], [1, -_PHI, 0],
        [0, -1, _PHI], [0, 1, _PHI], [0, -1, -_PHI], [0, 1, -_PHI],
        [_PHI, 0, -1], [_PHI, 0, 1], [-_PHI, 0, -1], [-_PHI, 0, 1],
    ],
    dtype=np.float64,
)
_ICO_FACES = np.array(
    [
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ],
    dtype=np.int64,
)


def _subdivide_midpoint(vertices, faces):
    """One midpoint subdivision step: V' = V + E, F' = 4F."""
    edges = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    edges.sort(axis=1)
    uniq, inv = np.unique(edges, axis=0, return_inverse=True)
    inv = inv.ravel()
    mid = 0.5 * (vertices[uniq[:, 0]] + vertices[uniq[:, 1]])
    n = vertices.shape[0]
    m01, m12, m20 = np.split(n + inv, 3)
    a, b, c = faces[:, 0], faces[:, 1], faces[:, 2]
    new_faces = np.concatenate(
        [
            np.column_stack([a, m01, m20]),
            np.column_stack([b, m12, m01]),
            np.column_stack([c, m20, m12]),
            np.column_stack([m01, m12, m20]),
        ]
    )
    return np.concatenate([vertices, mid]), new_faces


def gen_sphere(r, subdiv):
    """Icosphere of radius r: midpoint-subdivided icosahedron, reprojected.

    The vertex and face sets stay exactly antipodally symmetric, so the
    output feeds ``quotient_antipodal`` directly.
    """
    if not r > 0:
        raise NonpositiveScale(f"radius must be > 0, got {r}")
    if subdiv < 0:
        raise ValueError(f"subdiv must be >= 0, got {subdiv}")
    vertices, faces = _ICO_VERTICES, _ICO_FACES
    for _ in range(subdiv):
        vertices, faces = _subdivide_midpoint(vertices, faces)
    vertices = vertices * (r / np.linalg.norm(vertices, axis=1))[:, None]
    return validate_mesh(vertices, faces)


def gen_ellipsoid(axes, subdiv):
    """Axis-aligned ellipsoid (icosphere with stretched coordinates)."""
    sphere = gen_sphere(1.0, subdiv)
    return validate_mesh(sphere.vertices * np.asarray(axes, dtype=np.float64), sphere.faces)


def veronese_map(p):
    """Quadratic map sending the sphere of radius sqrt(3) into E^5.

    Accepts a single 3-vector or an (n, 3) array; antipodal points map
    to the same image, and the image lies on the sphere of radius
    1/sqrt(3).
    """
    p = np.asarray(p, dtype=np.float64)
    single = p.ndim == 1
    pts = np.atleast_2d(p)
    if pts.shape[1] != 3:
        raise DomainRadiusViolation(f"expected 3-vectors, got shape {p.shape}")
    r2 = np.einsum("ij,ij->i", pts, pts)
    if (np.abs(r2 - 3.0) > 1e-12 * 3.0).any():
        raise DomainRadiusViolation("input must satisfy |p|^2 = 3 within 1e-12")
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    out = np.column_stack(
        [
            y * z / 3.0,
            z * x / 3.0,
            x * y / 3.0,
            (x * x - y * y) / 6.0,
            (x * x + y * y - 2.0 * z * z) / (6.0 * np.sqrt(3.0)),
        ]
    )
    return out[0] if single else out


def gen_veronese(subdiv):
    """Projective plane in E^5: antipodal icosphere quotient, mapped.

    Vertices land on the sphere of radius 1/sqrt(3) to 1e-12.
    """
    if subdiv < 1:
        raise ValueError(f"subdiv must be >= 1, got {subdiv}")
    sphere = gen_sphere(VERONESE_DOMAIN_RADIUS, subdiv)
    quotient = quotient_antipodal(sphere)
    return validate_mesh(
        veronese_map(quotient.vertices), quotient.faces, is_quotient=True
    )


def gen_cyclide(a, inv_center, inv_scale, res):
    """Inversion image of the anchor ring (a cyclide of Dupin)."""
    ring = gen_anchor_ring(a, res)
    center = np.asarray(inv_center, dtype=np.float64)
    gap = np.linalg.norm(ring.vertices - center, axis=1).min()
    if gap <= 1e-6:
        raise CenterOnSurface(
            f"inversion center within {gap:.2e} of the anchor ring"
        )
    return apply_mesh(ConformalMap((Inversion(center, float(inv_scale)),)), ring)
