"""Conformal transformations of E^m as composable primitives.

Every conformal map of Euclidean m-space (m >= 3) factors into
translations, rotations, homotheties and sphere inversions; a
``ConformalMap`` is a flat list of those primitives applied left to
right, with no algebraic simplification.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InversionPole, NonpositiveScale
from .meshcore import scale_mesh, surface_area

ROTATION_ORTHO_TOL = 1e-12
POINT_POLE_TOL = 1e-12
MESH_POLE_TOL = 1e-6


@dataclass(frozen=True)
class Translation:
    offset: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "offset", np.ascontiguousarray(self.offset, dtype=np.float64)
        )


@dataclass(frozen=True)
class Rotation:
    matrix: np.ndarray

    def __post_init__(self):
        q = np.ascontiguousarray(self.matrix, dtype=np.float64)
        if np.abs(q.T @ q - np.eye(q.shape[0])).max() > ROTATION_ORTHO_TOL:
            raise ValueError("rotation matrix is not orthogonal to 1e-12")
        object.__setattr__(self, "matrix", q)


@dataclass(frozen=True)
class Homothety:
    factor: float

    def __post_init__(self):
        if not self.factor > 0:
            raise NonpositiveScale(f"homothety factor must be > 0, got {self.factor}")


@dataclass(frozen=True)
class Inversion:
    """x -> c^2 (x - p)/|x - p|^2 + p for center p and scale c > 0."""

    center: np.ndarray
    scale: float

    def __post_init__(self):
        if not self.scale > 0:
            raise NonpositiveScale(f"inversion scale must be > 0, got {self.scale}")
        object.__setattr__(
            self, "center", np.ascontiguousarray(self.center, dtype=np.float64)
        )


@dataclass(frozen=True)
class ConformalMap:
    """Ordered composition of primitives, applied left to right."""

    primitives: tuple

    def __iter__(self):
        return iter(self.primitives)

    def is_rigid(self):
        return all(isinstance(p, (Translation, Rotation)) for p in self.primitives)


def identity_map():
    return ConformalMap(())


def _apply_primitive(prim, pts, pole_tol):
    if isinstance(prim, Translation):
        return pts + prim.offset
    if isinstance(prim, Rotation):
        return pts @ prim.matrix.T
    if isinstance(prim, Homothety):
        return pts * prim.factor
    if isinstance(prim, Inversion):
        gap2 = kernels.min_sq_distance(pts, prim.center)
        if gap2 <= (pole_tol * prim.scale) ** 2:
            raise InversionPole(
                f"point within {np.sqrt(gap2):.3e} of inversion center"
            )
        return kernels.invert_points(pts, prim.center, prim.scale)
    raise TypeError(f"unknown primitive {type(prim).__name__}")


def apply_points(cmap, points, pole_tol=POINT_POLE_TOL):
    """Apply the composition to an (n, m) array of points."""
    pts = np.ascontiguousarray(points, dtype=np.float64)
    for prim in cmap:
        pts = _apply_primitive(prim, pts, pole_tol)
    return pts


def apply_point(cmap, x):
    """Apply the composition to a single m-vector."""
    return apply_points(cmap, np.atleast_2d(x))[0]


def apply_mesh(cmap, mesh):
    """Transform the vertex set; combinatorics are untouched.

    Before each inversion the current vertices must clear the center by
    more than ``1e-6`` of the current bounding-box diagonal; triangles
    near a pole distort without bound and poison the spectrum.
    """
    pts = mesh.vertices
    for prim in cmap:
        if isinstance(prim, Inversion):
            span = pts.max(axis=0) - pts.min(axis=0)
            guard = MESH_POLE_TOL * float(np.sqrt(span @ span))
            gap2 = kernels.min_sq_distance(pts, prim.center)
            if gap2 <= guard * guard:
                raise InversionPole(
                    f"mesh vertex within {np.sqrt(gap2):.3e} of inversion "
                    f"center (guard {guard:.3e})"
                )
        pts = _apply_primitive(prim, pts, POINT_POLE_TOL)
    return mesh.with_vertices(pts)


def scale_to_area(mesh, target_area):
    """Similarity bringing the mesh to the requested area.

    Returns ``(scaled_mesh, s)`` with ``s = sqrt(target / current)``.
    """
    s = float(np.sqrt(target_area / surface_area(mesh)))
    return scale_mesh(mesh, s), s


def area_normalize(reference, target):
    """Rescale ``target`` to the area of ``reference``; returns (mesh, s)."""
    return scale_to_area(target, surface_area(reference))


def random_rotation(seed, m):
    """Deterministic Haar-ish rotation with det +1 from a seeded QR."""
    if m < 2:
        raise ValueError(f"need ambient dimension >= 2, got {m}")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return ConformalMap((Rotation(q),))
