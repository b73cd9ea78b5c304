"""Pure-numpy kernels (fallback backend).

Same contracts as ``_kernels_numba``; see ``backend`` for selection.
All functions take C-contiguous float64 vertex arrays of shape (n, m)
and int64 face arrays of shape (nf, 3).
"""

import numpy as np


def face_geometry(vertices, faces):
    """Per-face areas and corner cotangents.

    Returns ``(areas, cots)`` where ``areas`` has shape (nf,) and
    ``cots`` has shape (nf, 3); ``cots[f, t]`` is the cotangent of the
    interior angle at corner ``t`` of face ``f``.  Only edge dot
    products enter, so any ambient dimension m works.  For a corner
    with adjacent edge vectors u, v:  cot = (u.v) / ||u x v||  and
    ||u x v||^2 = |u|^2 |v|^2 - (u.v)^2 = 4 area^2.
    """
    p0 = vertices[faces[:, 0]]
    p1 = vertices[faces[:, 1]]
    p2 = vertices[faces[:, 2]]
    e0 = p2 - p1
    e1 = p0 - p2
    e2 = p1 - p0
    d0 = -np.einsum("ij,ij->i", e1, e2)
    d1 = -np.einsum("ij,ij->i", e2, e0)
    d2 = -np.einsum("ij,ij->i", e0, e1)
    # 4 area^2 = d0 d1 + d1 d2 + d2 d0
    gram4 = d0 * d1 + d1 * d2 + d2 * d0
    gram4 = np.maximum(gram4, 0.0)
    root = np.sqrt(gram4)
    areas = 0.5 * root
    with np.errstate(divide="ignore", invalid="ignore"):
        cots = np.stack([d0, d1, d2], axis=1) / root[:, None]
    return areas, cots


def tri_areas(vertices, faces):
    """Per-face triangle areas in E^m."""
    return face_geometry(vertices, faces)[0]


def lumped_vertex_areas(n_vertices, faces, face_areas):
    """Barycentric vertex areas: one third of each incident face."""
    return np.bincount(
        faces.ravel(),
        weights=np.repeat(face_areas / 3.0, 3),
        minlength=n_vertices,
    )


def area_centroid_moment(vertices, faces, face_areas):
    """Sum of face centroid times face area (area-weighted first moment)."""
    centroids = vertices[faces].mean(axis=1)
    return centroids.T @ face_areas


def invert_points(points, center, scale):
    """Sphere inversion x -> c^2 (x - p)/|x - p|^2 + p, applied row-wise."""
    d = points - center
    r2 = np.einsum("ij,ij->i", d, d)
    return center + (scale * scale / r2)[:, None] * d


def min_sq_distance(points, center):
    """Smallest squared distance from any row of ``points`` to ``center``."""
    d = points - center
    return np.einsum("ij,ij->i", d, d).min()
