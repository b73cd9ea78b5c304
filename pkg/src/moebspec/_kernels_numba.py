"""Jitted kernels (numba backend).

Loop twins of ``_kernels_numpy`` with identical contracts.  Compiled
lazily on first call and cached on disk; keep ``fastmath`` off so both
backends stay bit-reproducible run to run.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def face_geometry(vertices, faces):
    nf = faces.shape[0]
    m = vertices.shape[1]
    areas = np.empty(nf)
    cots = np.empty((nf, 3))
    for f in range(nf):
        i0 = faces[f, 0]
        i1 = faces[f, 1]
        i2 = faces[f, 2]
        d0 = 0.0
        d1 = 0.0
        d2 = 0.0
        for a in range(m):
            e0 = vertices[i2, a] - vertices[i1, a]
            e1 = vertices[i0, a] - vertices[i2, a]
            e2 = vertices[i1, a] - vertices[i0, a]
            d0 -= e1 * e2
            d1 -= e2 * e0
            d2 -= e0 * e1
        gram4 = d0 * d1 + d1 * d2 + d2 * d0
        if gram4 < 0.0:
            gram4 = 0.0
        root = np.sqrt(gram4)
        areas[f] = 0.5 * root
        if root > 0.0:
            cots[f, 0] = d0 / root
            cots[f, 1] = d1 / root
            cots[f, 2] = d2 / root
        else:
            cots[f, 0] = np.nan
            cots[f, 1] = np.nan
            cots[f, 2] = np.nan
    return areas, cots


@njit(cache=True)
def tri_areas(vertices, faces):
    nf = faces.shape[0]
    m = vertices.shape[1]
    areas = np.empty(nf)
    for f in range(nf):
        i0 = faces[f, 0]
        i1 = faces[f, 1]
        i2 = faces[f, 2]
        uu = 0.0
        vv = 0.0
        uv = 0.0
        for a in range(m):
            u = vertices[i1, a] - vertices[i0, a]
            v = vertices[i2, a] - vertices[i0, a]
            uu += u * u
            vv += v * v
            uv += u * v
        g = uu * vv - uv * uv
        if g < 0.0:
            g = 0.0
        areas[f] = 0.5 * np.sqrt(g)
    return areas


@njit(cache=True)
def lumped_vertex_areas(n_vertices, faces, face_areas):
    out = np.zeros(n_vertices)
    for f in range(faces.shape[0]):
        third = face_areas[f] / 3.0
        out[faces[f, 0]] += third
        out[faces[f, 1]] += third
        out[faces[f, 2]] += third
    return out


@njit(cache=True)
def area_centroid_moment(vertices, faces, face_areas):
    m = vertices.shape[1]
    out = np.zeros(m)
    for f in range(faces.shape[0]):
        w = face_areas[f] / 3.0
        for a in range(m):
            out[a] += w * (
                vertices[faces[f, 0], a]
                + vertices[faces[f, 1], a]
                + vertices[faces[f, 2], a]
            )
    return out


@njit(cache=True)
def invert_points(points, center, scale):
    n = points.shape[0]
    m = points.shape[1]
    out = np.empty((n, m))
    c2 = scale * scale
    for i in range(n):
        r2 = 0.0
        for a in range(m):
            d = points[i, a] - center[a]
            r2 += d * d
        w = c2 / r2
        for a in range(m):
            out[i, a] = center[a] + w * (points[i, a] - center[a])
    return out


@njit(cache=True)
def min_sq_distance(points, center):
    best = np.inf
    for i in range(points.shape[0]):
        r2 = 0.0
        for a in range(points.shape[1]):
            d = points[i, a] - center[a]
            r2 += d * d
        if r2 < best:
            best = r2
    return best
