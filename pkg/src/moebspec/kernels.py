"""Dispatch to the selected kernel backend (see ``backend``)."""

from .backend import BACKEND

if BACKEND == "numba":
    from ._kernels_numba import (  # noqa: F401
        area_centroid_moment,
        face_geometry,
        invert_points,
        lumped_vertex_areas,
        min_sq_distance,
        tri_areas,
    )
else:
    from ._kernels_numpy import (  # noqa: F401
        area_centroid_moment,
        face_geometry,
        invert_points,
        lumped_vertex_areas,
        min_sq_distance,
        tri_areas,
    )
