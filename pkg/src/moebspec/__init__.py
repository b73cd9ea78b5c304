"""Spectra, bending energy and conformal images of surface meshes in E^m."""

from .backend import BACKEND
from .meshcore import (
    EmbeddedMesh,
    VertexMeasure,
    center_mesh,
    center_of_gravity,
    quotient_antipodal,
    read_emesh,
    scale_mesh,
    surface_area,
    validate_mesh,
    vertex_areas,
    write_emesh,
)
from .surfgen import (
    GridResolution,
    gen_anchor_ring,
    gen_clifford,
    gen_cyclide,
    gen_sphere,
    gen_veronese,
    veronese_map,
)
from .moebius import (
    ConformalMap,
    Homothety,
    Inversion,
    Rotation,
    Translation,
    apply_mesh,
    apply_point,
    apply_points,
    area_normalize,
    random_rotation,
)
from .discreteops import (
    cotan_stiffness,
    dirichlet_energy,
    lumped_mass,
    mean_curvature,
    minkowski_defect,
    rayleigh_quotient,
    total_mean_curvature,
)
from .eigen import (
    EigenCluster,
    SpectrumResult,
    first_nonzero,
    order_one_residual,
    solve_generalized,
    spectrum_of,
    takahashi_radius_check,
)
from .verify import ExperimentReport, RefinementSeries, run_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EmbeddedMesh",
    "VertexMeasure",
    "GridResolution",
    "ConformalMap",
    "Translation",
    "Rotation",
    "Homothety",
    "Inversion",
    "SpectrumResult",
    "EigenCluster",
    "ExperimentReport",
    "RefinementSeries",
    "validate_mesh",
    "surface_area",
    "vertex_areas",
    "center_of_gravity",
    "center_mesh",
    "scale_mesh",
    "quotient_antipodal",
    "read_emesh",
    "write_emesh",
    "gen_clifford",
    "gen_anchor_ring",
    "gen_sphere",
    "veronese_map",
    "gen_veronese",
    "gen_cyclide",
    "apply_point",
    "apply_points",
    "apply_mesh",
    "area_normalize",
    "random_rotation",
    "cotan_stiffness",
    "lumped_mass",
    "mean_curvature",
    "total_mean_curvature",
    "dirichlet_energy",
    "rayleigh_quotient",
    "minkowski_defect",
    "solve_generalized",
    "spectrum_of",
    "first_nonzero",
    "order_one_residual",
    "takahashi_radius_check",
    "run_suite",
]
