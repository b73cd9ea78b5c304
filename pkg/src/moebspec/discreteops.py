"""Discrete differential operators on embedded meshes.

The Laplace operator is realized as the pair (L, M): cotangent
stiffness L (sparse, symmetric, positive semidefinite, zero row sums)
and lumped mass M (diagonal, stored as a vector of vertex areas).  The
sign convention makes the generalized eigenproblem L f = lambda M f
produce the nonnegative spectrum, and the mean curvature vector is
H = -(M^-1 L X)/2 column-wise on the coordinate array X; on the unit
sphere this points inward with |H| = 1 and makes the closed-surface
balance  A + sum(x . H) dV = 0  come out right.

Cotangent weights depend only on edge lengths, so everything works in
any ambient dimension and on non-orientable quotient meshes; obtuse
triangles yield negative off-diagonal weights and are not clamped
(clamping would break the exact scaling law and the grid oracle).
"""

import numpy as np
from scipy.sparse import coo_matrix, diags

from . import kernels
from .errors import SizeMismatch, ZeroVector
from .meshcore import geometry_arrays


def cotan_stiffness(mesh):
    """Cotangent stiffness matrix as sparse CSR.

    Off-diagonal L_ij = -(cot a + cot b)/2 over the angles opposite
    edge (i, j); diagonal entries make every row sum to zero.
    """
    _, cots = kernels.face_geometry(*geometry_arrays(mesh))
    n = mesh.n_vertices
    rows, cols, vals = [], [], []
    for t in range(3):
        i = mesh.faces[:, (t + 1) % 3]
        j = mesh.faces[:, (t + 2) % 3]
        w = -0.5 * cots[:, t]
        rows.extend([i, j])
        cols.extend([j, i])
        vals.extend([w, w])
    off = coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    ).tocsr()
    diag = -np.asarray(off.sum(axis=1)).ravel()
    return (off + diags(diag)).tocsr()


def lumped_mass(mesh):
    """Diagonal of the lumped mass matrix: barycentric vertex areas."""
    areas = kernels.tri_areas(*geometry_arrays(mesh))
    return kernels.lumped_vertex_areas(mesh.n_vertices, mesh.faces, areas)


def mean_curvature(mesh, L=None, M=None):
    """Per-vertex mean curvature vectors H = -(M^-1 L X)/2, shape (n, m)."""
    if L is None:
        L = cotan_stiffness(mesh)
    if M is None:
        M = lumped_mass(mesh)
    return -(L @ mesh.vertices) / (2.0 * M[:, None])


def total_mean_curvature(mesh, L=None, M=None):
    """Willmore-type energy: sum of |H|^2 times vertex area."""
    if M is None:
        M = lumped_mass(mesh)
    H = mean_curvature(mesh, L, M)
    return float(np.einsum("ij,ij->i", H, H) @ M)


def dirichlet_energy(L, f):
    """Quadratic form f^T L f (nonnegative for the cotangent L)."""
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (L.shape[0],):
        raise SizeMismatch(f"vector of size {f.shape} against operator {L.shape}")
    return float(f @ (L @ f))


def rayleigh_quotient(L, M, f):
    """f^T L f / f^T M f for the diagonal mass vector M."""
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (L.shape[0],) or M.shape != f.shape:
        raise SizeMismatch(
            f"vector {f.shape} against operator {L.shape} and mass {M.shape}"
        )
    denom = float(f @ (M * f))
    if denom == 0.0:
        raise ZeroVector("Rayleigh quotient of an M-null vector")
    return dirichlet_energy(L, f) / denom


def minkowski_defect(mesh, L=None, M=None):
    """Closed-surface balance A + sum_v (x_v . H_v) M_v (tends to zero)."""
    if M is None:
        M = lumped_mass(mesh)
    H = mean_curvature(mesh, L, M)
    return float(M.sum() + np.einsum("ij,ij->i", mesh.vertices, H) @ M)
