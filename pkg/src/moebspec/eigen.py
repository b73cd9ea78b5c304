"""Generalized symmetric eigensolver for the pair (L, M) and diagnostics.

The diagonal mass turns L f = lambda M f into the ordinary symmetric
problem S w = lambda w with S = M^-1/2 L M^-1/2 and f = M^-1/2 w, so
M-orthonormal eigenvectors come for free.  Meshes up to
``DENSE_CUTOFF`` vertices run through a dense solver that doubles as
the brute-force oracle; larger ones use ARPACK shift-invert with a
small negative shift and a seeded start vector, which keeps the run
deterministic and returns the zero mode together with the low end of
the spectrum.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.sparse import diags
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .discreteops import cotan_stiffness, lumped_mass, rayleigh_quotient
from .errors import (
    ConvergenceFailure,
    InsufficientSpectrum,
    NotCentered,
    SizeMismatch,
)
from .meshcore import center_of_gravity

DENSE_CUTOFF = 500
DEFAULT_SOLVE_TOL = 1e-9
CENTERING_TOL_REL = 1e-6


@dataclass(frozen=True)
class SpectrumResult:
    """Ascending eigenpairs of (L, M) with convergence diagnostics.

    ``eigenvalues[i]`` pairs with column ``eigenvectors[:, i]``; the
    columns are M-orthonormal.  ``residuals[i]`` is
    ||L v - lambda M v|| / ||M v||, bounded by ``solve_tol`` times the
    symmetrized operator scale ``op_scale`` (backward error).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    k: int
    solve_tol: float
    method: str
    op_scale: float

    def scale(self):
        """Eigenvalue magnitude unit for clustering tolerances.

        The largest computed eigenvalue when one is resolved, with an
        operator-diagonal fallback: a k=1 solve sees only the zero mode
        and must not measure against it.
        """
        lam_max = float(np.abs(self.eigenvalues).max())
        return max(lam_max, 1e-12 * self.op_scale, 1e-300)


@dataclass(frozen=True)
class EigenCluster:
    """A numerically degenerate group of eigenvalues."""

    value: float
    indices: tuple
    multiplicity: int


def solve_generalized(L, M, k, solve_tol=DEFAULT_SOLVE_TOL, seed=0, method="auto",
                      shift=None):
    """Smallest k eigenpairs of L f = lambda M f.

    ``method`` is ``auto`` (dense up to 500 vertices, ARPACK above),
    ``dense`` or ``arpack``.  ``shift`` tunes the shift-invert target;
    by default a mild multiple of the mean symmetrized diagonal is
    used.  Deterministic for fixed inputs and seed.
    """
    M = np.asarray(M, dtype=np.float64)
    n = M.size
    if L.shape != (n, n):
        raise SizeMismatch(f"stiffness {L.shape} against mass of size {n}")
    if not 0 < k < n:
        raise SizeMismatch(f"need 0 < k < n, got k={k}, n={n}")
    if (M <= 0).any():
        raise SizeMismatch("mass entries must be positive")
    if method not in ("auto", "dense", "arpack"):
        raise ValueError(f"unknown method {method!r}")

    d = 1.0 / np.sqrt(M)
    half = diags(d)
    S = (half @ L @ half).tocsc()
    op_scale = float(S.diagonal().max())

    if method == "dense" or (method == "auto" and n <= DENSE_CUTOFF):
        method = "dense"
        w, z = scipy.linalg.eigh(S.toarray())
        w, z = w[:k], z[:, :k]
    else:
        method = "arpack"
        if shift is None:
            shift = 1e-3 * float(S.diagonal().mean())
        rng = np.random.default_rng(seed)
        v0 = rng.standard_normal(n)
        try:
            w, z = eigsh(S, k=k, sigma=-abs(shift), which="LM", v0=v0, tol=0)
        except ArpackNoConvergence as exc:
            raise ConvergenceFailure(str(exc)) from exc

    order = np.argsort(w)
    w = w[order]
    vecs = d[:, None] * z[:, order]

    mv = M[:, None] * vecs
    res_num = np.linalg.norm(L @ vecs - w[None, :] * mv, axis=0)
    residuals = res_num / np.linalg.norm(mv, axis=0)
    result = SpectrumResult(w, vecs, residuals, k, solve_tol, method, op_scale)
    # backward-error gate: residual small relative to the operator norm
    if residuals.max() > solve_tol * op_scale:
        raise ConvergenceFailure(
            f"residual {residuals.max():.3e} above "
            f"{solve_tol:.0e} x {op_scale:.3e}"
        )
    return result


def spectrum_of(mesh, k=8, solve_tol=DEFAULT_SOLVE_TOL, seed=0, method="auto",
                L=None, M=None):
    """Solve on a mesh, steering the shift from the coordinate functions.

    The centered coordinates are smooth trial functions whose Rayleigh
    quotients sit within a small factor of the first eigenvalue, which
    gives the shift-invert solver a well-separated target on any mesh,
    however distorted.
    """
    if L is None:
        L = cotan_stiffness(mesh)
    if M is None:
        M = lumped_mass(mesh)
    total = M.sum()
    quotients = []
    for i in range(mesh.ambient_dim):
        f = mesh.vertices[:, i]
        f = f - (f @ M) / total
        if float(f @ (M * f)) > 0.0:
            quotients.append(rayleigh_quotient(L, M, f))
    shift = 0.5 * min(quotients) if quotients else None
    return solve_generalized(L, M, k, solve_tol, seed, method, shift=shift)


def first_nonzero(spectrum, cluster_tol=None):
    """Cluster of the smallest eigenvalues beyond the zero mode.

    Eigenvalues below ten times the residual floor count as zero; the
    cluster then absorbs every eigenvalue within ``cluster_tol``
    (relative) of the first survivor.
    """
    lam = spectrum.eigenvalues
    scale = spectrum.scale()
    zero_tol = max(10.0 * float(spectrum.residuals.max()), 1e-10 * scale)
    nonzero = np.flatnonzero(lam > zero_tol)
    if nonzero.size == 0:
        raise InsufficientSpectrum(
            f"all {spectrum.k} computed eigenvalues sit in the zero cluster"
        )
    if cluster_tol is None:
        cluster_tol = max(1e-6, 5.0 * float(spectrum.residuals.max()) / scale)
    first = lam[nonzero[0]]
    members = nonzero[np.abs(lam[nonzero] - first) <= cluster_tol * max(first, 0.0)]
    return EigenCluster(
        float(lam[members].mean()), tuple(int(i) for i in members), members.size
    )


def _require_centered(mesh):
    drift = np.linalg.norm(center_of_gravity(mesh))
    if drift > CENTERING_TOL_REL * mesh.diameter():
        raise NotCentered(
            f"center of gravity at distance {drift:.3e} "
            f"(diameter {mesh.diameter():.3e})"
        )


def order_one_residual(mesh, spectrum, L=None, M=None):
    """How far the coordinates are from the first eigenspace.

    Worst coordinate value of ||L x - lambda1 M x|| (in the M^-1 norm)
    over lambda1 ||x||_M; zero when every coordinate is a first-band
    eigenfunction, dimensionless and scale-invariant.
    """
    _require_centered(mesh)
    if L is None:
        L = cotan_stiffness(mesh)
    if M is None:
        M = lumped_mass(mesh)
    lam1 = first_nonzero(spectrum).value
    worst = 0.0
    for i in range(mesh.ambient_dim):
        x = mesh.vertices[:, i]
        r = L @ x - lam1 * (M * x)
        num = np.sqrt(float(r @ (r / M)))
        den = lam1 * np.sqrt(float(x @ (M * x)))
        worst = max(worst, num / den)
    return worst


@dataclass(frozen=True)
class TakahashiReport:
    """Minimal-in-a-sphere diagnostic for (near) first-band embeddings."""

    r_star: float
    max_radius_deviation: float
    order1_residual: float
    tol: float
    applicable: bool
    passed: bool | None


def takahashi_radius_check(mesh, spectrum, tol, L=None, M=None):
    """Compare vertex radii against r* = sqrt(2 / lambda1).

    A first-band embedding must sit on the sphere of radius r*; the
    check is reported not-applicable when the coordinates are far from
    the first eigenspace (residual > 0.05).
    """
    _require_centered(mesh)
    resid = order_one_residual(mesh, spectrum, L, M)
    lam1 = first_nonzero(spectrum).value
    r_star = float(np.sqrt(2.0 / lam1))
    radii = np.linalg.norm(mesh.vertices, axis=1)
    deviation = float(np.abs(radii - r_star).max() / r_star)
    applicable = resid <= 0.05
    return TakahashiReport(
        r_star=r_star,
        max_radius_deviation=deviation,
        order1_residual=resid,
        tol=tol,
        applicable=applicable,
        passed=bool(deviation <= tol) if applicable else None,
    )
