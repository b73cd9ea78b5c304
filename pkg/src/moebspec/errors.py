"""Exception types raised across the package."""


class MoebspecError(Exception):
    """Base class for all package errors."""


# -- mesh validation ---------------------------------------------------------

class MeshError(MoebspecError):
    """Base class for mesh validation failures."""


class IndexOutOfRange(MeshError):
    """A face references a vertex index outside the vertex array."""


class DegenerateFace(MeshError):
    """A face has repeated vertices or (numerically) zero area."""


class NonManifoldEdge(MeshError):
    """An edge slot count that cannot be glued into a closed surface."""


class DisconnectedMesh(MeshError):
    """The mesh splits into more than one edge-connected component."""


class NoAntipodalPairing(MeshError):
    """Vertex or face set is not closed under the antipodal map v -> -v."""


class SelfMappedFace(MeshError):
    """A face is its own antipodal image, so the quotient is not simplicial."""


class NonpositiveScale(MoebspecError):
    """A similarity or homothety factor must be strictly positive."""


# -- conformal maps ----------------------------------------------------------

class InversionPole(MoebspecError):
    """A point (or mesh vertex) sits too close to an inversion center."""


# -- surface generators ------------------------------------------------------

class DomainRadiusViolation(MoebspecError):
    """Input point is not on the sphere of radius sqrt(3)."""


class CenterOnSurface(InversionPole):
    """An inversion center coincides with a surface vertex."""


# -- operators and solvers ---------------------------------------------------

class SizeMismatch(MoebspecError):
    """Operands have incompatible shapes."""


class ZeroVector(MoebspecError):
    """Rayleigh quotient of the zero vector is undefined."""


class ConvergenceFailure(MoebspecError):
    """Eigensolver hit its iteration cap above the requested tolerance."""


class InsufficientSpectrum(MoebspecError):
    """All computed eigenvalues sit in the zero cluster; increase k."""


class NotCentered(MoebspecError):
    """Operation requires the center of gravity at the origin."""
