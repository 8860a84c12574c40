"""Exception types shared across the package."""


class HexflowError(Exception):
    """Base class for all package-specific errors."""


class NonAdmissibleDirection(HexflowError):
    """A direction/normal is not aligned with any Wulff facet."""


class ParamOutOfRange(HexflowError):
    """Facet parameter outside [0, d] or point not on the facet."""


class UnboundedEdge(HexflowError):
    """Half-lines have no finite length."""


class SchemaError(HexflowError):
    """Malformed network document."""


class DuplicateId(SchemaError):
    """Repeated vertex or edge identifier."""


class DanglingReference(SchemaError):
    """Edge refers to an unknown vertex."""


class UnsupportedJunction(HexflowError):
    """Junction degree above 6 (impossible under a hexagonal anisotropy)."""


class NotConical(HexflowError):
    """Operation requires a network of half-lines from a single point."""


class NoCHField(HexflowError):
    """No Cahn-Hoffman field satisfies the balance conditions."""


class SingularSystem(HexflowError):
    """Internal error: the assembled SPD system could not be solved."""


class HeightBoundViolation(HexflowError):
    """A height exceeds the reconstruction bound min(delta1, delta2)."""


class CompatibilityViolation(HexflowError):
    """Heights violate a junction/pinning compatibility constraint."""


class NotEvolvable(HexflowError):
    """The network admits no regular flow (multi-junction with curvature)."""


class ClosureFailure(HexflowError):
    """A constructed hexagon loop fails to close."""


class NoSamples(HexflowError):
    """Not enough trajectory samples for the requested analysis."""
