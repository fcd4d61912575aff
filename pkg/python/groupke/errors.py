"""Exception hierarchy shared by every groupke module."""


class GroupKEError(ValueError):
    """Base class for invalid-input and undefined-quantity errors."""


class RootSystemError(GroupKEError):
    """Unsupported type label, dependent or non-crystallographic simple roots."""


class WeylGroupSizeError(GroupKEError):
    """Closure of the reflections exceeded the configured bound."""


class DimensionMismatchError(GroupKEError):
    """A vector or polytope does not live in the ambient space of the root data."""


class PolytopeError(GroupKEError):
    """Unbounded, empty, lower-dimensional or otherwise invalid polytope."""


class ZeroVolumeError(PolytopeError):
    """The positive part of 2P carries no mass."""


class NormalizationError(GroupKEError):
    """A convex function violates inf u = u(O) = 0."""


class WeylInvarianceError(GroupKEError):
    """A polytope or convex function is not invariant under the Weyl group."""


class DivergentIntegralError(GroupKEError):
    """The F-integral diverges because 4rho is not an interior point of 2P."""


class TailBoundError(GroupKEError):
    """The quadrature tail cannot be bounded within the configured radius."""


class DegenerateFitError(GroupKEError):
    """Too few samples to fit an asymptotic slope."""


class ProblemFileError(GroupKEError):
    """Malformed problem file; locates the offending section and field."""

    def __init__(self, section: str, field: str, message: str):
        self.section = section
        self.field = field
        location = f"{section}.{field}" if field else section
        super().__init__(f"{location}: {message}")


class RationalFormatError(GroupKEError):
    """A value cannot be read as an exact rational."""


class SampleGridError(GroupKEError):
    """A parameter grid on the command line is empty or not finite."""
