"""Exception types shared across the package."""


class BindsumError(Exception):
    """Base class for all bindsum-specific errors."""


class DimensionMismatchError(BindsumError, ValueError):
    """Operands have incompatible dimensions."""


class InvalidDimensionError(BindsumError, ValueError):
    """A requested dimension or count is not a positive integer."""


class UnsupportedSchemeError(BindsumError, ValueError):
    """The operation is not defined for this code or binding scheme."""


class UnsupportedCompositionError(UnsupportedSchemeError):
    """Edge composition is refused for schemes that provably cannot compose."""


class SingularKeyError(BindsumError, ZeroDivisionError):
    """Entrywise division by a key with at least one zero entry."""


class UnknownVertexError(BindsumError, KeyError):
    """A graph references a vertex id absent from the codebook."""
