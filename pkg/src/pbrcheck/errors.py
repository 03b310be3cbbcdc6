"""Exception types shared across the package."""


class PbrCheckError(Exception):
    """Base class for every error raised by pbrcheck."""


class DimensionError(PbrCheckError, ValueError):
    """Operands have incompatible dimensions."""


class BasisError(PbrCheckError, ValueError):
    """A measurement basis fails a validity requirement."""


class ZeroVectorError(PbrCheckError, ValueError):
    """A vector with (near-)zero norm cannot be normalized."""


class SpaceError(PbrCheckError, ValueError):
    """Distributions or joints refer to incompatible ontic spaces."""


class DomainError(PbrCheckError, ValueError):
    """A numeric parameter lies outside its admissible range."""
