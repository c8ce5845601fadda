"""Exception types shared across the package."""


class CholspaceError(Exception):
    """Base class for all errors raised by this package."""


class DimMismatch(CholspaceError):
    """Operands have incompatible shapes."""


class DomainError(CholspaceError):
    """An input lies outside the mathematical domain of an operator."""


class NonPositiveDiagonal(DomainError):
    """A diagonal that must be strictly positive is not."""


class NotPositiveDefinite(DomainError):
    """A matrix that must be symmetric positive definite is not."""


class NonPositiveSpectrum(DomainError):
    """A matrix function needs strictly positive eigenvalues and got one <= 0."""


class SingularTriangular(CholspaceError):
    """A triangular solve hit a zero diagonal entry."""


class OutOfDomain(DomainError):
    """A geodesic parameter leaves the interval where the curve is defined,
    or a checked-mode evaluation would return a non-finite value."""


class GyroDomainError(DomainError):
    """A gyro operation's well-definedness predicate fails."""


class ZeroTheta(DomainError):
    """A deformation exponent must be nonzero."""


class BadWeights(CholspaceError):
    """Weights must be strictly positive and sum to one."""


class ConfigError(CholspaceError):
    """An experiment configuration is invalid."""


class ParseError(CholspaceError):
    """An input file could not be parsed."""
