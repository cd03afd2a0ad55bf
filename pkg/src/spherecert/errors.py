"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the range an operation accepts."""


class DomainError(ValueError):
    """An evaluation point lies outside the function's domain."""


class CapabilityError(ValueError):
    """The request is valid but beyond what this implementation supports."""


class AmbiguityError(ValueError):
    """Clustering could not separate nearby values at the given tolerance."""


class PreconditionError(ValueError):
    """A documented precondition of the operation does not hold."""
