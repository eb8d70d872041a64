"""Exception types raised by the package."""


class DomainError(ValueError):
    """Argument outside the domain of a function."""


class IntegrationError(RuntimeError):
    """Quadrature did not reach the requested tolerance."""


class BracketError(RuntimeError):
    """Root could not be bracketed (tail mass not monotone on the probe grid)."""


class ConsistencyError(ValueError):
    """A measure's declared data disagrees with its density."""


class KindError(ValueError):
    """Operation not defined for this ensemble kind."""


class GeometryError(ValueError):
    """Free energy is already in the requested geometry."""


class CoefficientOverflowError(OverflowError):
    """A skew-polynomial coefficient does not fit in a double."""
