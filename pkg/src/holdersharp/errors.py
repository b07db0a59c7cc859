"""Exception types shared across the package."""


class HolderSharpError(Exception):
    """Base class for all package errors."""


class DomainError(HolderSharpError):
    """Input lies outside the mathematical domain of an operation."""


class RegimeError(HolderSharpError):
    """The requested (theta, r) regime is not resolved by any implemented method."""


class ConvergenceError(HolderSharpError):
    """An iterative solver failed to reach its tolerance."""


class CertificateError(HolderSharpError):
    """A supporting-plane certificate failed one of its validity conditions."""
