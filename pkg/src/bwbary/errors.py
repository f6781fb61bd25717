"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Input violates a documented precondition (bad shape, non-finite entries, bad flags)."""


class DimensionMismatch(InvalidInput):
    """Operands do not share the same dimension."""


class NotPSD(InvalidInput):
    """Matrix fails the positive-semidefiniteness tolerance."""


class KernelNotIncluded(Exception):
    """Kernel-inclusion precondition for an optimal transport map fails.

    Raised when ker(A) is not contained in ker(B), in which case no linear
    transport map from the centred Gaussian with covariance A to the one with
    covariance B exists.
    """


class NonFinite(ArithmeticError):
    """A numerical computation produced NaN or infinity (e.g. a diverging iteration)."""
