"""Exception types shared across the package."""


class SRPolyError(ValueError):
    """Base class for invalid-input errors."""


class NotSelfReciprocal(SRPolyError):
    pass


class ZeroLeading(SRPolyError):
    pass


class OddDegree(SRPolyError):
    pass


class EvenDegree(SRPolyError):
    pass


class ResidualTooLarge(SRPolyError):
    pass


class ZeroInput(SRPolyError):
    pass


class OutOfRange(SRPolyError):
    pass


class Degenerate(SRPolyError):
    pass


class NoMatch(SRPolyError):
    pass


class NoConvergence(RuntimeError):
    """Simultaneous iteration ran out of iterations.

    ``roots`` holds the last iterate and ``residuals`` the scaled |P(z)| values
    at those points.
    """

    def __init__(self, message, roots=None, residuals=None):
        super().__init__(message)
        self.roots = roots
        self.residuals = residuals
