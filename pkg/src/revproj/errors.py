"""Exception types shared across the package."""


class RevprojError(Exception):
    """Base class for all errors raised by this package."""


class RejectedProfile(RevprojError):
    """Profile coefficients violate an admissibility condition."""


class EmptyDomain(RevprojError):
    """No point of the requested u-interval is admissible."""


class SingularitySplit(RevprojError):
    """The zero-slope abscissa u* = -d/(2c) lies inside the requested
    interval; the caller must pick one side of it.

    Attributes:
        lower: (lo, u*) candidate sub-interval below the singularity.
        upper: (u*, hi) candidate sub-interval above the singularity.
    """

    def __init__(self, lower, upper):
        self.lower = lower
        self.upper = upper
        super().__init__(
            "zero-slope abscissa u*=%g is interior to the requested interval; "
            "candidate sides: [%g, %g) and (%g, %g]"
            % (lower[1], lower[0], lower[1], upper[0], upper[1])
        )


class InfeasibleArcLength(RevprojError):
    """f'(u)^2 exceeds 1, so no arc-length height function g exists there."""


class NoConvergence(RevprojError):
    """Newton inversion failed to reach the requested tolerance."""

    def __init__(self, message, iterations=None, residual=None):
        self.iterations = iterations
        self.residual = residual
        super().__init__(message)


class DomainExceeded(RevprojError):
    """A finite-difference stencil leaves the admissible u-interval."""


class DegenerateLine(RevprojError):
    """A straightness check received coincident endpoints."""


class InsufficientDomain(RevprojError):
    """The classifier stencil does not fit inside the profile domain."""


class CollinearityViolation(RevprojError):
    """Sampled meridian image points failed the straight-line guard before
    emission; indicates an internal bug, not bad input."""


class IoFailure(RevprojError):
    """Wraps an OS-level failure while writing an output file."""
