"""Typed exceptions raised by the numeric kernels.

Every failure mode that a caller might want to branch on gets its own
class; plain ValueError is reserved for programming errors (bad argument
counts, malformed configuration objects and the like).
"""


class BeltramiGrowthError(Exception):
    """Base class for all package-specific errors."""


class DegenerateRadius(BeltramiGrowthError):
    """Evaluation point coincides with (or is too close to) the center."""


class OutOfDomain(BeltramiGrowthError):
    """Point lies outside the domain of a tabulated mapping or field."""


class NotDifferentiableHere(BeltramiGrowthError):
    """Closed-form derivatives requested on an excluded set (origin, seam)."""


class StencilCrossesSeam(BeltramiGrowthError):
    """A finite-difference stencil straddles a non-smooth interface."""


class NonPositiveJacobian(BeltramiGrowthError):
    """Jacobian at or below the positivity floor; the map is not regular there."""


class NonPositiveKappa(BeltramiGrowthError):
    """A radial dilatation profile returned a non-positive sample."""


class QuadratureFailure(BeltramiGrowthError):
    """A quadrature sample was non-finite or an integral is not convergent."""


class DomainError(BeltramiGrowthError):
    """Argument outside the mathematical domain of a profile or ladder."""
