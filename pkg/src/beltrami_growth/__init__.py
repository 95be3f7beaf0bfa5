"""Growth analysis for regular homeomorphic solutions of the nonlinear
Beltrami-type equation with the Jacobian on the right-hand side."""

from .complex_polar import (
    PlanePoint,
    PolarDerivPair,
    PolarOffset,
    WirtingerPair,
    jacobian_polar,
    jacobian_wirtinger,
    polar_to_wirtinger,
    wirtinger_to_polar,
)
from .dilatation import (
    CircleQuadrature,
    CoefficientField,
    GridCoefficient,
    LinearCoefficient,
    LogLogCoefficient,
    PowerCoefficient,
    RadialCoefficient,
    SigmaField,
    SpiralCoefficient,
    K_from_sigma,
    angular_dilatation,
    circle_average_D,
    kappa,
    sigma_from_K,
)
from .errors import (
    BeltramiGrowthError,
    DegenerateRadius,
    DomainError,
    NonPositiveJacobian,
    NonPositiveKappa,
    NotDifferentiableHere,
    OutOfDomain,
    QuadratureFailure,
    StencilCrossesSeam,
)
from .growth import (
    CoefficientBound,
    ConstantProfile,
    FieldProfile,
    KappaBound,
    KappaProfile,
    LogProductProfile,
    PiecewiseProfile,
    RadiusLadder,
    TableProfile,
    area_bound_check,
    circle_length,
    corollary_exponent,
    differential_inequality_check,
    envelope_integral,
    image_area,
    isoperimetric_check,
    iterated_log,
    loglog_example_profile,
    modulus_extremes,
    nonexistence_diagnostic,
    theorem1_check,
    tower,
)
from .mappings import (
    Identity,
    Linear,
    LogLog,
    LOGLOG_SEAM,
    Mapping,
    Power,
    RadialTable,
    Spiral,
)
from .verify import (
    AnnulusGrid,
    ExtremalSolution,
    build_extremal,
    catalog_pair,
    coefficient_of_extremal,
    pde_residual,
    real_system_residual,
    sharpness_ladder,
)

__version__ = "0.1.0"
