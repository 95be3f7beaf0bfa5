"""Extremal radial solutions and PDE residual certification.

For a radial map f = rho(r) e^{i theta} the solution property pins the
profile through rho'/rho = 1/(r kappa); integrating that ODE from a kappa
profile produces a mapping that attains equality in the growth bounds.
The residual checkers certify (mapping, coefficient) pairs directly
against the defining equation, in complex form and as the equivalent
system of two real equations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complex_polar import TWO_PI
from .dilatation import (
    JACOBIAN_FLOOR,
    CoefficientField,
    LinearCoefficient,
    LogLogCoefficient,
    PowerCoefficient,
    RadialCoefficient,
    SpiralCoefficient,
)
from .errors import DomainError, NonPositiveJacobian
from .growth import (
    KappaProfile,
    PiecewiseProfile,
    ConstantProfile,
    RadiusLadder,
    envelope_integral,
    modulus_extremes,
)
from .dilatation import CircleQuadrature
from .mappings import (
    DEFAULT_FD_STEP,
    Identity,
    Linear,
    LogLog,
    Mapping,
    Power,
    RadialTable,
    Spiral,
)

# ---------------------------------------------------------------------------
# extremal radial solutions


@dataclass(frozen=True, eq=False)
class ExtremalSolution:
    """Radial solution rho(r) e^{i theta} integrated from a kappa profile.

    Below r0 the map continues as the linear piece rho0 * r / r0, which
    solves the equation with the unit radial coefficient; the matching
    kappa is therefore 1 on (0, r0) and the given profile on [r0, R].
    """

    profile: KappaProfile
    r0: float
    rho0: float
    center: complex
    knots: np.ndarray
    rho: np.ndarray

    def mapping(self) -> RadialTable:
        return RadialTable(self.knots, self.rho, self.center, linear_inner=True)

    def kappa_of_r(self):
        inner = ConstantProfile(1.0)
        return PiecewiseProfile((self.r0,), (inner, self.profile))

    def coefficient(self) -> RadialCoefficient:
        prof = self.kappa_of_r()
        return RadialCoefficient(
            prof,
            center=self.center,
            radial_breakpoints=(self.r0,) + tuple(self.profile.breakpoints),
            radial_domain=(0.0, float(self.knots[-1])),
        )


def build_extremal(
    profile: KappaProfile,
    r0: float,
    rho0: float,
    R: float,
    knots: int = 128,
    center: complex = 0j,
) -> ExtremalSolution:
    """Tabulate rho(r) = rho0 * exp(int_{r0}^{r} ds/(s kappa(s))) on a
    geometric knot grid from r0 to R."""
    if knots < 64:
        raise ValueError(f"need at least 64 knots, got {knots}")
    if not (rho0 > 0.0):
        raise ValueError(f"rho0 must be positive, got {rho0}")
    if not (R > r0 > 0.0):
        raise DomainError(f"need R > r0 > 0, got r0 = {r0}, R = {R}")
    lo, hi = profile.domain
    if r0 < lo * (1.0 - 1e-15) or R > hi:
        raise DomainError(f"[{r0}, {R}] leaves the profile domain [{lo}, {hi}]")
    grid = np.geomspace(r0, R, knots)
    grid[0], grid[-1] = r0, R
    log_rho = np.empty(knots)
    log_rho[0] = math.log(rho0)
    for i in range(1, knots):
        seg, _ = envelope_integral(profile, float(grid[i - 1]), float(grid[i]))
        log_rho[i] = log_rho[i - 1] + seg
    return ExtremalSolution(profile, r0, rho0, center, grid, np.exp(log_rho))


def coefficient_of_extremal(sol: ExtremalSolution, z):
    """Closed-form coefficient of the extremal solution at z."""
    return sol.coefficient()(z)


# ---------------------------------------------------------------------------
# residual certification


@dataclass(frozen=True)
class AnnulusGrid:
    """Evaluation lattice: geometric radii, uniform angles, about a center."""

    r_inner: float
    r_outer: float
    n_r: int = 64
    n_theta: int = 256

    def __post_init__(self):
        if not (0.0 < self.r_inner < self.r_outer):
            raise ValueError("need 0 < r_inner < r_outer")
        if self.n_r < 2 or self.n_theta < 8:
            raise ValueError("grid too coarse")

    def points(self, z0: complex):
        radii = np.geomspace(self.r_inner, self.r_outer, self.n_r)
        theta = TWO_PI * np.arange(self.n_theta) / self.n_theta
        z = complex(z0) + radii[:, None] * np.exp(1j * theta)[None, :]
        rr = np.broadcast_to(radii[:, None], z.shape)
        tt = np.broadcast_to(theta[None, :], z.shape)
        return z, rr, tt


@dataclass(frozen=True, eq=False)
class ResidualReport:
    max_abs: float
    rms: float
    worst_r: float
    worst_theta: float
    count: int
    r: np.ndarray
    theta: np.ndarray
    abs_residual: np.ndarray


def _derivatives_on_grid(mapping: Mapping, z: np.ndarray, h: float, use_fd: bool):
    if use_fd:
        return mapping.wirtinger_fd(z, h)
    return mapping.wirtinger_analytic(z)


def _grid_mask(mapping: Mapping, z: np.ndarray, h: float) -> np.ndarray:
    mask = mapping.smooth_mask(z, h)
    if not np.any(mask):
        raise DomainError("no grid points outside the mapping's excluded bands")
    return mask


def pde_residual(
    mapping: Mapping,
    K: CoefficientField,
    z0: complex,
    grid: AnnulusGrid,
    *,
    h: float = DEFAULT_FD_STEP,
    use_fd: bool = False,
) -> ResidualReport:
    """Pointwise residual of f_zbar - (w/conj(w)) f_z - K |J_f|^{1/2}.

    Grid points whose 2h-stencil would touch a seam or the origin are
    excluded; J_f must be positive at every retained point.
    """
    z, rr, tt = grid.points(z0)
    mask = _grid_mask(mapping, z, h)
    z, rr, tt = z[mask], rr[mask], tt[mask]
    wp = _derivatives_on_grid(mapping, z, h, use_fd)
    jac = np.abs(wp.d_z) ** 2 - np.abs(wp.d_zbar) ** 2
    if np.any(jac <= JACOBIAN_FLOOR):
        i = int(np.argmin(jac))
        raise NonPositiveJacobian(
            f"J_f = {jac[i]} at r = {rr[i]}, theta = {tt[i]}"
        )
    w = z - complex(z0)
    residual = wp.d_zbar - (w / np.conj(w)) * wp.d_z - np.asarray(K(z)) * np.sqrt(
        np.abs(jac)
    )
    abs_res = np.abs(residual)
    i = int(np.argmax(abs_res))
    return ResidualReport(
        float(abs_res[i]),
        float(np.sqrt(np.mean(abs_res**2))),
        float(rr[i]),
        float(tt[i]),
        int(abs_res.size),
        rr,
        tt,
        abs_res,
    )


@dataclass(frozen=True, eq=False)
class RealSystemReport:
    max_abs: float
    rms: float
    count: int
    r: np.ndarray
    theta: np.ndarray
    residual_u: np.ndarray
    residual_v: np.ndarray


def real_system_residual(
    mapping: Mapping,
    K: CoefficientField,
    z0: complex,
    grid: AnnulusGrid,
    *,
    h: float = DEFAULT_FD_STEP,
    use_fd: bool = False,
) -> RealSystemReport:
    """Residuals of the equivalent pair of real first-order equations.

    (y-y0) u_x - (x-x0) u_y = k1 |J|^{1/2} and the same with v and k2,
    where k1 = -Im(conj(w) K) and k2 = Re(conj(w) K).  The combined
    magnitude equals r times the complex residual at every point.
    """
    z, rr, tt = grid.points(z0)
    mask = _grid_mask(mapping, z, h)
    z, rr, tt = z[mask], rr[mask], tt[mask]
    wp = _derivatives_on_grid(mapping, z, h, use_fd)
    jac = np.abs(wp.d_z) ** 2 - np.abs(wp.d_zbar) ** 2
    if np.any(jac <= JACOBIAN_FLOOR):
        i = int(np.argmin(jac))
        raise NonPositiveJacobian(f"J_f = {jac[i]} at r = {rr[i]}, theta = {tt[i]}")
    root = np.sqrt(np.abs(jac))
    fx = wp.d_z + wp.d_zbar
    fy = 1j * (wp.d_z - wp.d_zbar)
    w = z - complex(z0)
    kw = np.conj(w) * np.asarray(K(z))
    k1 = -np.imag(kw)
    k2 = np.real(kw)
    res_u = w.imag * np.real(fx) - w.real * np.real(fy) - k1 * root
    res_v = w.imag * np.imag(fx) - w.real * np.imag(fy) - k2 * root
    combined = np.hypot(res_u, res_v)
    return RealSystemReport(
        float(np.max(combined)),
        float(np.sqrt(np.mean(combined**2))),
        int(combined.size),
        rr,
        tt,
        res_u,
        res_v,
    )


# ---------------------------------------------------------------------------
# sharpness ladders


@dataclass(frozen=True, eq=False)
class SharpnessReport:
    kind: str  # "power" or "loglog"
    rows: tuple  # (R, ratio)
    max_deviation: float  # power: max |ratio - 1|; loglog: 0.0
    strictly_decreasing: bool
    halved: bool  # final ratio below half the first one


def sharpness_ladder(
    mapping, ladder: RadiusLadder, q: CircleQuadrature = CircleQuadrature()
) -> SharpnessReport:
    """Ratios of M(R) to the predicted growth scale along a radius ladder.

    Power maps are compared against R^{1/alpha} (ratio should be 1);
    doubly-logarithmic maps against (ln R)^{1/alpha} (ratio should decay).
    """
    radii = ladder.radii()
    if radii[-1] > 1e300:
        raise DomainError("ladder top exceeds the double-precision range")
    if isinstance(mapping, Power):
        kind = "power"
        denom = radii ** (1.0 / mapping.alpha)
    elif isinstance(mapping, LogLog):
        kind = "loglog"
        if radii[0] < math.e:
            raise DomainError("ladder must start at or above e for the log scale")
        denom = np.log(radii) ** (1.0 / mapping.alpha)
    else:
        raise TypeError("sharpness ladder applies to power and loglog maps only")
    ratios = []
    for R, d in zip(radii, denom):
        m_max, _ = modulus_extremes(mapping, 0j, float(R), q)
        ratios.append(m_max / d)
    ratios = np.asarray(ratios)
    rows = tuple(zip(radii.tolist(), ratios.tolist()))
    decreasing = bool(np.all(np.diff(ratios) < 0.0))
    halved = bool(ratios[-1] < 0.5 * ratios[0])
    max_dev = float(np.max(np.abs(ratios - 1.0))) if kind == "power" else 0.0
    return SharpnessReport(kind, rows, max_dev, decreasing, halved)


# ---------------------------------------------------------------------------
# catalog solution pairs


def catalog_pair(name: str, **params):
    """(mapping, coefficient) for a named certified solution of the equation."""
    if name == "identity":
        return Identity(), PowerCoefficient(1.0)
    if name == "linear":
        a = complex(params["a"])
        b = complex(params["b"])
        c = complex(params.get("c", 0j))
        return Linear(a, b, c), LinearCoefficient(a, b)
    if name == "spiral":
        return Spiral(), SpiralCoefficient()
    if name == "power":
        alpha = float(params["alpha"])
        return Power(alpha), PowerCoefficient(alpha)
    if name == "loglog":
        alpha = float(params["alpha"])
        return LogLog(alpha), LogLogCoefficient(alpha)
    raise ValueError(f"unknown catalog pair {name!r}")
