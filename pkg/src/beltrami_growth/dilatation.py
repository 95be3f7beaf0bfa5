"""Coefficient fields, the sigma form, angular dilatation and circle averages.

The coefficient field K is the right-hand-side multiplier of the equation
f_zbar - (w/conj(w)) f_z = K |J_f|^{1/2}, w = z - z0.  Its sigma form is
sigma = -i K conj(w), and the radial profile kappa(r) is the angular mean
of |K|^2 on the circle of radius r about the field's center.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .complex_polar import RADIUS_FLOOR, TWO_PI, jacobian_polar, wirtinger_to_polar
from .errors import (
    DegenerateRadius,
    NonPositiveJacobian,
    NotDifferentiableHere,
    OutOfDomain,
    QuadratureFailure,
)
from .mappings import DEFAULT_FD_STEP, LOGLOG_SEAM, Mapping

JACOBIAN_FLOOR = 1e-14


@dataclass(frozen=True)
class CircleQuadrature:
    """Uniform periodic-trapezoid rule on a circle; n samples."""

    n: int = 1024

    def __post_init__(self):
        if self.n < 8:
            raise ValueError(f"need at least 8 quadrature nodes, got {self.n}")

    def angles(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n

    def mean(self, samples: np.ndarray) -> float:
        """Angular mean; np.mean uses pairwise summation, so results are
        reproducible for a fixed n."""
        if not np.all(np.isfinite(samples)):
            raise QuadratureFailure("non-finite quadrature sample on the circle")
        return float(np.mean(samples))


class CoefficientField:
    """Base class for the coefficient K; callable on complex scalars/arrays."""

    center: complex = 0j
    #: radii |z - center| where the field has a jump (piecewise variants)
    radial_breakpoints: tuple = ()

    def _offset(self, z):
        w = np.asarray(z, dtype=complex) - self.center
        r = np.abs(w)
        if np.any(r < RADIUS_FLOOR):
            raise DegenerateRadius("coefficient undefined at the field's center")
        return w, r

    def _value_array(self, w, r):
        raise NotImplementedError

    def __call__(self, z):
        za = np.atleast_1d(np.asarray(z, dtype=complex))
        w, r = self._offset(za)
        out = self._value_array(w, r)
        return complex(out[0]) if np.ndim(z) == 0 else out

    def abs2(self, z):
        """|K|^2, used by the circle average kappa."""
        out = np.abs(self(z)) ** 2
        return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class LinearCoefficient(CoefficientField):
    """Coefficient solved by the linear map A*conj(z) + B*z + C."""

    a: complex
    b: complex
    center: complex = 0j

    def __post_init__(self):
        if abs(abs(self.a) - abs(self.b)) == 0.0:
            raise ValueError("degenerate coefficient: |A| must differ from |B|")

    def _value_array(self, w, r):
        delta = abs(self.b) ** 2 - abs(self.a) ** 2
        return (self.a * np.conj(w) - self.b * w) / (
            math.sqrt(abs(delta)) * np.conj(w)
        )


@dataclass(frozen=True)
class SpiralCoefficient(CoefficientField):
    """Coefficient solved by the spiral map: -(w/conj(w)) e^{2i ln|w|}."""

    center: complex = 0j

    def _value_array(self, w, r):
        return -(w / np.conj(w)) * np.exp(2j * np.log(r))


@dataclass(frozen=True)
class PowerCoefficient(CoefficientField):
    """Constant-dilatation coefficient -sqrt(alpha) w/conj(w)."""

    alpha: float
    center: complex = 0j

    def __post_init__(self):
        if not (self.alpha > 0.0):
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    def _value_array(self, w, r):
        return -math.sqrt(self.alpha) * w / np.conj(w)


@dataclass(frozen=True)
class LogLogCoefficient(CoefficientField):
    """Piecewise coefficient solved by the doubly-logarithmic map:
    -sqrt(alpha * ln r * ln ln r) * w/conj(w) outside |w| = e^e, -w/conj(w) inside."""

    alpha: float
    center: complex = 0j
    radial_breakpoints = (LOGLOG_SEAM,)

    def __post_init__(self):
        if not (self.alpha > 0.0):
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    def _value_array(self, w, r):
        unit2 = w / np.conj(w)
        out = -unit2
        outer = r >= LOGLOG_SEAM
        if np.any(outer):
            ro = r[outer]
            out[outer] = (
                -np.sqrt(self.alpha * np.log(ro) * np.log(np.log(ro))) * unit2[outer]
            )
        return out


@dataclass(frozen=True, eq=False)
class RadialCoefficient(CoefficientField):
    """Radial coefficient -sqrt(kappa(r)) w/conj(w) built from a kappa profile.

    The unimodular phase is fixed to match the sign convention of the
    catalog's radial solutions; any other phase has the same |K|^2.
    """

    kappa_of_r: object  # callable r -> kappa(r), vectorized
    center: complex = 0j
    radial_breakpoints: tuple = ()
    radial_domain: tuple = (0.0, math.inf)

    def _check_domain(self, r):
        lo, hi = self.radial_domain
        if np.any(r < lo) or np.any(r > hi):
            raise OutOfDomain("radius outside the coefficient's tabulated range")

    def _value_array(self, w, r):
        self._check_domain(r)
        return -np.sqrt(self.kappa_of_r(r)) * w / np.conj(w)

    def abs2(self, z):
        za = np.atleast_1d(np.asarray(z, dtype=complex))
        w, r = self._offset(za)
        self._check_domain(r)
        out = np.asarray(self.kappa_of_r(r), dtype=float)
        return float(out[0]) if np.ndim(z) == 0 else out


@dataclass(frozen=True, eq=False)
class GridCoefficient(CoefficientField):
    """|K|^2 tabulated on an (r, theta) lattice, bilinear in (ln r, theta).

    Only the squared modulus is tabulated; the complex value uses the same
    radial phase convention as :class:`RadialCoefficient`.
    """

    radii: np.ndarray
    thetas: np.ndarray
    k2: np.ndarray  # shape (len(radii), len(thetas))
    center: complex = 0j
    _interp: RegularGridInterpolator = field(init=False, repr=False)

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        thetas = np.asarray(self.thetas, dtype=float)
        k2 = np.asarray(self.k2, dtype=float)
        if k2.shape != (radii.size, thetas.size):
            raise ValueError("k2 must have shape (len(radii), len(thetas))")
        if np.any(k2 < 0.0):
            raise ValueError("tabulated |K|^2 values must be nonnegative")
        if not np.all(np.diff(radii) > 0.0) or not np.all(radii > 0.0):
            raise ValueError("radii must be positive and strictly ascending")
        if not np.all(np.diff(thetas) > 0.0) or thetas[0] < 0.0 or thetas[-1] >= TWO_PI:
            raise ValueError("thetas must be strictly ascending in [0, 2*pi)")
        # periodic closure in theta
        th = np.concatenate([thetas, [thetas[0] + TWO_PI]])
        vals = np.concatenate([k2, k2[:, :1]], axis=1)
        interp = RegularGridInterpolator(
            (np.log(radii), th), vals, method="linear", bounds_error=True
        )
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "k2", k2)
        object.__setattr__(self, "_interp", interp)

    @classmethod
    def from_csv(cls, path, center: complex = 0j) -> "GridCoefficient":
        """Load from strict CSV with header ``r,theta,k2`` sorted by (r, theta)."""
        rows = []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != ["r", "theta", "k2"]:
                raise ValueError(f"expected header r,theta,k2, got {header}")
            for lineno, row in enumerate(reader, start=2):
                if len(row) != 3 or any(cell.strip() == "" for cell in row):
                    raise ValueError(f"malformed row at line {lineno}: {row}")
                rows.append([float(c) for c in row])
        data = np.asarray(rows, dtype=float)
        radii = np.unique(data[:, 0])
        thetas = np.unique(data[:, 1])
        if data.shape[0] != radii.size * thetas.size:
            raise ValueError("grid is not a complete (r, theta) lattice")
        expected_r = np.repeat(radii, thetas.size)
        expected_t = np.tile(thetas, radii.size)
        if not (np.array_equal(data[:, 0], expected_r) and np.array_equal(data[:, 1], expected_t)):
            raise ValueError("rows must be sorted by (r, theta)")
        k2 = data[:, 2].reshape(radii.size, thetas.size)
        return cls(radii, thetas, k2, center)

    def _k2_at(self, w, r):
        theta = np.mod(np.angle(w), TWO_PI)
        try:
            return self._interp(np.stack([np.log(r), theta], axis=-1))
        except ValueError as exc:
            raise OutOfDomain(str(exc)) from exc

    def _value_array(self, w, r):
        return -np.sqrt(self._k2_at(w, r)) * w / np.conj(w)

    def abs2(self, z):
        za = np.atleast_1d(np.asarray(z, dtype=complex))
        w, r = self._offset(za)
        out = self._k2_at(w, r)
        return float(out[0]) if np.ndim(z) == 0 else out


@dataclass(frozen=True, eq=False)
class SigmaField:
    """The sigma form of a coefficient field: sigma = -i K conj(w)."""

    func: object  # callable z -> complex
    center: complex = 0j

    def __call__(self, z):
        return self.func(z)

    @classmethod
    def from_coefficient(cls, coefficient: CoefficientField) -> "SigmaField":
        return cls(
            lambda z: sigma_from_K(coefficient, z), center=coefficient.center
        )


def sigma_from_K(K: CoefficientField, z):
    """sigma = -i * K(z) * conj(z - center)."""
    w = np.asarray(z, dtype=complex) - K.center
    if np.any(np.abs(w) < RADIUS_FLOOR):
        raise DegenerateRadius("sigma undefined at the field's center")
    out = -1j * np.asarray(K(z)) * np.conj(w)
    return complex(out) if np.ndim(z) == 0 else out


def K_from_sigma(sig: SigmaField, z):
    """Exact inverse of :func:`sigma_from_K`: K = -sigma / (i conj(w))."""
    w = np.asarray(z, dtype=complex) - sig.center
    if np.any(np.abs(w) < RADIUS_FLOOR):
        raise DegenerateRadius("coefficient undefined at the field's center")
    out = -np.asarray(sig(z)) / (1j * np.conj(w))
    return complex(out) if np.ndim(z) == 0 else out


def _wirtinger_best(mapping: Mapping, z, h: float = DEFAULT_FD_STEP):
    """Closed-form derivatives where available, central differences otherwise."""
    try:
        return mapping.wirtinger_analytic(z)
    except NotDifferentiableHere:
        return mapping.wirtinger_fd(z, h)


def angular_dilatation(
    mapping: Mapping,
    z0: complex,
    z,
    *,
    h: float = DEFAULT_FD_STEP,
    jacobian_floor: float = JACOBIAN_FLOOR,
):
    """|f_theta|^2 / (r^2 J_f) at z, about the center z0."""
    wp = _wirtinger_best(mapping, z, h)
    pd = wirtinger_to_polar(z, z0, wp)
    r = np.abs(np.asarray(z, dtype=complex) - z0)
    jac = jacobian_polar(r, pd)
    if np.any(np.asarray(jac) <= jacobian_floor):
        raise NonPositiveJacobian(f"Jacobian {jac} at or below floor {jacobian_floor}")
    out = np.abs(np.asarray(pd.d_theta)) ** 2 / (r**2 * jac)
    return float(out) if np.ndim(z) == 0 else out


def dilatation_on_circle(
    mapping: Mapping,
    z0: complex,
    r: float,
    q: CircleQuadrature = CircleQuadrature(),
    *,
    h: float = DEFAULT_FD_STEP,
) -> np.ndarray:
    """Angular dilatation sampled on the n uniform angles of the circle."""
    z = np.asarray(z0, dtype=complex) + r * np.exp(1j * q.angles())
    return angular_dilatation(mapping, z0, z, h=h)


def circle_average_D(
    mapping: Mapping,
    z0: complex,
    r: float,
    q: CircleQuadrature = CircleQuadrature(),
    *,
    h: float = DEFAULT_FD_STEP,
) -> float:
    """Angular mean of the dilatation over the circle |z - z0| = r.

    The 1/(2*pi*r) normalization and the arc element |dz| = r d(theta)
    cancel, leaving a plain mean over theta.
    """
    return q.mean(dilatation_on_circle(mapping, z0, r, q, h=h))


def kappa(K: CoefficientField, r: float, q: CircleQuadrature = CircleQuadrature()) -> float:
    """Angular mean of |K|^2 on the circle of radius r about the field center."""
    if not (r > 0.0):
        raise ValueError(f"radius must be positive, got {r}")
    z = K.center + r * np.exp(1j * q.angles())
    return q.mean(np.asarray(K.abs2(z), dtype=float))
