"""Catalog of explicit test mappings.

Each mapping knows how to evaluate itself, how to produce closed-form
Wirtinger derivatives away from its non-smooth set, and how to produce
second-order central-difference derivatives for cross-checking.  All
entry points accept complex scalars or numpy arrays of complex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .complex_polar import (
    RADIUS_FLOOR,
    TWO_PI,
    PolarDerivPair,
    WirtingerPair,
    polar_to_wirtinger,
)
from .errors import (
    NotDifferentiableHere,
    OutOfDomain,
    StencilCrossesSeam,
)

#: Radius of the piecewise seam of the doubly-logarithmic map.
LOGLOG_SEAM = math.exp(math.e)

DEFAULT_FD_STEP = 1e-5


def _asarray(z):
    a = np.asarray(z, dtype=complex)
    return a, a.ndim == 0


def _maybe_scalar(a, scalar):
    return complex(a) if scalar else a


class Mapping:
    """Base class: shared finite differences, circle sampling, seam logic."""

    #: radii |z| where the map is continuous but not differentiable
    seam_radii: tuple = ()
    #: derivatives undefined at the origin
    origin_singular: bool = False
    #: |z| interval on which evaluate is defined
    radial_domain: tuple = (0.0, math.inf)

    # -- evaluation ---------------------------------------------------------

    def _eval_array(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def evaluate(self, z):
        za, scalar = _asarray(z)
        out = self._eval_array(np.atleast_1d(za))
        return complex(out[0]) if scalar else out

    def __call__(self, z):
        return self.evaluate(z)

    def center_value(self, z0) -> complex:
        """Image of a circle center, used for modulus extremes."""
        return self.evaluate(z0)

    # -- closed-form derivatives -------------------------------------------

    def _wirtinger_array(self, z: np.ndarray) -> WirtingerPair:
        raise NotImplementedError

    def wirtinger_analytic(self, z) -> WirtingerPair:
        za, scalar = _asarray(z)
        za1 = np.atleast_1d(za)
        self._check_smooth(np.abs(za1))
        wp = self._wirtinger_array(za1)
        if scalar:
            return WirtingerPair(complex(wp.d_z[0]), complex(wp.d_zbar[0]))
        return wp

    def _check_smooth(self, r: np.ndarray):
        if self.origin_singular and np.any(r < RADIUS_FLOOR):
            raise NotDifferentiableHere("derivatives undefined at the origin")
        for seam in self.seam_radii:
            if np.any(np.abs(r - seam) <= 1e-12 * seam):
                raise NotDifferentiableHere(f"derivatives undefined on |z| = {seam}")
        lo, hi = self.radial_domain
        if np.any(r < lo) or np.any(r > hi):
            raise OutOfDomain("point outside the mapping's radial domain")

    # -- finite differences -------------------------------------------------

    def wirtinger_fd(self, z, h: float = DEFAULT_FD_STEP) -> WirtingerPair:
        """Central-difference (f_z, f_zbar) with relative step h*max(1,|z|)."""
        if not (h > 0.0):
            raise ValueError(f"step must be positive, got {h}")
        za, scalar = _asarray(z)
        za = np.atleast_1d(za)
        s = h * np.maximum(1.0, np.abs(za))
        stencil = (za + s, za - s, za + 1j * s, za - 1j * s)
        self._check_stencil(za, s, stencil)
        fx = (self._eval_array(za + s) - self._eval_array(za - s)) / (2.0 * s)
        fy = (self._eval_array(za + 1j * s) - self._eval_array(za - 1j * s)) / (2.0 * s)
        d_z = 0.5 * (fx - 1j * fy)
        d_zbar = 0.5 * (fx + 1j * fy)
        if scalar:
            return WirtingerPair(complex(d_z[0]), complex(d_zbar[0]))
        return WirtingerPair(d_z, d_zbar)

    def _check_stencil(self, z, s, stencil):
        r0 = np.abs(z)
        if self.origin_singular and np.any(r0 <= 2.0 * s):
            raise StencilCrossesSeam("stencil reaches into the origin's excluded disk")
        for seam in self.seam_radii:
            side0 = r0 > seam
            for p in stencil:
                if np.any((np.abs(p) > seam) != side0):
                    raise StencilCrossesSeam(f"stencil straddles the seam |z| = {seam}")
        lo, hi = self.radial_domain
        for p in stencil:
            rp = np.abs(p)
            if np.any(rp < lo) or np.any(rp > hi):
                raise StencilCrossesSeam("stencil leaves the mapping's radial domain")

    def smooth_mask(self, z, h: float = DEFAULT_FD_STEP) -> np.ndarray:
        """Points whose FD stencil of step h stays inside the smooth region."""
        za, _ = _asarray(z)
        za = np.atleast_1d(za)
        r = np.abs(za)
        margin = 2.0 * h * np.maximum(1.0, r)
        ok = np.ones(za.shape, dtype=bool)
        if self.origin_singular:
            ok &= r > np.maximum(margin, RADIUS_FLOOR)
        for seam in self.seam_radii:
            ok &= np.abs(r - seam) > margin
        lo, hi = self.radial_domain
        ok &= (r - margin >= lo) & (r + margin <= hi)
        return ok

    # -- circle sampling ----------------------------------------------------

    def circle_samples(self, z0, r: float, n: int):
        """n images of the circle |z - z0| = r at theta_j = 2*pi*j/n."""
        if n < 8:
            raise ValueError(f"need at least 8 samples, got {n}")
        if not (r > 0.0):
            raise ValueError(f"radius must be positive, got {r}")
        theta = TWO_PI * np.arange(n) / n
        images = self.evaluate(np.asarray(z0, dtype=complex) + r * np.exp(1j * theta))
        return list(zip(theta.tolist(), [complex(v) for v in images]))


@dataclass(frozen=True)
class Identity(Mapping):
    def _eval_array(self, z):
        return z

    def _wirtinger_array(self, z):
        one = np.ones(z.shape, dtype=complex)
        return WirtingerPair(one, np.zeros(z.shape, dtype=complex))


@dataclass(frozen=True)
class Linear(Mapping):
    """f(z) = A*conj(z) + B*z + C with |A| != |B|."""

    a: complex
    b: complex
    c: complex = 0j

    def __post_init__(self):
        if not all(np.isfinite([self.a, self.b, self.c]).tolist()):
            raise ValueError("coefficients must be finite")
        if abs(abs(self.a) - abs(self.b)) == 0.0:
            raise ValueError("degenerate linear map: |A| must differ from |B|")

    def _eval_array(self, z):
        return self.a * np.conj(z) + self.b * z + self.c

    def _wirtinger_array(self, z):
        return WirtingerPair(
            np.full(z.shape, complex(self.b)), np.full(z.shape, complex(self.a))
        )


@dataclass(frozen=True)
class Spiral(Mapping):
    """Area-preserving spiral f(z) = z * e^{2i ln|z|}, f(0) = 0."""

    origin_singular = True

    def _eval_array(self, z):
        r = np.abs(z)
        out = np.zeros(z.shape, dtype=complex)
        mask = r > 0.0
        out[mask] = z[mask] * np.exp(2j * np.log(r[mask]))
        return out

    def _wirtinger_array(self, z):
        phase = np.exp(2j * np.log(np.abs(z)))
        d_z = (1.0 + 1j) * phase
        d_zbar = 1j * (z / np.conj(z)) * phase
        return WirtingerPair(d_z, d_zbar)


@dataclass(frozen=True)
class Power(Mapping):
    """Radial stretch f(z) = |z|^{1/alpha - 1} z, f(0) = 0, alpha > 0."""

    alpha: float
    origin_singular = True

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    def _eval_array(self, z):
        r = np.abs(z)
        out = np.zeros(z.shape, dtype=complex)
        mask = r > 0.0
        out[mask] = r[mask] ** (1.0 / self.alpha - 1.0) * z[mask]
        return out

    def _wirtinger_array(self, z):
        r = np.abs(z)
        unit = z / r
        d_r = (1.0 / self.alpha) * r ** ((1.0 - self.alpha) / self.alpha) * unit
        d_theta = 1j * r ** (1.0 / self.alpha) * unit
        return polar_to_wirtinger(z, 0j, PolarDerivPair(d_r, d_theta))


@dataclass(frozen=True)
class LogLog(Mapping):
    """Bounded-growth map: (ln ln|z|)^{1/alpha} z/|z| outside |z| = e^e,
    the linear map e^{-e} z inside; continuous across the seam."""

    alpha: float
    seam_radii = (LOGLOG_SEAM,)
    origin_singular = True

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    def _eval_array(self, z):
        r = np.abs(z)
        out = math.exp(-math.e) * z.astype(complex)
        outer = r >= LOGLOG_SEAM
        if np.any(outer):
            ro = r[outer]
            out[outer] = np.log(np.log(ro)) ** (1.0 / self.alpha) * z[outer] / ro
        return out

    def _wirtinger_array(self, z):
        r = np.abs(z)
        unit = z / r
        d_r = np.empty(z.shape, dtype=complex)
        d_theta = np.empty(z.shape, dtype=complex)
        outer = r > LOGLOG_SEAM
        inner = ~outer
        scale = math.exp(-math.e)
        d_r[inner] = scale * unit[inner]
        d_theta[inner] = 1j * scale * r[inner] * unit[inner]
        if np.any(outer):
            ro = r[outer]
            ll = np.log(np.log(ro))
            d_r[outer] = (
                (1.0 / self.alpha)
                * ll ** ((1.0 - self.alpha) / self.alpha)
                / (np.log(ro) * ro)
                * unit[outer]
            )
            d_theta[outer] = 1j * ll ** (1.0 / self.alpha) * unit[outer]
        return polar_to_wirtinger(z, 0j, PolarDerivPair(d_r, d_theta))


@dataclass(frozen=True, eq=False)
class RadialTable(Mapping):
    """Tabulated radial homeomorphism f(z0 + r e^{it}) = rho(r) e^{it}.

    rho is interpolated monotonically (pchip) in log-log coordinates, which
    keeps it strictly increasing and reproduces power-law profiles exactly.
    With ``linear_inner`` the map is extended below the first knot by the
    linear piece rho_0 * r / r_0, making it a homeomorphism of the full disk
    (continuous but generally not differentiable at the first knot).
    """

    knots: np.ndarray
    rho: np.ndarray
    center: complex = 0j
    linear_inner: bool = False
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)
    _interp_slope: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=float)
        rho = np.asarray(self.rho, dtype=float)
        if knots.ndim != 1 or knots.shape != rho.shape or knots.size < 2:
            raise ValueError("knots and rho must be 1-d arrays of equal length >= 2")
        if not (np.all(knots > 0.0) and np.all(np.diff(knots) > 0.0)):
            raise ValueError("knots must be positive and strictly ascending")
        if not (np.all(rho > 0.0) and np.all(np.diff(rho) > 0.0)):
            raise ValueError("rho must be positive and strictly increasing")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "rho", rho)
        interp = PchipInterpolator(np.log(knots), np.log(rho), extrapolate=False)
        object.__setattr__(self, "_interp", interp)
        object.__setattr__(self, "_interp_slope", interp.derivative())
        object.__setattr__(
            self,
            "seam_radii",
            (float(knots[0]),) if self.linear_inner else (),
        )
        lo = 0.0 if self.linear_inner else float(knots[0])
        object.__setattr__(self, "radial_domain", (lo, float(knots[-1])))

    def center_value(self, z0) -> complex:
        if abs(complex(z0) - complex(self.center)) < RADIUS_FLOOR:
            return 0j
        return self.evaluate(z0)

    def _rho_of_r(self, r: np.ndarray) -> np.ndarray:
        lo, hi = self.radial_domain
        # absorb rounding slop from r = |z - center| at the table edges
        if np.any(r < lo * (1.0 - 1e-12)) or np.any(r > hi * (1.0 + 1e-12)):
            raise OutOfDomain("radius outside the tabulated range")
        r = np.clip(r, lo if lo > 0.0 else None, hi)
        out = np.empty(r.shape, dtype=float)
        inner = r < self.knots[0]
        out[inner] = self.rho[0] / self.knots[0] * r[inner]
        tab = ~inner
        if np.any(tab):
            out[tab] = np.exp(self._interp(np.log(r[tab])))
        return out

    def _drho_of_r(self, r: np.ndarray, rho_r: np.ndarray) -> np.ndarray:
        out = np.empty(r.shape, dtype=float)
        inner = r < self.knots[0]
        out[inner] = self.rho[0] / self.knots[0]
        tab = ~inner
        if np.any(tab):
            # d rho/d r = (rho / r) * d ln rho / d ln r
            out[tab] = rho_r[tab] / r[tab] * self._interp_slope(np.log(r[tab]))
        return out

    def _eval_array(self, z):
        w = z - self.center
        r = np.abs(w)
        out = np.zeros(z.shape, dtype=complex)
        mask = r > 0.0
        out[mask] = self._rho_of_r(r[mask]) * w[mask] / r[mask]
        return out

    def _wirtinger_array(self, z):
        w = z - self.center
        r = np.abs(w)
        unit = w / r
        rho_r = self._rho_of_r(r)
        drho = self._drho_of_r(r, rho_r)
        pd = PolarDerivPair(drho * unit, 1j * rho_r * unit)
        return polar_to_wirtinger(z, self.center, pd)


CATALOG_VARIANTS = ("identity", "linear", "spiral", "power", "loglog", "radial_table")
