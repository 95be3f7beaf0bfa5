"""Complex-plane / polar-coordinate calculus.

Conversions between the formal derivative pair (f_z, f_zbar) and the polar
derivative pair (f_r, f_theta) about a center z0, plus the two equivalent
Jacobian formulas.  All functions accept python complex scalars or numpy
arrays of complex and are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRadius

TWO_PI = 2.0 * math.pi

#: Points closer to the center than this are treated as degenerate.
RADIUS_FLOOR = 1e-14


def _require_finite(value, name: str):
    if not np.all(np.isfinite(value)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def normalize_angle(theta):
    """Reduce an angle to the canonical interval [0, 2*pi)."""
    out = np.mod(theta, TWO_PI)
    # mod can return 2*pi itself for tiny negative inputs
    return np.where(out >= TWO_PI, 0.0, out) if isinstance(out, np.ndarray) else (
        0.0 if out >= TWO_PI else out
    )


@dataclass(frozen=True)
class PlanePoint:
    """A point of the plane, kept as two finite real components."""

    re: float
    im: float

    def __post_init__(self):
        _require_finite(self.re, "re")
        _require_finite(self.im, "im")

    @classmethod
    def from_complex(cls, z: complex) -> "PlanePoint":
        return cls(float(z.real), float(z.imag))

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class PolarOffset:
    """Polar form r*e^{i*theta} of the offset from a center point."""

    center: PlanePoint
    r: float
    theta: float

    def __post_init__(self):
        if not (self.r >= RADIUS_FLOOR and math.isfinite(self.r)):
            raise DegenerateRadius(
                f"radius must be at least {RADIUS_FLOOR} and finite, got {self.r}"
            )
        object.__setattr__(self, "theta", float(normalize_angle(self.theta)))

    @classmethod
    def from_point(cls, z: PlanePoint, center: PlanePoint) -> "PolarOffset":
        w = z.as_complex() - center.as_complex()
        r = abs(w)
        if r < RADIUS_FLOOR:
            raise DegenerateRadius(f"point {z} coincides with center {center}")
        return cls(center, r, math.atan2(w.imag, w.real))

    def to_point(self) -> PlanePoint:
        z = self.center.as_complex() + self.r * complex(
            math.cos(self.theta), math.sin(self.theta)
        )
        return PlanePoint.from_complex(z)


@dataclass(frozen=True)
class WirtingerPair:
    """The formal derivatives (f_z, f_zbar)."""

    d_z: complex
    d_zbar: complex

    def __post_init__(self):
        _require_finite(self.d_z, "d_z")
        _require_finite(self.d_zbar, "d_zbar")


@dataclass(frozen=True)
class PolarDerivPair:
    """The polar derivatives (f_r, f_theta); f_theta is per radian."""

    d_r: complex
    d_theta: complex

    def __post_init__(self):
        _require_finite(self.d_r, "d_r")
        _require_finite(self.d_theta, "d_theta")


def _offset(z, z0, radius_floor: float):
    w = np.asarray(z, dtype=complex) - np.asarray(z0, dtype=complex)
    r = np.abs(w)
    if np.any(r < radius_floor):
        raise DegenerateRadius("evaluation point too close to the center")
    return w, r


def wirtinger_to_polar(z, z0, wp: WirtingerPair, *, radius_floor: float = RADIUS_FLOOR) -> PolarDerivPair:
    """Convert (f_z, f_zbar) at z to (f_r, f_theta) about the center z0.

    Uses r*f_r = w*f_z + conj(w)*f_zbar and f_theta = i*(w*f_z - conj(w)*f_zbar)
    with w = z - z0.
    """
    w, r = _offset(z, z0, radius_floor)
    d_r = (w * wp.d_z + np.conj(w) * wp.d_zbar) / r
    d_theta = 1j * (w * wp.d_z - np.conj(w) * wp.d_zbar)
    return PolarDerivPair(d_r, d_theta)


def polar_to_wirtinger(z, z0, pd: PolarDerivPair, *, radius_floor: float = RADIUS_FLOOR) -> WirtingerPair:
    """Exact inverse of :func:`wirtinger_to_polar`."""
    w, r = _offset(z, z0, radius_floor)
    d_z = (r * pd.d_r - 1j * pd.d_theta) / (2.0 * w)
    d_zbar = (r * pd.d_r + 1j * pd.d_theta) / (2.0 * np.conj(w))
    return WirtingerPair(d_z, d_zbar)


def jacobian_polar(r, pd: PolarDerivPair):
    """Jacobian from polar derivatives: (1/r) * Im(conj(f_r) * f_theta)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DegenerateRadius("radius must be positive")
    out = np.imag(np.conj(pd.d_r) * pd.d_theta) / r
    return float(out) if out.ndim == 0 else out


def jacobian_wirtinger(wp: WirtingerPair):
    """Jacobian |f_z|^2 - |f_zbar|^2."""
    out = np.abs(np.asarray(wp.d_z)) ** 2 - np.abs(np.asarray(wp.d_zbar)) ** 2
    return float(out) if out.ndim == 0 else out
