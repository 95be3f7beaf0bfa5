"""Growth functionals and the differential/integral inequalities they satisfy.

Radial dilatation profiles kappa(r), iterated-logarithm utilities, the
attenuation integral I = int dr/(r kappa) with its envelope exp(I), modulus
extremes M/m on circles, curve length, image area, and the checks that tie
them together: the isoperimetric inequality, the differential inequality
S' >= 2S/(r d_f), the area bound, the growth ladder, and the non-existence
diagnostic.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from .complex_polar import TWO_PI, jacobian_wirtinger
from .dilatation import (
    JACOBIAN_FLOOR,
    CircleQuadrature,
    CoefficientField,
    _wirtinger_best,
    circle_average_D,
    kappa as circle_kappa,
)
from .errors import (
    DomainError,
    NonPositiveJacobian,
    NonPositiveKappa,
    QuadratureFailure,
)
from .mappings import DEFAULT_FD_STEP, Mapping

# ---------------------------------------------------------------------------
# iterated logarithms and exponential towers

E_1 = math.e
E_2 = math.exp(math.e)
E_3 = math.exp(E_2)


def tower(k: int) -> float:
    """e_k with e_1 = e, e_{k+1} = e^{e_k}; finite in doubles only for k <= 3."""
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"tower index must be a positive integer, got {k!r}")
    if k >= 4:
        raise OverflowError(f"e_{k} exceeds double-precision range")
    return (E_1, E_2, E_3)[k - 1]


def iterated_log(k: int, t):
    """k-fold logarithm ln_k(t); requires t > e_{k-1} so the result is positive."""
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"log depth must be a positive integer, got {k!r}")
    out = np.asarray(t, dtype=float)
    for _ in range(k):
        if np.any(out <= 0.0):
            raise DomainError(f"argument too small for a depth-{k} iterated log")
        out = np.log(out)
    if np.any(out <= 0.0):
        raise DomainError(f"argument too small for a depth-{k} iterated log")
    return float(out) if np.ndim(t) == 0 else out


# ---------------------------------------------------------------------------
# kappa profiles


class KappaProfile:
    """Radial profile kappa(r) > 0; callable on floats or arrays."""

    #: (lower, upper) radius interval on which the profile is defined
    domain: tuple = (0.0, math.inf)
    #: interior radii where the profile jumps; quadrature splits here
    breakpoints: tuple = ()

    def __call__(self, r):
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantProfile(KappaProfile):
    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    def __call__(self, r):
        out = np.full(np.shape(r), self.alpha)
        return self.alpha if np.ndim(r) == 0 else out


@dataclass(frozen=True, eq=False)
class LogProductProfile(KappaProfile):
    """alpha * ln(r) * ln ln(r) * ... (depth factors), defined for r >= e_depth."""

    alpha: float
    depth: int

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not (1 <= self.depth <= 3):
            raise ValueError(f"depth must be in 1..3, got {self.depth}")
        object.__setattr__(self, "domain", (tower(self.depth), math.inf))

    def __call__(self, r):
        lo, _ = self.domain
        rr = np.asarray(r, dtype=float)
        if np.any(rr < lo * (1.0 - 1e-15)):
            raise DomainError(f"profile defined only for r >= e_{self.depth}")
        rr = np.maximum(rr, lo)  # absorb rounding slop at the left endpoint
        out = self.alpha * np.ones(rr.shape)
        for k in range(1, self.depth + 1):
            out = out * iterated_log(k, rr)
        return float(out) if np.ndim(r) == 0 else out


@dataclass(frozen=True, eq=False)
class PiecewiseProfile(KappaProfile):
    """Radially piecewise profile; piece i applies on [b_{i-1}, b_i)."""

    cut_radii: tuple
    pieces: tuple

    def __post_init__(self):
        cuts = tuple(float(b) for b in self.cut_radii)
        if len(self.pieces) != len(cuts) + 1:
            raise ValueError("need exactly one more piece than cut radius")
        if any(b2 <= b1 for b1, b2 in zip(cuts, cuts[1:])) or any(
            b <= 0.0 for b in cuts
        ):
            raise ValueError("cut radii must be positive and strictly ascending")
        object.__setattr__(self, "cut_radii", cuts)
        object.__setattr__(self, "breakpoints", cuts)
        lo = self.pieces[0].domain[0]
        hi = self.pieces[-1].domain[1]
        object.__setattr__(self, "domain", (lo, hi))

    def __call__(self, r):
        rr = np.atleast_1d(np.asarray(r, dtype=float))
        idx = np.searchsorted(self.cut_radii, rr, side="right")
        out = np.empty(rr.shape, dtype=float)
        for i, piece in enumerate(self.pieces):
            mask = idx == i
            if np.any(mask):
                out[mask] = piece(rr[mask])
        return float(out[0]) if np.ndim(r) == 0 else out


@dataclass(frozen=True, eq=False)
class TableProfile(KappaProfile):
    """kappa tabulated at radius knots, log-log linear in between."""

    radii: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if radii.ndim != 1 or radii.shape != values.shape or radii.size < 2:
            raise ValueError("radii and values must be equal-length 1-d arrays")
        if not (np.all(radii > 0.0) and np.all(np.diff(radii) > 0.0)):
            raise ValueError("radii must be positive and strictly ascending")
        if not np.all(values > 0.0):
            raise NonPositiveKappa("tabulated kappa values must be positive")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "domain", (float(radii[0]), float(radii[-1])))

    def __call__(self, r):
        rr = np.asarray(r, dtype=float)
        lo, hi = self.domain
        if np.any(rr < lo) or np.any(rr > hi):
            raise DomainError("radius outside the tabulated kappa range")
        out = np.exp(
            np.interp(np.log(rr), np.log(self.radii), np.log(self.values))
        )
        return float(out) if np.ndim(r) == 0 else out


@dataclass(frozen=True, eq=False)
class FieldProfile(KappaProfile):
    """kappa(r) computed on demand from a coefficient field by circle quadrature."""

    coefficient: CoefficientField
    quadrature: CircleQuadrature = CircleQuadrature()

    def __post_init__(self):
        object.__setattr__(
            self, "breakpoints", tuple(self.coefficient.radial_breakpoints)
        )
        dom = getattr(self.coefficient, "radial_domain", (0.0, math.inf))
        object.__setattr__(self, "domain", (float(dom[0]), float(dom[1])))

    def __call__(self, r):
        if np.ndim(r) == 0:
            return circle_kappa(self.coefficient, float(r), self.quadrature)
        return np.array(
            [circle_kappa(self.coefficient, float(ri), self.quadrature) for ri in np.ravel(r)]
        ).reshape(np.shape(r))


def loglog_example_profile(alpha: float) -> PiecewiseProfile:
    """The piecewise profile 1 below e^e and alpha*ln(r)*ln ln(r) above it."""
    return PiecewiseProfile((E_2,), (ConstantProfile(1.0), LogProductProfile(alpha, 2)))


# ---------------------------------------------------------------------------
# ladders and exponents


@dataclass(frozen=True)
class RadiusLadder:
    """Geometric radius ladder r0 * factor^k, k = 0..count."""

    r0: float
    factor: float = 2.0
    count: int = 40

    def __post_init__(self):
        if not (self.r0 > 0.0 and math.isfinite(self.r0)):
            raise DomainError(f"ladder base must be positive, got {self.r0}")
        if not (self.factor > 1.0 and math.isfinite(self.factor)):
            raise DomainError(f"ladder factor must exceed 1, got {self.factor}")
        if self.count < 1:
            raise DomainError(f"ladder needs at least one step, got {self.count}")
        # check the top rung in log space; factor**count itself can overflow
        if math.log(self.r0) + self.count * math.log(self.factor) > math.log(
            sys.float_info.max
        ):
            raise DomainError("ladder top overflows double precision")

    def radii(self) -> np.ndarray:
        return self.r0 * self.factor ** np.arange(self.count + 1, dtype=float)

    @classmethod
    def reaching(cls, r0: float, top: float, factor: float = 2.0) -> "RadiusLadder":
        """Smallest ladder from r0 whose last rung is at or above ``top``."""
        count = max(1, math.ceil(math.log(top / r0) / math.log(factor)))
        return cls(r0, factor, count)


@dataclass(frozen=True)
class KappaBound:
    """Hypothesis kappa <= alpha; growth exponent 1/alpha."""

    alpha: float


@dataclass(frozen=True)
class CoefficientBound:
    """Hypothesis |K| <= alpha; growth exponent 1/alpha^2."""

    alpha: float


def corollary_exponent(bound) -> float:
    if isinstance(bound, KappaBound):
        if not bound.alpha > 0.0:
            raise ValueError("alpha must be positive")
        return 1.0 / bound.alpha
    if isinstance(bound, CoefficientBound):
        if not bound.alpha > 0.0:
            raise ValueError("alpha must be positive")
        return 1.0 / (bound.alpha * bound.alpha)
    raise TypeError(f"unknown bound type {type(bound)!r}")


# ---------------------------------------------------------------------------
# the attenuation integral and its envelope

ENVELOPE_ABS_TOL = 1e-11


def _reciprocal_integrand(profile: KappaProfile):
    def integrand(t: float) -> float:
        value = profile(math.exp(t))
        if not (value > 0.0) or not math.isfinite(value):
            raise NonPositiveKappa(f"kappa sample {value} at r = {math.exp(t)}")
        return 1.0 / value

    return integrand


def envelope_integral(
    profile: KappaProfile, r0: float, R: float, *, abs_tol: float = ENVELOPE_ABS_TOL
):
    """I = int_{r0}^{R} dr/(r kappa(r)) and its envelope exp(I).

    Integrates in t = ln r (the natural variable of every catalog profile)
    with mandatory subdivision at the profile's breakpoints.
    """
    lo, hi = profile.domain
    if not (lo * (1.0 - 1e-15) <= r0 <= hi and r0 <= R <= hi * (1.0 + 1e-15)):
        raise DomainError(
            f"[{r0}, {R}] leaves the profile domain [{lo}, {hi}]"
        )
    if R == r0:
        return 0.0, 1.0
    cuts = [math.log(b) for b in profile.breakpoints if r0 < b < R]
    edges = [math.log(r0)] + cuts + [math.log(R)]
    integrand = _reciprocal_integrand(profile)
    total = 0.0
    for a, b in zip(edges, edges[1:]):
        piece, _ = quad(integrand, a, b, epsabs=abs_tol, epsrel=1e-12, limit=200)
        total += piece
    return total, math.exp(total)


# ---------------------------------------------------------------------------
# circle functionals


def modulus_extremes(
    mapping: Mapping,
    z0: complex,
    r: float,
    q: CircleQuadrature = CircleQuadrature(),
):
    """(max, min) of |f(z) - f(z0)| over the circle |z - z0| = r.

    Grid scan on the quadrature angles, then a bounded scalar search around
    the best cell refines each extremum to 1e-10 in theta.
    """
    if not (r > 0.0):
        raise ValueError(f"radius must be positive, got {r}")
    z0c = complex(z0)
    f0 = mapping.center_value(z0c)
    theta = q.angles()

    def distance(t):
        return np.abs(mapping.evaluate(z0c + r * np.exp(1j * np.asarray(t))) - f0)

    values = distance(theta)
    if not np.all(np.isfinite(values)):
        raise QuadratureFailure("non-finite modulus sample on the circle")
    step = TWO_PI / q.n

    def refine(objective, i_best, best):
        t0 = theta[i_best]
        res = minimize_scalar(
            objective,
            bounds=(t0 - step, t0 + step),
            method="bounded",
            options={"xatol": 1e-10},
        )
        return res

    res_max = refine(lambda t: -float(distance(t)), int(np.argmax(values)), None)
    res_min = refine(lambda t: float(distance(t)), int(np.argmin(values)), None)
    m_max = max(float(np.max(values)), -res_max.fun)
    m_min = min(float(np.min(values)), res_min.fun)
    return m_max, m_min


def circle_length(
    mapping: Mapping,
    z0: complex,
    r: float,
    q: CircleQuadrature = CircleQuadrature(),
    *,
    h: float = DEFAULT_FD_STEP,
) -> float:
    """Length of the image curve: int |f_theta| d(theta) by periodic trapezoid."""
    from .complex_polar import wirtinger_to_polar

    z = complex(z0) + r * np.exp(1j * q.angles())
    wp = _wirtinger_best(mapping, z, h)
    pd = wirtinger_to_polar(z, z0, wp)
    return TWO_PI * q.mean(np.abs(pd.d_theta))


_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(8)


def image_area(
    mapping: Mapping,
    z0: complex,
    r: float,
    q: CircleQuadrature = CircleQuadrature(),
    *,
    radial_steps: int = 48,
    h: float = DEFAULT_FD_STEP,
    inner_cutoff: float = 1e-8,
) -> float:
    """Area of f(B(z0, r)) as the polar integral of the Jacobian.

    Composite 8-point Gauss panels in u = ln(rho) down to rho = inner_cutoff*r,
    split at the mapping's seam radii; the disk below the cutoff is accounted
    for by a local power-law extrapolation of the angular mean of J.
    """
    if not (r > 0.0):
        raise ValueError(f"radius must be positive, got {r}")
    rho_min = inner_cutoff * r
    theta = q.angles()
    phases = np.exp(1j * theta)

    def mean_jacobian(rho: np.ndarray) -> np.ndarray:
        z = complex(z0) + rho[:, None] * phases[None, :]
        wp = _wirtinger_best(mapping, z, h)
        jac = jacobian_wirtinger(wp)
        # J may decay to zero toward the center (e.g. |z|^{1/a-1} z with
        # a < 1); only a genuinely non-positive sample is an error here
        if np.any(jac <= 0.0):
            worst = np.unravel_index(int(np.argmin(jac)), jac.shape)
            raise NonPositiveJacobian(
                f"J_f = {jac[worst]} at rho = {rho[worst[0]]}, theta = {theta[worst[1]]}"
            )
        if not np.all(np.isfinite(jac)):
            raise QuadratureFailure("non-finite Jacobian sample")
        return np.mean(jac, axis=1)

    cuts = sorted(s for s in mapping.seam_radii if rho_min < s < r)
    edges = np.log(np.array([rho_min] + cuts + [r]))
    span = edges[-1] - edges[0]
    total = 0.0
    for a, b in zip(edges, edges[1:]):
        panels = max(2, int(round(radial_steps * (b - a) / span)))
        bounds = np.linspace(a, b, panels + 1)
        half = 0.5 * (bounds[1:] - bounds[:-1])
        mid = 0.5 * (bounds[1:] + bounds[:-1])
        u = (mid[:, None] + half[:, None] * _GAUSS_NODES[None, :]).ravel()
        w = (half[:, None] * _GAUSS_WEIGHTS[None, :]).ravel()
        rho = np.exp(u)
        g = TWO_PI * rho**2 * mean_jacobian(rho)
        total += float(np.sum(w * g))

    # power-law tail below the cutoff: mean J ~ c * rho^p
    j1 = float(mean_jacobian(np.array([rho_min]))[0])
    j2 = float(mean_jacobian(np.array([2.0 * rho_min]))[0])
    p = math.log(j2 / j1) / math.log(2.0) if j1 > 0.0 and j2 > 0.0 else 0.0
    if p + 2.0 <= 0.05:
        raise QuadratureFailure(
            f"Jacobian not integrable at the center (local exponent {p:.3f})"
        )
    tail = TWO_PI * j1 * rho_min**2 / (p + 2.0)
    return total + tail


# ---------------------------------------------------------------------------
# inequality checks


@dataclass(frozen=True)
class IsoperimetricReport:
    length: float
    area: float
    slack: float  # L^2 - 4*pi*S
    ok: bool
    equality: bool


def isoperimetric_check(
    mapping: Mapping,
    z0: complex,
    r: float,
    q: CircleQuadrature = CircleQuadrature(),
    *,
    rel_tol: float = 1e-6,
    h: float = DEFAULT_FD_STEP,
) -> IsoperimetricReport:
    """L^2 >= 4*pi*S for the image of the circle/disk of radius r."""
    length = circle_length(mapping, z0, r, q, h=h)
    area = image_area(mapping, z0, r, q, h=h)
    slack = length**2 - 4.0 * math.pi * area
    scale = rel_tol * length**2
    return IsoperimetricReport(length, area, slack, slack >= -scale, abs(slack) <= scale)


@dataclass(frozen=True)
class DifferentialInequalityRow:
    r: float
    area: float
    area_rate: float  # S'(r), central differences
    bound: float  # 2 S / (r d_f)
    ratio: float
    ok: bool


def differential_inequality_check(
    mapping: Mapping,
    z0: complex,
    radii,
    q: CircleQuadrature = CircleQuadrature(),
    *,
    rel_step: float = 1e-4,
    rel_tol: float = 1e-3,
    h: float = DEFAULT_FD_STEP,
):
    """Check S' >= 2S/(r d_f) at each radius; S' by central differences."""
    rows = []
    for r in np.asarray(radii, dtype=float):
        dr = rel_step * r
        area = image_area(mapping, z0, r, q, h=h)
        s_plus = image_area(mapping, z0, r + dr, q, h=h)
        s_minus = image_area(mapping, z0, r - dr, q, h=h)
        rate = (s_plus - s_minus) / (2.0 * dr)
        d_mean = circle_average_D(mapping, z0, r, q, h=h)
        bound = 2.0 * area / (r * d_mean)
        ratio = rate / bound
        rows.append(
            DifferentialInequalityRow(
                float(r), area, rate, bound, ratio, ratio >= 1.0 - rel_tol
            )
        )
    return rows


@dataclass(frozen=True)
class AreaBoundReport:
    r0: float
    R: float
    area_inner: float
    area_outer: float
    integral: float
    rhs: float  # S(R) * exp(-2 I)
    slack: float
    ok: bool
    equality: bool


def area_bound_check(
    mapping: Mapping,
    K: CoefficientField,
    z0: complex,
    r0: float,
    R: float,
    q: CircleQuadrature = CircleQuadrature(),
    *,
    rel_tol: float = 1e-4,
    h: float = DEFAULT_FD_STEP,
) -> AreaBoundReport:
    """S(r0) <= S(R) * exp(-2 * int dr/(r kappa)) for a solution pair."""
    if not (R > r0 > 0.0):
        raise DomainError(f"need R > r0 > 0, got r0 = {r0}, R = {R}")
    profile = FieldProfile(K, q)
    integral, _ = envelope_integral(profile, r0, R)
    area_inner = image_area(mapping, z0, r0, q, h=h)
    area_outer = image_area(mapping, z0, R, q, h=h)
    rhs = area_outer * math.exp(-2.0 * integral)
    slack = rhs - area_inner
    return AreaBoundReport(
        r0,
        R,
        area_inner,
        area_outer,
        integral,
        rhs,
        slack,
        slack >= -rel_tol * rhs,
        abs(slack) <= rel_tol * rhs,
    )


@dataclass(frozen=True)
class GrowthLadderRow:
    R: float
    M: float
    m: float
    integral: float
    envelope: float
    v: float  # M * exp(-I)
    bound_ok: bool


@dataclass(frozen=True)
class GrowthLadderReport:
    rows: tuple
    m_inner: float
    liminf_proxy: float  # running minimum of v over the ladder
    all_ok: bool


def theorem1_check(
    mapping: Mapping,
    K: CoefficientField,
    z0: complex,
    r0: float,
    ladder: RadiusLadder,
    q: CircleQuadrature = CircleQuadrature(),
    *,
    rel_tol: float = 1e-6,
) -> GrowthLadderReport:
    """Lower growth bound: M(R) * exp(-I(r0, R)) >= m(r0) along the ladder.

    The running minimum of v(R) stands in for the liminf; with a finite
    ladder this is a proxy, not the limit itself.
    """
    if ladder.r0 < r0:
        raise DomainError("ladder must start at or above r0")
    profile = FieldProfile(K, q)
    _, m_inner = modulus_extremes(mapping, z0, r0, q)
    rows = []
    integral = 0.0
    prev = r0
    running = math.inf
    all_ok = True
    for R in ladder.radii():
        seg, _ = envelope_integral(profile, prev, float(R))
        integral += seg
        prev = float(R)
        m_max, m_min = modulus_extremes(mapping, z0, float(R), q)
        v = m_max * math.exp(-integral)
        running = min(running, v)
        ok = v >= m_inner * (1.0 - rel_tol)
        all_ok &= ok
        rows.append(
            GrowthLadderRow(
                float(R), m_max, m_min, integral, math.exp(integral), v, ok
            )
        )
    return GrowthLadderReport(tuple(rows), m_inner, running, bool(all_ok))


# ---------------------------------------------------------------------------
# non-existence diagnostic

NONEXISTENCE_NOTE = (
    "finite-sample diagnostic over a bounded radius ladder; "
    "not a proof of non-existence"
)


@dataclass(frozen=True)
class NonexistenceReport:
    rows: tuple  # (R, M, v)
    verdict: str  # "inconsistent" or "consistent"
    note: str = NONEXISTENCE_NOTE


def nonexistence_diagnostic(
    observed, profile: KappaProfile, r0: float, *, decay_factor: float = 0.01
) -> NonexistenceReport:
    """Test observed growth data (R, M) against the envelope of a kappa profile.

    Verdict is "inconsistent" when v(R) = M * exp(-I(r0, R)) decreases
    monotonically over the last half of the ladder and decays below
    decay_factor times its initial value.
    """
    data = [(float(R), float(M)) for R, M in observed]
    if len(data) < 2:
        raise DomainError("need at least two observations")
    radii = [R for R, _ in data]
    if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= r0:
        raise DomainError("radii must be strictly ascending and above r0")
    rows = []
    integral = 0.0
    prev = r0
    for R, M in data:
        seg, _ = envelope_integral(profile, prev, R)
        integral += seg
        prev = R
        rows.append((R, M, M * math.exp(-integral)))
    v = [row[2] for row in rows]
    tail = v[len(v) // 2 :]
    monotone_tail = all(b < a for a, b in zip(tail, tail[1:]))
    decayed = v[-1] < decay_factor * v[0]
    verdict = "inconsistent" if (monotone_tail and decayed) else "consistent"
    return NonexistenceReport(tuple(rows), verdict)
