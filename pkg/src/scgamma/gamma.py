"""The model space with a jumping local dimension.

Points live in R^n + R + L2(R). The retraction

    r(x_1..x_n, t, f) = (x_1..x_n, t, P_t f)

projects the fiber onto the span of the k bumps translated by exp(1/t) when
t > 0 and kills it when t <= 0, so the image has dimension n+1 on {t <= 0}
and n+1+k on {t > 0}. Tangent vectors at a point with t > 0 have the unique
form (dx, dt, df + xi_t dt) with df in the translated bump span and the
shear xi_t = sum_j <f, bump_j> rho_j orthogonal to it; the canonical
``TangentVector`` stores (dx, dt, df-coefficients) and the shear is implied.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bumps import BumpBasis
from .l2 import (FrameElement, L2Element, ZERO, ZeroElement, frame_element,
                 frame_shift, frame_shift_dt, frame_shift_dtt, l2_inner,
                 l2_norm, unit_frame)
from .scspace import ScaleStructure


@dataclass(frozen=True)
class GammaSpec:
    """Parameters of one member of the family: base dimension n, fiber rank k."""

    n: int
    k: int
    basis: BumpBasis
    scale: ScaleStructure

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValueError("n and k must be nonnegative")
        if self.basis.k != self.k:
            raise ValueError("bump basis size must match k")

    @property
    def is_even_dimensional(self) -> bool:
        return self.n % 2 == 1 and self.k % 2 == 0

    def require_even_dimensional(self):
        if not self.is_even_dimensional:
            raise ValueError(
                f"(n, k) = ({self.n}, {self.k}): even local dimension needs n odd and k even")


def make_spec(n: int, k: int, nodes_per_unit: int | None = None,
              scale: ScaleStructure | None = None) -> GammaSpec:
    basis = BumpBasis(k) if nodes_per_unit is None else BumpBasis(k, nodes_per_unit)
    return GammaSpec(n, k, basis, scale or ScaleStructure())


@dataclass(frozen=True, eq=False)
class GammaPoint:
    """A point of the retract: fiber is zero for t <= 0, a frame element at
    translation exp(1/t) with bump coefficients only for t > 0."""

    x: np.ndarray
    t: float
    f: L2Element

    def __post_init__(self):
        object.__setattr__(self, "x", np.atleast_1d(np.asarray(self.x, dtype=float)))

    @property
    def fiber_coeffs(self) -> np.ndarray:
        if isinstance(self.f, FrameElement):
            return self.f.gamma
        raise ValueError("point has no frame fiber")


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Canonical tangent coordinates (dx, dt, df); the fiber part realizes to
    df + xi_t dt."""

    dx: np.ndarray
    dt: float
    df: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dx", np.atleast_1d(np.asarray(self.dx, dtype=float)))
        object.__setattr__(self, "df", np.atleast_1d(np.asarray(self.df, dtype=float)))

    def __add__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.dx + other.dx, self.dt + other.dt, self.df + other.df)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.dx - other.dx, self.dt - other.dt, self.df - other.df)

    def __mul__(self, a: float) -> "TangentVector":
        return TangentVector(a * self.dx, a * self.dt, a * self.df)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class AmbientVector:
    """Raw tuple (dx, dt, fiber) in R^n + R + L2(R)."""

    dx: np.ndarray
    dt: float
    fiber: L2Element

    def __post_init__(self):
        object.__setattr__(self, "dx", np.atleast_1d(np.asarray(self.dx, dtype=float)))

    def __add__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(self.dx + other.dx, self.dt + other.dt,
                             self.fiber + other.fiber)

    def __sub__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(self.dx - other.dx, self.dt - other.dt,
                             self.fiber + (-1.0) * other.fiber)

    def __mul__(self, a: float) -> "AmbientVector":
        return AmbientVector(a * self.dx, a * self.dt, a * self.fiber)

    __rmul__ = __mul__


def zero_tangent(spec: GammaSpec) -> TangentVector:
    return TangentVector(np.zeros(spec.n), 0.0, np.zeros(spec.k))


def zero_ambient(spec: GammaSpec) -> AmbientVector:
    return AmbientVector(np.zeros(spec.n), 0.0, ZERO)


def ambient_norm(a: AmbientVector) -> float:
    return float(np.sqrt(np.sum(a.dx**2) + a.dt**2 + l2_norm(a.fiber) ** 2))


def fiber_coefficients(spec: GammaSpec, t: float, f: L2Element) -> np.ndarray:
    """Coefficients <f, bump_j(. + exp(1/t))> for j = 1..k."""
    return np.array([l2_inner(f, unit_frame(spec.basis, j, t=t))
                     for j in range(1, spec.k + 1)])


def project(spec: GammaSpec, t: float, f: L2Element) -> L2Element:
    """Orthogonal projection onto the translated bump span; zero for t <= 0."""
    if t <= 0.0:
        return ZERO
    return frame_element(spec.basis, t=t, gamma=fiber_coefficients(spec, t, f))


def retract(spec: GammaSpec, x, t: float, f: L2Element) -> GammaPoint:
    """r(x, t, f) = (x, t, projection of f); idempotent by construction."""
    return GammaPoint(x, t, project(spec, t, f))


def gamma_point(spec: GammaSpec, x, t: float, coeffs=None) -> GammaPoint:
    """Point from fiber coefficients (ignored, and required absent, for t <= 0)."""
    if t <= 0.0:
        if coeffs is not None and np.any(np.asarray(coeffs) != 0.0):
            raise ValueError("fiber must vanish for t <= 0")
        return GammaPoint(x, t, ZERO)
    c = np.zeros(spec.k) if coeffs is None else np.asarray(coeffs, dtype=float)
    return GammaPoint(x, t, frame_element(spec.basis, t=t, gamma=c))


def point_violation(spec: GammaSpec, p: GammaPoint) -> float:
    """How far the fiber is from satisfying the membership constraints."""
    if p.t <= 0.0:
        return l2_norm(p.f)
    residual = p.f - project(spec, p.t, p.f)
    return l2_norm(residual)


def rho(spec: GammaSpec, j: int, t: float) -> FrameElement:
    """d/dt of the j-th translated bump: bump_j'(. + exp(1/t)) * (-exp(1/t)/t^2)."""
    if t <= 0.0:
        raise ValueError("rho requires t > 0")
    if not 1 <= j <= spec.k:
        raise IndexError(f"bump index {j} out of range 1..{spec.k}")
    dot = np.zeros(spec.k)
    dot[j - 1] = frame_shift_dt(t)
    return frame_element(spec.basis, t=t, gamma_dot=dot)


def xi(spec: GammaSpec, t: float, f: L2Element | np.ndarray) -> L2Element:
    """The shear sum_j <f, bump_j(. + exp(1/t))> rho_j; linear in f and
    orthogonal to the translated bump span."""
    if t <= 0.0:
        raise ValueError("xi requires t > 0")
    if isinstance(f, np.ndarray):
        c = np.asarray(f, dtype=float)
    else:
        c = fiber_coefficients(spec, t, f)
    if not np.any(c != 0.0):
        return ZERO
    return frame_element(spec.basis, t=t, gamma_dot=c * frame_shift_dt(t))


def xi_dt(spec: GammaSpec, p: GammaPoint) -> L2Element:
    """t-partial of the shear along the point's fiber coefficients:
    sum_j f_j (a'' bump_j' + a'^2 bump_j'')(. + a), a = exp(1/t)."""
    if p.t <= 0.0:
        raise ValueError("xi_dt requires t > 0")
    c = p.fiber_coeffs
    return frame_element(spec.basis, t=p.t,
                         gamma_dot=c * frame_shift_dtt(p.t),
                         gamma_ddot=c * frame_shift_dt(p.t) ** 2)


def realized(spec: GammaSpec, p: GammaPoint, v: TangentVector) -> AmbientVector:
    """Materialize the canonical vector as a raw tuple, fiber df + xi_t dt."""
    if p.t <= 0.0:
        return AmbientVector(v.dx, v.dt, ZERO)
    fib = frame_element(spec.basis, t=p.t, gamma=v.df,
                        gamma_dot=p.fiber_coeffs * frame_shift_dt(p.t) * v.dt)
    return AmbientVector(v.dx, v.dt, fib)


def tangent_map(spec: GammaSpec, p: GammaPoint, v: AmbientVector) -> TangentVector:
    """Differential of the retraction at a valid point, applied to a raw tuple.

    For t > 0 the <f, rho_j> correction term vanishes because the base fiber
    already lies in the bump span.
    """
    if p.t <= 0.0:
        return TangentVector(v.dx, v.dt, np.zeros(spec.k))
    df = fiber_coefficients(spec, p.t, v.fiber)
    return TangentVector(v.dx, v.dt, df)


def to_tangent(spec: GammaSpec, p: GammaPoint, a: AmbientVector) -> TangentVector:
    """Canonicalize a raw tuple that is (approximately) tangent at p."""
    return tangent_map(spec, p, a)


def tangent_defect(spec: GammaSpec, p: GammaPoint, a: AmbientVector) -> float:
    """L2 distance from the raw tuple's fiber to its tangent canonicalization."""
    v = to_tangent(spec, p, a)
    return ambient_norm(a - realized(spec, p, v))


def frame(spec: GammaSpec, ell: int, p: GammaPoint) -> TangentVector:
    """The ell-th frame field (1-based) evaluated at p.

    Fields 1..n are the x-directions, field n+1 is the t-direction (its
    realized fiber carries the shear), fields n+1+j are the bump directions
    and vanish identically on {t <= 0}.
    """
    dim = spec.n + 1 + spec.k
    if not 1 <= ell <= dim:
        raise IndexError(f"frame index {ell} out of range 1..{dim}")
    dx = np.zeros(spec.n)
    df = np.zeros(spec.k)
    if ell <= spec.n:
        dx[ell - 1] = 1.0
        return TangentVector(dx, 0.0, df)
    if ell == spec.n + 1:
        return TangentVector(dx, 1.0, df)
    if p.t > 0.0:
        df[ell - spec.n - 2] = 1.0
    return TangentVector(dx, 0.0, df)


def frame_differential(spec: GammaSpec, ell: int, p: GammaPoint,
                       v: TangentVector) -> AmbientVector:
    """Analytic differential of the ell-th frame field at p, applied to v.

    Zero for ell <= n and everywhere on {t < 0}; t = 0 separates the two
    branch formulas and is rejected.
    """
    dim = spec.n + 1 + spec.k
    if not 1 <= ell <= dim:
        raise IndexError(f"frame index {ell} out of range 1..{dim}")
    if p.t == 0.0:
        raise ValueError("frame differentials are branch-ambiguous at t = 0")
    if p.t < 0.0 or ell <= spec.n:
        return zero_ambient(spec)
    if ell == spec.n + 1:
        fib = xi(spec, p.t, v.df) + (v.dt * xi_dt(spec, p))
        return AmbientVector(np.zeros(spec.n), 0.0, fib)
    j = ell - spec.n - 1
    return AmbientVector(np.zeros(spec.n), 0.0, v.dt * rho(spec, j, p.t))


def dimension(spec: GammaSpec, p: GammaPoint) -> int:
    """Rank of the tangent projection: n+1 on {t <= 0}, n+1+k on {t > 0}."""
    return spec.n + 1 if p.t <= 0.0 else spec.n + 1 + spec.k


def tangent_matrix(spec: GammaSpec, p: GammaPoint) -> np.ndarray:
    """The tangent projection as a matrix on the finite ambient block
    (dx, dt, bump coefficients, bump-derivative coefficients)."""
    n, k = spec.n, spec.k
    dim = n + 1 + 2 * k
    m = np.zeros((dim, dim))
    m[:n, :n] = np.eye(n)
    m[n, n] = 1.0
    if p.t > 0.0:
        m[n + 1 + k:, n] = p.fiber_coeffs * frame_shift_dt(p.t)
        m[n + 1:n + 1 + k, n + 1:n + 1 + k] = np.eye(k)
    return m


def frame_coords(spec: GammaSpec, p: GammaPoint, v: TangentVector) -> np.ndarray:
    """Coordinates of v in the frame basis at p (dimension depends on the stratum)."""
    if p.t <= 0.0:
        return np.concatenate([v.dx, [v.dt]])
    return np.concatenate([v.dx, [v.dt], v.df])


def vector_from_coords(spec: GammaSpec, p: GammaPoint, coords) -> TangentVector:
    coords = np.asarray(coords, dtype=float)
    df = np.zeros(spec.k)
    if p.t > 0.0:
        df = coords[spec.n + 1:]
    return TangentVector(coords[:spec.n], float(coords[spec.n]), df)


def curve_point(spec: GammaSpec, p: GammaPoint, v: TangentVector,
                h: float) -> GammaPoint:
    """Point on the retracted straight-line curve through p with velocity v."""
    a = realized(spec, p, v)
    return retract(spec, p.x + h * a.dx, p.t + h * a.dt, p.f + h * a.fiber)


def fd_retraction_differential(spec: GammaSpec, x, t: float, f: L2Element,
                               dv: AmbientVector, h: float,
                               richardson: bool = False) -> AmbientVector:
    """Independent central-difference differential of the retraction.

    Steps never straddle t = 0. With ``richardson`` the h and h/2 quotients
    are combined to fourth order.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))

    def quotient(step: float) -> AmbientVector:
        plus = retract(spec, x + step * dv.dx, t + step * dv.dt, f + step * dv.fiber)
        minus = retract(spec, x - step * dv.dx, t - step * dv.dt, f + (-step) * dv.fiber)
        scale = 1.0 / (2.0 * step)
        return AmbientVector(scale * (plus.x - minus.x), scale * (plus.t - minus.t),
                             scale * (plus.f + (-1.0) * minus.f))

    d1 = quotient(h)
    if not richardson:
        return d1
    d2 = quotient(h / 2.0)
    return (4.0 / 3.0) * d2 - (1.0 / 3.0) * d1
