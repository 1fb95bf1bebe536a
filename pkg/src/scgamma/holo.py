"""Holomorphic structure: the embedding of the (n, k) = (1, 2) model into C^2,
the holomorphy predicate, a holomorphic-but-not-twice-scale-differentiable
function, and the glued space X = C u P with its two conformal charts.

The embedding sends r(x, t, f) to (x + it, 0) for t <= 0 and to
(x + it, <f, bump_1> + i <f, bump_2>) for t > 0; its image is

    {(z, w): Im z <= 0, w = 0} u {(z, w): Im z > 0}.

X is the union of the open solid cylinder C = {|z| < 1} and the plane
P = {w = 0} in C^2. The charts delete one point each ((1,0) and (-1,0))
and map through the conformal map (1+z)/(1-z); the chart transition in
model coordinates is (x, t) -> (-x, t)/(t^2 + x^2) with the fiber
coefficients carried over to the new frame parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .gamma import (GammaPoint, GammaSpec, TangentVector, frame, frame_coords,
                    gamma_point, zero_tangent)
from .tensors import ComplexStructureJ


def _require_embedding_spec(spec: GammaSpec):
    if (spec.n, spec.k) != (1, 2):
        raise ValueError(f"embedding needs (n, k) = (1, 2), got ({spec.n}, {spec.k})")


def iota(spec: GammaSpec, p: GammaPoint) -> tuple[complex, complex]:
    """The embedding into C^2."""
    _require_embedding_spec(spec)
    z = complex(p.x[0], p.t)
    if p.t <= 0.0:
        return z, 0.0 + 0.0j
    c = p.fiber_coeffs
    return z, complex(c[0], c[1])


def iota_tangent(spec: GammaSpec, p: GammaPoint,
                 v: TangentVector) -> tuple[complex, complex]:
    """Differential of the embedding: (dx + i dt, df_1 + i df_2)."""
    _require_embedding_spec(spec)
    dz = complex(v.dx[0], v.dt)
    if p.t <= 0.0:
        return dz, 0.0 + 0.0j
    return dz, complex(v.df[0], v.df[1])


def in_embedding_image(z: complex, w: complex) -> bool:
    """Membership in the embedded image: lower half-plane slice of the plane
    plus the full upper half-space."""
    return (z.imag <= 0.0 and w == 0.0) or z.imag > 0.0


@dataclass(frozen=True)
class HolomorphyReport:
    """Max commutation defect of a differential with the complex structures
    over a sample of points and a tangent frame at each."""

    name: str
    points: int
    max_defect: float
    tolerance: float
    passed: bool
    failures: int = 0


def is_sc_holomorphic(spec: GammaSpec, J: ComplexStructureJ, points,
                      tangent_fn: Callable, *, target_j: Callable | None = None,
                      tol: float = 1e-10, name: str = "map") -> HolomorphyReport:
    """Check Tf(Jv) = J_target(Tf(v)) over every frame direction at each point.

    ``tangent_fn(p, v)`` returns the image tangent: a complex number or tuple
    (target multiplication by i), or a (point, TangentVector) pair when
    ``target_j`` is given. Differential failures at individual points are
    recorded, not fatal.
    """
    worst = 0.0
    failures = 0
    count = 0
    for p in points:
        count += 1
        dim = spec.n + 1 + (spec.k if p.t > 0.0 else 0)
        try:
            for ell in range(1, dim + 1):
                v = frame(spec, ell, p)
                jv = J.apply(p, v)
                left = tangent_fn(p, jv)
                right = tangent_fn(p, v)
                if target_j is None:
                    la = np.atleast_1d(np.asarray(left, dtype=complex))
                    ra = np.atleast_1d(np.asarray(right, dtype=complex))
                    defect = float(np.max(np.abs(la - 1j * ra)))
                else:
                    q_img, lv = left
                    _, rv = right
                    diff = lv - target_j(q_img, rv)
                    defect = float(np.linalg.norm(frame_coords(spec, q_img, diff)))
                worst = max(worst, defect)
        except ValueError:
            failures += 1
    return HolomorphyReport(name, count, worst, tol, worst < tol and failures == 0,
                            failures)


def log_upper_branch(z: complex) -> complex:
    """Complex logarithm with the cut along the negative imaginary axis
    (argument in (-pi/2, 3pi/2)), so it is smooth across the negative reals."""
    if z == 0:
        raise ValueError("log branch undefined at 0")
    a = np.angle(z)
    if a < -np.pi / 2.0:
        a += 2.0 * np.pi
    return complex(np.log(abs(z)), a)


def phi_log(spec: GammaSpec, p: GammaPoint) -> complex:
    """z^2 w^2 log(z) composed with the embedding; identically 0 for t <= 0.

    Holomorphic in the scale sense, but its second derivative blows up
    logarithmically at the dimension jump.
    """
    _require_embedding_spec(spec)
    if p.t <= 0.0:
        return 0.0 + 0.0j
    z, w = iota(spec, p)
    return z * z * w * w * log_upper_branch(z)


def phi_log_tangent(spec: GammaSpec, p: GammaPoint, v: TangentVector) -> complex:
    """Chain-rule differential of phi_log away from t = 0."""
    _require_embedding_spec(spec)
    if p.t < 0.0:
        return 0.0 + 0.0j
    if p.t == 0.0:
        raise ValueError("differential of phi_log is branch-ambiguous at t = 0")
    z, w = iota(spec, p)
    dz, dw = iota_tangent(spec, p, v)
    lg = log_upper_branch(z)
    dpsi_dz = 2.0 * z * w * w * lg + z * w * w
    dpsi_dw = 2.0 * z * z * w * lg
    return dpsi_dz * dz + dpsi_dw * dw


def phi_second_difference(spec: GammaSpec, coeffs, h: float,
                          x: float = 0.0) -> complex:
    """Second central difference of phi_log in t across 0, along the section
    that keeps the fiber coefficients fixed.

    The section hits (x, h, coeffs) for t = +h and the zero-fiber points at
    t in {0, -h}; the quotient grows like |log h| as h -> 0.
    """
    plus = phi_log(spec, gamma_point(spec, [x], h, coeffs))
    mid = phi_log(spec, gamma_point(spec, [x], 0.0))
    minus = phi_log(spec, gamma_point(spec, [x], -h))
    return (plus - 2.0 * mid + minus) / (h * h)


def non_extendability_witness(spec: GammaSpec, radius: float, samples: int,
                              seed: int) -> dict:
    """Structured witness that the pulled-back function admits no holomorphic
    extension near 0 in C^2.

    In every ball around the origin, sampled image points with Im z > 0 give
    nonzero values while all image points with Im z <= 0 give exactly 0; a
    holomorphic function cannot vanish on an open piece and not identically.
    """
    rng = np.random.default_rng(seed)
    upper_nonzero = 0
    upper_min = np.inf
    lower_zero = True
    for _ in range(samples):
        z = complex(*(radius * 0.5 * rng.uniform(-1.0, 1.0, size=2)))
        w = complex(*(radius * 0.5 * rng.uniform(-1.0, 1.0, size=2)))
        if z.imag > 0.0 and z != 0 and w != 0:
            val = z * z * w * w * log_upper_branch(z)
            if abs(val) > 0.0:
                upper_nonzero += 1
            upper_min = min(upper_min, abs(val))
        else:
            p = gamma_point(spec, [z.real], min(z.imag, 0.0))
            if phi_log(spec, p) != 0.0:
                lower_zero = False
    return {
        "radius": radius,
        "samples": samples,
        "upper_nonzero": upper_nonzero,
        "upper_min_abs": float(upper_min),
        "lower_identically_zero": lower_zero,
        "witness": bool(upper_nonzero > 0 and lower_zero),
    }


# ---------------------------------------------------------------------------
# the glued space X = C u P


@dataclass(frozen=True)
class GluedPoint:
    """Point of X in C^2: on the open cylinder (|z| < 1, any w) or on the
    plane (w = 0, any z)."""

    z: complex
    w: complex

    def __post_init__(self):
        if self.w != 0 and not abs(self.z) < 1.0:
            raise ValueError("points with w != 0 must lie in the open cylinder")

    @property
    def on_cylinder(self) -> bool:
        return abs(self.z) < 1.0

    @property
    def on_plane(self) -> bool:
        return self.w == 0

    @property
    def in_U(self) -> bool:
        return not (self.z == 1 and self.w == 0)

    @property
    def in_V(self) -> bool:
        return not (self.z == -1 and self.w == 0)


def glued_point(z: complex, w: complex = 0.0) -> GluedPoint:
    return GluedPoint(complex(z), complex(w))


def mobius_plus(z: complex) -> complex:
    """(1 + z)/(1 - z): the disk onto the right half-plane."""
    return (1.0 + z) / (1.0 - z)


def mobius_plus_inv(zeta: complex) -> complex:
    return (zeta - 1.0) / (zeta + 1.0)


def chart_phi(spec: GammaSpec, q: GluedPoint) -> GammaPoint:
    """Chart on U = X minus {(1, 0)}: model coordinates
    (x, t) = (-Im, Re) of (1+z)/(1-z), fiber coefficients (Re w, Im w)."""
    _require_embedding_spec(spec)
    if not q.in_U:
        raise ValueError("(1, 0) is deleted from the first chart domain")
    zeta = mobius_plus(q.z)
    t = zeta.real
    x = -zeta.imag
    if t <= 0.0:
        # |z| >= 1 forces w = 0, so the fiber is zero here
        return gamma_point(spec, [x], t)
    return gamma_point(spec, [x], t, [q.w.real, q.w.imag])


def chart_phi_inv(spec: GammaSpec, p: GammaPoint) -> GluedPoint:
    """Inverse chart; the single model point (0, -1, 0) is the image of
    z = infinity and is rejected."""
    _require_embedding_spec(spec)
    zeta = complex(p.t, -p.x[0])
    if zeta == -1:
        raise ValueError("(x, t) = (0, -1) corresponds to the infinite point")
    z = mobius_plus_inv(zeta)
    if p.t <= 0.0:
        return glued_point(z, 0.0)
    c = p.fiber_coeffs
    return glued_point(z, complex(c[0], c[1]))


def chart_psi(spec: GammaSpec, q: GluedPoint) -> GammaPoint:
    """Chart on V = X minus {(-1, 0)}: the first chart composed with z -> -z."""
    if not q.in_V:
        raise ValueError("(-1, 0) is deleted from the second chart domain")
    return chart_phi(spec, glued_point(-q.z, q.w))


def chart_psi_inv(spec: GammaSpec, p: GammaPoint) -> GluedPoint:
    q = chart_phi_inv(spec, p)
    return glued_point(-q.z, q.w)


def chart_phi_tangent(spec: GammaSpec, q: GluedPoint, dz: complex,
                      dw: complex) -> TangentVector:
    """Differential of the first chart at q applied to an ambient direction
    (dz, dw) tangent to X."""
    _require_embedding_spec(spec)
    if not q.in_U:
        raise ValueError("(1, 0) is deleted from the first chart domain")
    dzeta = 2.0 / (1.0 - q.z) ** 2 * dz
    dx = -dzeta.imag
    dt = dzeta.real
    t = mobius_plus(q.z).real
    if t <= 0.0:
        return TangentVector([dx], dt, np.zeros(2))
    return TangentVector([dx], dt, [dw.real, dw.imag])


def chart_psi_tangent(spec: GammaSpec, q: GluedPoint, dz: complex,
                      dw: complex) -> TangentVector:
    if not q.in_V:
        raise ValueError("(-1, 0) is deleted from the second chart domain")
    return chart_phi_tangent(spec, glued_point(-q.z, q.w), -dz, dw)


@dataclass(frozen=True)
class ChartHandle:
    """Forward map, tangent map, and domain test of one chart."""

    name: str
    forward: Callable
    tangent: Callable
    contains: Callable


def phi_chart(spec: GammaSpec) -> ChartHandle:
    return ChartHandle("U", lambda q: chart_phi(spec, q),
                       lambda q, dz, dw: chart_phi_tangent(spec, q, dz, dw),
                       lambda q: q.in_U)


def psi_chart(spec: GammaSpec) -> ChartHandle:
    return ChartHandle("V", lambda q: chart_psi(spec, q),
                       lambda q, dz, dw: chart_psi_tangent(spec, q, dz, dw),
                       lambda q: q.in_V)


def partition_weights(spec: GammaSpec, r0: float = 0.5):
    """Smooth partition of unity subordinate to the two chart domains.

    Each raw weight is the odd cutoff applied to the distance from the
    other chart's deleted point, rescaled to vanish identically within r0;
    the deleted points are 2 apart so the normalizer never vanishes.
    """
    from .scspace import smooth_cutoff

    def raw(q: GluedPoint, deleted: complex) -> float:
        d = abs(q.z - deleted) + abs(q.w)
        return float(smooth_cutoff(np.clip(d / r0 - 1.0, 0.0, 1.0)))

    def w_u(q: GluedPoint) -> float:
        a = raw(q, 1.0)
        return a / (a + raw(q, -1.0))

    def w_v(q: GluedPoint) -> float:
        b = raw(q, -1.0)
        return b / (raw(q, 1.0) + b)

    return w_u, w_v


# ---------------------------------------------------------------------------
# the chart transition in model coordinates


def transition_plane_map(x: float, t: float) -> tuple[float, float]:
    """(x, t) -> (-sigma, tau) with sigma = x/(t^2+x^2), tau = t/(t^2+x^2)."""
    r = t * t + x * x
    if r == 0.0:
        raise ValueError("transition undefined at the origin")
    return -x / r, t / r


def transition_plane_partials(x: float, t: float) -> tuple[float, float, float, float]:
    """(d sigma/dx, d sigma/dt, d tau/dx, d tau/dt); sigma_x = -tau_t and
    sigma_t = tau_x, the conformal relations behind the holomorphy of the
    transition."""
    r = t * t + x * x
    if r == 0.0:
        raise ValueError("transition undefined at the origin")
    sx = (t * t - x * x) / r**2
    st = -2.0 * x * t / r**2
    tx = -2.0 * x * t / r**2
    tt = (x * x - t * t) / r**2
    return sx, st, tx, tt


def transition(spec: GammaSpec, p: GammaPoint) -> GammaPoint:
    """The chart transition: an involution of the model minus the origin.

    The fiber coefficients are carried unchanged to the new frame parameter.
    """
    _require_embedding_spec(spec)
    x1, t1 = transition_plane_map(float(p.x[0]), p.t)
    if p.t <= 0.0:
        return gamma_point(spec, [x1], t1)
    return gamma_point(spec, [x1], t1, p.fiber_coeffs)


def transition_differential(spec: GammaSpec, p: GammaPoint,
                            v: TangentVector) -> TangentVector:
    """Differential of the transition in canonical coordinates:
    (dx, dt, df) -> (-d sigma, d tau, df)."""
    _require_embedding_spec(spec)
    x, t = float(p.x[0]), p.t
    sx, st, tx, tt = transition_plane_partials(x, t)
    dsigma = sx * v.dx[0] + st * v.dt
    dtau = tx * v.dx[0] + tt * v.dt
    return TangentVector([-dsigma], dtau, v.df.copy())


def transition_j_defect(spec: GammaSpec, J: ComplexStructureJ,
                        p: GammaPoint) -> float:
    """max over frame directions of |J(D tr(v)) - D tr(Jv)| at p."""
    q = transition(spec, p)
    dim = spec.n + 1 + (spec.k if p.t > 0.0 else 0)
    worst = 0.0
    for ell in range(1, dim + 1):
        v = frame(spec, ell, p)
        left = transition_differential(spec, p, J.apply(p, v))
        right = J.apply(q, transition_differential(spec, p, v))
        worst = max(worst, float(np.linalg.norm(frame_coords(spec, q, left - right))))
    return worst
