"""Tensor fields on the model space: metric, almost complex structure,
fundamental 2-form, Hermitian metric, two-chart blended metric, and the
injective norm of order-2 tensors.

The frame fields are declared orthonormal, which gives the metric

    g((dx, dt, df), (dy, ds, dg)) = dx.dy + dt ds + df.dg

in canonical coordinates. The almost complex structure rotates consecutive
coordinate pairs (x_1 x_2), ..., (x_n t), (f_1 f_2), ..., which requires n
odd and k even.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .gamma import (GammaPoint, GammaSpec, TangentVector, frame, frame_coords,
                    realized, vector_from_coords)
from .l2 import l2_inner


@lru_cache(maxsize=None)
def pair_rotation(dim: int) -> np.ndarray:
    """Block matrix sending e_{2m} -> e_{2m+1} and e_{2m+1} -> -e_{2m}."""
    if dim % 2 != 0:
        raise ValueError("pair rotation needs an even dimension")
    j = np.zeros((dim, dim))
    for m in range(0, dim, 2):
        j[m + 1, m] = 1.0
        j[m, m + 1] = -1.0
    j.setflags(write=False)
    return j


@dataclass(frozen=True)
class ComplexStructureJ:
    """Fiberwise rotation with J^2 = -identity on every tangent space."""

    spec: GammaSpec

    def __post_init__(self):
        self.spec.require_even_dimensional()

    def matrix(self, p: GammaPoint) -> np.ndarray:
        dim = self.spec.n + 1 + (self.spec.k if p.t > 0.0 else 0)
        return pair_rotation(dim)

    def apply(self, p: GammaPoint, v: TangentVector) -> TangentVector:
        coords = frame_coords(self.spec, p, v)
        return vector_from_coords(self.spec, p, self.matrix(p) @ coords)

    __call__ = apply


def j_apply(J: ComplexStructureJ, p: GammaPoint, v: TangentVector) -> TangentVector:
    return J.apply(p, v)


@dataclass(frozen=True)
class MetricTensor:
    """Symmetric positive bilinear evaluation handle."""

    name: str
    fn: Callable

    def __call__(self, p, v, w) -> float:
        return self.fn(p, v, w)


def metric_frame(spec: GammaSpec) -> MetricTensor:
    """The metric that makes the frame fields orthonormal."""

    def fn(p: GammaPoint, v: TangentVector, w: TangentVector) -> float:
        return float(frame_coords(spec, p, v) @ frame_coords(spec, p, w))

    return MetricTensor("frame-orthonormal", fn)


def ambient_metric(spec: GammaSpec) -> MetricTensor:
    """Inner product inherited from R^n + R + L2(R) on realized tangent tuples.

    Not compatible with the pair-rotation structure at points with nonzero
    fiber: the shear contributes |xi_t|^2 dt ds, which the rotation moves to
    the x_n slot.
    """

    def fn(p: GammaPoint, v: TangentVector, w: TangentVector) -> float:
        a = realized(spec, p, v)
        b = realized(spec, p, w)
        return float(a.dx @ b.dx + a.dt * b.dt + l2_inner(a.fiber, b.fiber))

    return MetricTensor("ambient", fn)


def compatibility_defect(spec: GammaSpec, g: MetricTensor, J: ComplexStructureJ,
                         p: GammaPoint) -> float:
    """max |g(Jv, Jw) - g(v, w)| over frame pairs at p."""
    dim = spec.n + 1 + spec.k
    vs = [frame(spec, ell, p) for ell in range(1, dim + 1)]
    worst = 0.0
    for v in vs:
        jv = J.apply(p, v)
        for w in vs:
            jw = J.apply(p, w)
            worst = max(worst, abs(g(p, jv, jw) - g(p, v, w)))
    return worst


def compatibilize(spec: GammaSpec, g: MetricTensor,
                  J: ComplexStructureJ) -> MetricTensor:
    """g~(v, w) = g(v, w) + g(Jv, Jw); compatible with J by construction."""

    def fn(p, v, w):
        return g(p, v, w) + g(p, J.apply(p, v), J.apply(p, w))

    return MetricTensor(f"compatibilized({g.name})", fn)


@dataclass(frozen=True)
class TwoForm:
    """Antisymmetric bilinear evaluation handle with scale-level tag."""

    name: str
    fn: Callable
    level: int = 0
    degree: int = 2

    def __call__(self, p, v, w) -> float:
        return self.fn(p, v, w)


def fundamental_form(spec: GammaSpec, g: MetricTensor, J: ComplexStructureJ,
                     check_points=(), tol: float = 1e-10) -> TwoForm:
    """omega(v, w) = g(Jv, w); rejects metrics whose incompatibility with J
    breaks antisymmetry at the given probe points."""

    def fn(p, v, w):
        return g(p, J.apply(p, v), w)

    for p in check_points:
        dim = spec.n + 1 + spec.k
        vs = [frame(spec, ell, p) for ell in range(1, dim + 1)]
        for v in vs:
            for w in vs:
                if abs(fn(p, v, w) + fn(p, w, v)) > tol:
                    raise ValueError(
                        "metric is not compatible with J: fundamental form "
                        f"fails antisymmetry by {abs(fn(p, v, w) + fn(p, w, v)):.3e}")
    return TwoForm(f"fundamental({g.name})", fn)


@dataclass(frozen=True)
class HermitianMetric:
    """h = g + i omega; sesquilinear for the complex scalar action a v + b Jv."""

    name: str
    fn: Callable

    def __call__(self, p, v, w) -> complex:
        return self.fn(p, v, w)


def hermitian(spec: GammaSpec, g: MetricTensor, J: ComplexStructureJ,
              check_points=(), tol: float = 1e-10) -> HermitianMetric:
    """Build h(v, w) = g(v, w) + i g(Jv, w) from a compatible metric."""
    for p in check_points:
        defect = compatibility_defect(spec, g, J, p)
        if defect > tol:
            raise ValueError(f"metric incompatible with J (defect {defect:.3e})")

    def fn(p, v, w):
        return complex(g(p, v, w), g(p, J.apply(p, v), w))

    return HermitianMetric(f"hermitian({g.name})", fn)


def complex_scale(J: ComplexStructureJ, p: GammaPoint, a: complex,
                  v: TangentVector) -> TangentVector:
    """The scalar action (a + ib) . v = a v + b Jv induced by J."""
    return v * float(np.real(a)) + J.apply(p, v) * float(np.imag(a))


@dataclass(frozen=True)
class FiniteTensor:
    """Coefficient array of an (r, s)-tensor over an orthonormal fiber frame."""

    order: tuple[int, int]
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != self.order[0] + self.order[1]:
            raise ValueError("coefficient rank must match the tensor order")
        object.__setattr__(self, "coeffs", c)


def injective_norm(t: FiniteTensor) -> float:
    """Injective tensor norm of an order-2 tensor over Euclidean fibers.

    Equals the largest singular value of the coefficient matrix: the
    supremum of (lam otimes mu)(T) over unit functionals is attained at the
    top singular pair. Satisfies the cross-norm property on a otimes b.
    """
    if t.order not in ((0, 2), (2, 0)):
        raise ValueError(f"injective norm implemented for order-2 tensors, got {t.order}")
    return float(np.linalg.norm(t.coeffs, ord=2))


def blend_metric(spec: GammaSpec, charts=None, partition=None,
                 check_points=(), tol: float = 1e-12) -> MetricTensor:
    """Partition-of-unity metric on the glued two-chart space.

    Each chart pulls back the ambient inner product of the model space; the
    weights must be nonnegative, sum to one, and vanish near the point the
    other chart misses.
    """
    from .holo import partition_weights, phi_chart, psi_chart

    if charts is None:
        charts = (phi_chart(spec), psi_chart(spec))
    if partition is None:
        partition = partition_weights(spec)
    cu, cv = charts
    wu, wv = partition

    for q in check_points:
        a, b = wu(q), wv(q)
        if a < 0.0 or b < 0.0 or abs(a + b - 1.0) > tol:
            raise ValueError(f"weights fail the partition property at {q}")
        if not cu.contains(q) and a != 0.0:
            raise ValueError("first weight does not vanish outside its chart")
        if not cv.contains(q) and b != 0.0:
            raise ValueError("second weight does not vanish outside its chart")

    def pullback(chart, q, v, w) -> float:
        p = chart.forward(q)
        a = realized(spec, p, chart.tangent(q, *v))
        b = realized(spec, p, chart.tangent(q, *w))
        return float(a.dx @ b.dx + a.dt * b.dt + l2_inner(a.fiber, b.fiber))

    def fn(q, v, w) -> float:
        total = 0.0
        a, b = wu(q), wv(q)
        if a > 0.0:
            total += a * pullback(cu, q, v, w)
        if b > 0.0:
            total += b * pullback(cv, q, v, w)
        return total

    return MetricTensor("two-chart blend", fn)
