"""Scale-aware differential calculus: vector fields, Lie brackets, exterior
derivative, complexified tangents, bidegree projections, the Nijenhuis
tensor, and the split of the complexified differential into (1,0) and (0,1)
parts.

Differentiation raises the scale level: a bracket of fields on level i
produces a field on level i+1, and the exterior derivative of a level-i
form lives on level i+1. The tags are tracked explicitly; all concrete
points here are smooth, so the tags are bookkeeping that tests assert on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .gamma import (AmbientVector, GammaPoint, GammaSpec, TangentVector,
                    ambient_norm, curve_point, frame, frame_coords,
                    frame_differential, to_tangent, zero_ambient, zero_tangent)
from .tensors import ComplexStructureJ, pair_rotation

FD_STEP = 1e-4


@dataclass(frozen=True, eq=False)
class VectorField:
    """Section of the tangent bundle with an optional analytic differential.

    ``differential(p, v)`` returns the raw ambient derivative of the field at
    p in the tangent direction v; when absent, consumers fall back to central
    differences along retracted curves. ``regularity`` of None means smooth.
    """

    name: str
    eval: Callable[[GammaPoint], TangentVector]
    differential: Callable | None = None
    regularity: int | None = None
    base_level: int = 0
    frame_combo: np.ndarray | None = None

    def __call__(self, p: GammaPoint) -> TangentVector:
        return self.eval(p)


def frame_field(spec: GammaSpec, ell: int) -> VectorField:
    combo = np.zeros(spec.n + 1 + spec.k)
    combo[ell - 1] = 1.0
    return frame_combo_field(spec, combo, name=f"mu_{ell}")


def frame_combo_field(spec: GammaSpec, combo, name: str | None = None) -> VectorField:
    """Constant-coefficient combination of the frame fields; its differential
    is the same combination of the analytic frame differentials."""
    combo = np.asarray(combo, dtype=float)

    def ev(p: GammaPoint) -> TangentVector:
        out = zero_tangent(spec)
        for ell, c in enumerate(combo, start=1):
            if c != 0.0:
                out = out + c * frame(spec, ell, p)
        return out

    def diff(p: GammaPoint, v: TangentVector) -> AmbientVector:
        out = zero_ambient(spec)
        for ell, c in enumerate(combo, start=1):
            if c != 0.0:
                out = out + c * frame_differential(spec, ell, p, v)
        return out

    return VectorField(name or "frame-combo", ev, diff, frame_combo=combo)


def scaled_combo_field(spec: GammaSpec, coeff_fns: Sequence[Callable],
                       name: str = "combo", regularity: int | None = None) -> VectorField:
    """Point-dependent combination sum_ell c_ell(p) mu_ell(p); differentials
    are left to finite differences."""

    def ev(p: GammaPoint) -> TangentVector:
        out = zero_tangent(spec)
        for ell, c in enumerate(coeff_fns, start=1):
            out = out + float(c(p)) * frame(spec, ell, p)
        return out

    return VectorField(name, ev, None, regularity=regularity)


def fd_field_differential(spec: GammaSpec, fld: VectorField, p: GammaPoint,
                          v: TangentVector, step: float = FD_STEP,
                          richardson: bool = True) -> AmbientVector:
    """Central difference of the field along the retracted curve through p
    with velocity v, taken in the ambient space.

    Richardson extrapolation (on by default) combines the step and half-step
    quotients to fourth order; the exp(1/t) translation makes plain second
    order too coarse below t of about 1.
    """
    from .gamma import realized

    def quotient(h: float) -> AmbientVector:
        qp = curve_point(spec, p, v, h)
        qm = curve_point(spec, p, v, -h)
        ap = realized(spec, qp, fld.eval(qp))
        am = realized(spec, qm, fld.eval(qm))
        return (1.0 / (2.0 * h)) * (ap - am)

    d1 = quotient(step)
    if not richardson:
        return d1
    d2 = quotient(step / 2.0)
    return (4.0 / 3.0) * d2 - (1.0 / 3.0) * d1


def field_differential(spec: GammaSpec, fld: VectorField, p: GammaPoint,
                       v: TangentVector, step: float = FD_STEP) -> AmbientVector:
    if fld.differential is not None:
        return fld.differential(p, v)
    return fd_field_differential(spec, fld, p, v, step)


def _require_regularity(fld: VectorField, needed: int):
    if fld.regularity is not None and fld.regularity < needed:
        raise ValueError(
            f"field {fld.name} is tagged sc^{fld.regularity}, needs sc^{needed}")


def lie_bracket_ambient(spec: GammaSpec, mu: VectorField, nu: VectorField,
                        p: GammaPoint, step: float = FD_STEP) -> AmbientVector:
    """[mu, nu](p) = Dmu(p) nu(p) - Dnu(p) mu(p) as a raw ambient tuple."""
    _require_regularity(mu, 2)
    _require_regularity(nu, 2)
    return (field_differential(spec, mu, p, nu.eval(p), step)
            - field_differential(spec, nu, p, mu.eval(p), step))


def lie_bracket(spec: GammaSpec, mu: VectorField, nu: VectorField,
                p: GammaPoint, step: float = FD_STEP) -> TangentVector:
    """The bracket canonicalized to the tangent space at p."""
    return to_tangent(spec, p, lie_bracket_ambient(spec, mu, nu, p, step))


def lie_bracket_field(spec: GammaSpec, mu: VectorField, nu: VectorField,
                      step: float = FD_STEP) -> VectorField:
    """The bracket as a field: one regularity lower, one scale level higher."""
    _require_regularity(mu, 2)
    _require_regularity(nu, 2)
    regs = [r for r in (mu.regularity, nu.regularity) if r is not None]
    reg = min(regs) - 1 if regs else None
    return VectorField(f"[{mu.name},{nu.name}]",
                       lambda p: lie_bracket(spec, mu, nu, p, step),
                       regularity=reg,
                       base_level=max(mu.base_level, nu.base_level) + 1)


def apply_j_field(spec: GammaSpec, J: ComplexStructureJ,
                  fld: VectorField) -> VectorField:
    """The field p -> J_p(fld(p)). Constant frame combinations stay constant
    frame combinations, so their analytic differentials survive."""
    if fld.frame_combo is not None:
        jc = pair_rotation(spec.n + 1 + spec.k) @ fld.frame_combo
        return frame_combo_field(spec, jc, name=f"J{fld.name}")
    return VectorField(f"J{fld.name}", lambda p: J.apply(p, fld.eval(p)),
                       None, regularity=fld.regularity,
                       base_level=fld.base_level)


def nijenhuis(spec: GammaSpec, mu: VectorField, nu: VectorField,
              J: ComplexStructureJ, p: GammaPoint,
              step: float = FD_STEP) -> TangentVector:
    """N_J(mu, nu) = [mu, nu] + J[mu, Jnu] + J[Jmu, nu] - [Jmu, Jnu] at p."""
    _require_regularity(mu, 2)
    _require_regularity(nu, 2)
    jmu = apply_j_field(spec, J, mu)
    jnu = apply_j_field(spec, J, nu)
    b0 = lie_bracket(spec, mu, nu, p, step)
    b1 = lie_bracket(spec, mu, jnu, p, step)
    b2 = lie_bracket(spec, jmu, nu, p, step)
    b3 = lie_bracket(spec, jmu, jnu, p, step)
    return b0 + J.apply(p, b1) + J.apply(p, b2) - b3


def tangent_norm(spec: GammaSpec, p: GammaPoint, v: TangentVector) -> float:
    return float(np.linalg.norm(frame_coords(spec, p, v)))


@dataclass(frozen=True, eq=False)
class ScalarFunction:
    """Scalar (possibly complex-valued) function with optional analytic
    differential; doubles as a 0-form of the tagged scale level."""

    name: str
    eval: Callable[[GammaPoint], complex]
    differential: Callable | None = None
    regularity: int | None = None
    level: int = 0
    degree: int = 0

    def __call__(self, p: GammaPoint) -> complex:
        return self.eval(p)


def directional_derivative(spec: GammaSpec, f: ScalarFunction, p: GammaPoint,
                           v: TangentVector, step: float = FD_STEP) -> complex:
    """(d f)_p(v), analytic when available, else a central difference along
    the retracted curve."""
    if f.differential is not None:
        return f.differential(p, v)
    return (f.eval(curve_point(spec, p, v, step))
            - f.eval(curve_point(spec, p, v, -step))) / (2.0 * step)


def coordinate_projection(spec: GammaSpec) -> ScalarFunction:
    """p -> x_n + i t, with its exact differential v -> dx_n + i dt."""
    n = spec.n

    def ev(p: GammaPoint) -> complex:
        return complex(p.x[n - 1], p.t)

    def diff(p: GammaPoint, v: TangentVector) -> complex:
        return complex(v.dx[n - 1], v.dt)

    return ScalarFunction("x_n + i t", ev, diff)


def dbar(spec: GammaSpec, f: ScalarFunction, J: ComplexStructureJ,
         p: GammaPoint, v: TangentVector, step: float = FD_STEP) -> complex:
    """(dbar f)_p(v) = ((d f)_p(v) + i (d f)_p(Jv)) / 2."""
    dv = directional_derivative(spec, f, p, v, step)
    djv = directional_derivative(spec, f, p, J.apply(p, v), step)
    return 0.5 * (dv + 1j * djv)


def partial_op(spec: GammaSpec, f: ScalarFunction, J: ComplexStructureJ,
               p: GammaPoint, v: TangentVector, step: float = FD_STEP) -> complex:
    """(partial f)_p(v) = ((d f)_p(v) - i (d f)_p(Jv)) / 2."""
    dv = directional_derivative(spec, f, p, v, step)
    djv = directional_derivative(spec, f, p, J.apply(p, v), step)
    return 0.5 * (dv - 1j * djv)


@dataclass(frozen=True, eq=False)
class ComplexOneForm:
    """Complex-valued 1-form with bidegree and scale-level tags."""

    name: str
    fn: Callable
    level: int
    bidegree: tuple[int, int]

    def __call__(self, p, v) -> complex:
        return self.fn(p, v)


def dbar_form(spec: GammaSpec, f: ScalarFunction, J: ComplexStructureJ,
              step: float = FD_STEP, convention: str = "uniform") -> ComplexOneForm:
    """The (0,1)-part of the complexified differential of f.

    ``convention`` controls the level bookkeeping: "uniform" sends level i
    to i+1; "asymmetric" follows the source-text split where only dbar
    starts at the base level.
    """
    if convention not in ("uniform", "asymmetric"):
        raise ValueError(f"unknown level convention {convention!r}")
    return ComplexOneForm(f"dbar {f.name}",
                          lambda p, v: dbar(spec, f, J, p, v, step),
                          level=f.level + 1, bidegree=(0, 1))


def partial_form(spec: GammaSpec, f: ScalarFunction, J: ComplexStructureJ,
                 step: float = FD_STEP, convention: str = "uniform") -> ComplexOneForm:
    """The (1,0)-part; under the asymmetric convention it requires one level
    of regularity up front and does not raise the tag further."""
    if convention not in ("uniform", "asymmetric"):
        raise ValueError(f"unknown level convention {convention!r}")
    if convention == "asymmetric":
        if f.level < 1:
            raise ValueError("asymmetric convention needs the 0-form on level >= 1")
        out_level = f.level
    else:
        out_level = f.level + 1
    return ComplexOneForm(f"partial {f.name}",
                          lambda p, v: partial_op(spec, f, J, p, v, step),
                          level=out_level, bidegree=(1, 0))


@dataclass(frozen=True, eq=False)
class ScaledForm:
    """Alternating multilinear form with degree and scale-level tags.

    Base forms evaluate on tangent vectors. Forms produced by the exterior
    derivative evaluate on vector fields (the derivative needs values in a
    neighborhood); ``needs_fields`` records which convention applies.
    """

    name: str
    degree: int
    level: int
    fn: Callable
    needs_fields: bool = False

    def __call__(self, p, *args):
        return self.fn(p, *args)


def _form_on_fields(spec: GammaSpec, omega, p: GammaPoint, fields) -> complex:
    if getattr(omega, "needs_fields", False):
        return omega(p, *fields)
    return omega(p, *[f.eval(p) for f in fields])


def exterior_derivative_at(spec: GammaSpec, omega, fields: Sequence[VectorField],
                           p: GammaPoint, step: float = FD_STEP) -> complex:
    """The invariant exterior-derivative formula

        d omega(m_0..m_k) = sum_j (-1)^j D(omega(.., m_j omitted, ..)) m_j
                          + sum_{j<l} (-1)^{j+l} omega([m_j, m_l], ..)

    evaluated at p. 0-forms reduce to the directional derivative.
    """
    k = getattr(omega, "degree", 0)
    if len(fields) != k + 1:
        raise ValueError(f"degree-{k} form needs {k + 1} fields")
    if k == 0:
        if isinstance(omega, ScalarFunction):
            return directional_derivative(spec, omega, p, fields[0].eval(p), step)
        fn = ScalarFunction("omega", lambda q: omega(q))
        return directional_derivative(spec, fn, p, fields[0].eval(p), step)

    total = 0.0 + 0.0j
    for j in range(k + 1):
        rest = [f for m, f in enumerate(fields) if m != j]
        scalar = ScalarFunction(
            "omega-slot", lambda q, rest=rest: _form_on_fields(spec, omega, q, rest))
        term = directional_derivative(spec, scalar, p, fields[j].eval(p), step)
        total += (-1.0) ** j * term
    for j in range(k + 1):
        for l in range(j + 1, k + 1):
            bracket = lie_bracket(spec, fields[j], fields[l], p, step)
            if getattr(omega, "needs_fields", False):
                # derived forms differentiate along their arguments, so extend
                # the bracket value by frozen frame coordinates (the result is
                # tensorial, any smooth extension gives the same value)
                combo = np.zeros(spec.n + 1 + spec.k)
                coords = frame_coords(spec, p, bracket)
                combo[:coords.shape[0]] = coords
                rest_fields = [fields[m] for m in range(k + 1) if m != j and m != l]
                term = omega(p, frame_combo_field(spec, combo), *rest_fields)
            else:
                rest = [fields[m].eval(p) for m in range(k + 1) if m != j and m != l]
                term = omega(p, bracket, *rest)
            total += (-1.0) ** (j + l) * term
    return total if total.imag != 0.0 else float(total.real)


def exterior_derivative(spec: GammaSpec, omega, step: float = FD_STEP) -> ScaledForm:
    """d omega as a form one degree and one scale level up."""
    degree = getattr(omega, "degree", 0)
    level = getattr(omega, "level", 0)

    def fn(p, *fields):
        return exterior_derivative_at(spec, omega, fields, p, step)

    return ScaledForm(f"d({getattr(omega, 'name', 'omega')})", degree + 1,
                      level + 1, fn, needs_fields=True)


@dataclass(frozen=True, eq=False)
class ComplexTangent:
    """Element of the complexified tangent space, stored as real + i imag."""

    re: TangentVector
    im: TangentVector

    def __add__(self, other: "ComplexTangent") -> "ComplexTangent":
        return ComplexTangent(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexTangent") -> "ComplexTangent":
        return ComplexTangent(self.re - other.re, self.im - other.im)

    def scale(self, a: complex) -> "ComplexTangent":
        ar, ai = float(np.real(a)), float(np.imag(a))
        return ComplexTangent(ar * self.re - ai * self.im,
                              ai * self.re + ar * self.im)


def complexified(v: TangentVector | ComplexTangent) -> ComplexTangent:
    if isinstance(v, ComplexTangent):
        return v
    zero = TangentVector(np.zeros_like(v.dx), 0.0, np.zeros_like(v.df))
    return ComplexTangent(v, zero)


def ct_apply_j(J: ComplexStructureJ, p: GammaPoint, v: ComplexTangent) -> ComplexTangent:
    return ComplexTangent(J.apply(p, v.re), J.apply(p, v.im))


def ct_norm(spec: GammaSpec, p: GammaPoint, v: ComplexTangent) -> float:
    return float(np.hypot(tangent_norm(spec, p, v.re), tangent_norm(spec, p, v.im)))


def varpi(spec: GammaSpec, J: ComplexStructureJ, p: GammaPoint,
          v: TangentVector | ComplexTangent, which: tuple[int, int]) -> ComplexTangent:
    """Projection onto the +-i eigenspaces of J: (v - iJv)/2 has type (1,0)
    and (v + iJv)/2 has type (0,1)."""
    cv = complexified(v)
    jcv = ct_apply_j(J, p, cv)
    if which == (1, 0):
        return (cv - jcv.scale(1j)).scale(0.5)
    if which == (0, 1):
        return (cv + jcv.scale(1j)).scale(0.5)
    raise ValueError(f"projection type must be (1,0) or (0,1), got {which}")


@dataclass(frozen=True, eq=False)
class ComplexForm:
    """C-multilinear alternating form on complexified tangent vectors."""

    name: str
    degree: int
    fn: Callable
    level: int = 0

    def __call__(self, p, *vectors) -> complex:
        return self.fn(p, *[complexified(v) for v in vectors])


def complexify_form(spec: GammaSpec, omega) -> ComplexForm:
    """Extend a real alternating form complex-multilinearly."""
    degree = getattr(omega, "degree", 2)
    if degree == 1:
        def fn(p, v):
            return complex(omega(p, v.re), omega(p, v.im))
    elif degree == 2:
        def fn(p, v, w):
            return complex(omega(p, v.re, w.re) - omega(p, v.im, w.im),
                           omega(p, v.re, w.im) + omega(p, v.im, w.re))
    else:
        raise ValueError("complexification implemented for degrees 1 and 2")
    return ComplexForm(f"C({getattr(omega, 'name', 'omega')})", degree, fn,
                       level=getattr(omega, "level", 0))


def bidegree_project(spec: GammaSpec, omega: ComplexForm, which: tuple[int, int],
                     J: ComplexStructureJ) -> ComplexForm:
    """Bidegree projection for forms of degree <= 2.

    Degree 1: pi_{1,0} w(v) = w(varpi_{1,0} v) and likewise for (0,1).
    Degree 2: pi_{1,1} w(v1, v2) = w(varpi10 v1, varpi01 v2)
                                 + w(varpi01 v1, varpi10 v2), etc.
    """
    s, t = which
    if s + t != omega.degree or omega.degree > 2 or s < 0 or t < 0:
        raise ValueError(f"bidegree {which} invalid for a degree-{omega.degree} form")
    if omega.degree == 0:
        return omega
    if omega.degree == 1:
        proj = (1, 0) if which == (1, 0) else (0, 1)

        def fn(p, v):
            return omega(p, varpi(spec, J, p, v, proj))
    else:
        def fn(p, v1, v2):
            p10 = lambda v: varpi(spec, J, p, v, (1, 0))
            p01 = lambda v: varpi(spec, J, p, v, (0, 1))
            if which == (2, 0):
                return omega(p, p10(v1), p10(v2))
            if which == (0, 2):
                return omega(p, p01(v1), p01(v2))
            return omega(p, p10(v1), p01(v2)) + omega(p, p01(v1), p10(v2))

    return ComplexForm(f"pi_{s}{t}({omega.name})", omega.degree, fn, level=omega.level)
