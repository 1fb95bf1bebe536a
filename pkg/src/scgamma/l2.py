"""Compactly supported L2 elements in two representations.

``FrameElement`` stores coefficients over a translated copy of the bump
frame (and its first two derivatives); ``GridElement`` stores samples on a
uniform grid. Formal sums of frame elements at different translations arise
from finite differencing across the translation parameter and are kept as
``L2Sum`` so inner products stay at quadrature accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bumps import SPACING, BumpBasis
from .quadrature import gauss_base, simpson

GRID_SPACING = 1.0 / 512.0


def frame_shift(t: float) -> float:
    """Translation amount exp(1/t) of the moving frame; inf overflow is
    deliberate (the frame has escaped to -infinity, all overlaps are empty)."""
    if t <= 0.0:
        raise ValueError("moving frame requires t > 0")
    with np.errstate(over="ignore"):
        return float(np.exp(1.0 / t))


def frame_shift_dt(t: float) -> float:
    """d/dt exp(1/t) = -exp(1/t)/t^2."""
    return -frame_shift(t) / t**2


def frame_shift_dtt(t: float) -> float:
    """d^2/dt^2 exp(1/t) = exp(1/t) (1/t^4 + 2/t^3)."""
    return frame_shift(t) * (1.0 / t**4 + 2.0 / t**3)


@dataclass(frozen=True, eq=False)
class FrameElement:
    """Sum over d, j of coeffs[d, j] * (d-th derivative bump)_j(. + shift).

    ``t`` records the frame parameter when the element was attached to one
    (shift == exp(1/t)); raw translations carry ``t=None``.
    """

    basis: BumpBasis
    shift: float
    coeffs: np.ndarray
    t: float | None = None

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.coeffs, dtype=float))
        if c.ndim != 2 or c.shape[0] != 3 or c.shape[1] != self.basis.k:
            raise ValueError(f"coefficients must have shape (3, {self.basis.k})")
        object.__setattr__(self, "coeffs", c)
        if self.t is not None and self.t <= 0.0:
            raise ValueError("frame representation is only valid for t > 0")

    @property
    def gamma(self) -> np.ndarray:
        return self.coeffs[0]

    @property
    def gamma_dot(self) -> np.ndarray:
        return self.coeffs[1]

    @property
    def gamma_ddot(self) -> np.ndarray:
        return self.coeffs[2]

    def support(self) -> tuple[float, float]:
        cols = np.flatnonzero(np.any(self.coeffs != 0.0, axis=0))
        if cols.size == 0:
            return (0.0, 0.0)
        lo = SPACING * (cols[0] + 1) - 1.0 - self.shift
        hi = SPACING * (cols[-1] + 1) + 1.0 - self.shift
        return (lo, hi)

    def value(self, s):
        scalar = np.isscalar(s)
        arr = np.atleast_1d(np.asarray(s, dtype=float))
        out = kernels.frame_eval(self.coeffs, self.shift, arr, self.basis.norm_const)
        return float(out[0]) if scalar else out

    def derivative(self) -> "FrameElement":
        """Analytic derivative; shifts coefficient rows up one order."""
        if np.any(self.coeffs[2] != 0.0):
            raise ValueError("derivative would exceed the stored order cap")
        c = np.zeros_like(self.coeffs)
        c[1] = self.coeffs[0]
        c[2] = self.coeffs[1]
        return FrameElement(self.basis, self.shift, c, self.t)

    def __add__(self, other):
        return l2_add(self, other)

    def __sub__(self, other):
        return l2_add(self, l2_scale(other, -1.0))

    def __mul__(self, a: float):
        return l2_scale(self, a)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class GridElement:
    """Samples on a uniform grid over [lo, hi]; zero outside."""

    lo: float
    hi: float
    samples: np.ndarray

    def __post_init__(self):
        s = np.ascontiguousarray(np.asarray(self.samples, dtype=float))
        if s.ndim != 1 or s.shape[0] < 2:
            raise ValueError("grid needs at least two samples")
        if not self.hi > self.lo:
            raise ValueError("grid interval must have positive length")
        object.__setattr__(self, "samples", s)

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.samples.shape[0] - 1)

    def support(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def positions(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.samples.shape[0])

    def value(self, s):
        scalar = np.isscalar(s)
        arr = np.atleast_1d(np.asarray(s, dtype=float))
        out = np.interp(arr, self.positions(), self.samples, left=0.0, right=0.0)
        return float(out[0]) if scalar else out

    def __mul__(self, a: float):
        return l2_scale(self, a)

    __rmul__ = __mul__


@dataclass(frozen=True)
class ZeroElement:
    """The zero function; the fiber of every point with t <= 0."""

    def support(self) -> tuple[float, float]:
        return (0.0, 0.0)

    def value(self, s):
        return 0.0 if np.isscalar(s) else np.zeros_like(np.asarray(s, dtype=float))

    def __add__(self, other):
        return other

    def __sub__(self, other):
        return l2_scale(other, -1.0)

    def __mul__(self, a: float):
        return self

    __rmul__ = __mul__


ZERO = ZeroElement()


@dataclass(frozen=True, eq=False)
class L2Sum:
    """Formal sum of frame elements at distinct translations."""

    parts: tuple[FrameElement, ...]

    def support(self) -> tuple[float, float]:
        los, his = zip(*(p.support() for p in self.parts))
        return (min(los), max(his))

    def value(self, s):
        vals = [p.value(s) for p in self.parts]
        return sum(vals)

    def __add__(self, other):
        return l2_add(self, other)

    def __sub__(self, other):
        return l2_add(self, l2_scale(other, -1.0))

    def __mul__(self, a: float):
        return l2_scale(self, a)

    __rmul__ = __mul__


L2Element = FrameElement | GridElement | ZeroElement | L2Sum


def frame_element(basis: BumpBasis, t: float | None = None, shift: float | None = None,
                  gamma=None, gamma_dot=None, gamma_ddot=None) -> FrameElement:
    """Build a frame element from per-order coefficient vectors."""
    if shift is None:
        if t is None:
            raise ValueError("need either t or an explicit shift")
        shift = frame_shift(t)
    c = np.zeros((3, basis.k))
    for row, vec in enumerate((gamma, gamma_dot, gamma_ddot)):
        if vec is not None:
            c[row] = np.asarray(vec, dtype=float)
    return FrameElement(basis, shift, c, t)


def unit_frame(basis: BumpBasis, j: int, t: float | None = None,
               shift: float | None = None, order: int = 0) -> FrameElement:
    """The j-th translated bump (1-based), or its derivative."""
    if not 1 <= j <= basis.k:
        raise IndexError(f"bump index {j} out of range 1..{basis.k}")
    c = np.zeros((3, basis.k))
    c[order, j - 1] = 1.0
    if shift is None:
        shift = 0.0 if t is None else frame_shift(t)
    return FrameElement(basis, shift, c, t)


def l2_scale(f: L2Element, a: float) -> L2Element:
    if isinstance(f, ZeroElement) or a == 0.0:
        return ZERO
    if isinstance(f, FrameElement):
        return FrameElement(f.basis, f.shift, a * f.coeffs, f.t)
    if isinstance(f, GridElement):
        return GridElement(f.lo, f.hi, a * f.samples)
    return L2Sum(tuple(l2_scale(p, a) for p in f.parts))


def _as_parts(f: L2Element) -> tuple[FrameElement, ...]:
    if isinstance(f, FrameElement):
        return (f,)
    if isinstance(f, L2Sum):
        return f.parts
    raise TypeError(f"cannot merge {type(f).__name__} into a frame sum")


def l2_add(f: L2Element, g: L2Element) -> L2Element:
    if isinstance(f, ZeroElement):
        return g
    if isinstance(g, ZeroElement):
        return f
    if isinstance(f, GridElement) and isinstance(g, GridElement):
        if (f.lo, f.hi, f.samples.shape) != (g.lo, g.hi, g.samples.shape):
            raise ValueError("grid elements must share a grid to be added")
        return GridElement(f.lo, f.hi, f.samples + g.samples)
    parts: list[FrameElement] = []
    for p in _as_parts(f) + _as_parts(g):
        for i, q in enumerate(parts):
            if q.shift == p.shift and q.basis is p.basis:
                parts[i] = FrameElement(q.basis, q.shift, q.coeffs + p.coeffs, q.t)
                break
        else:
            parts.append(p)
    parts = [p for p in parts if np.any(p.coeffs != 0.0)]
    if not parts:
        return ZERO
    if len(parts) == 1:
        return parts[0]
    return L2Sum(tuple(parts))


def _supports_disjoint(f: L2Element, g: L2Element) -> bool:
    flo, fhi = f.support()
    glo, ghi = g.support()
    return min(fhi, ghi) <= max(flo, glo)


def _frame_frame_inner(f: FrameElement, g: FrameElement) -> float:
    if f.shift == g.shift:
        # same translation: diagonal bump blocks, exact Gram
        gram = f.basis.gram
        total = 0.0
        for j in range(min(f.basis.k, g.basis.k)):
            total += f.coeffs[:, j] @ gram @ g.coeffs[:, j]
        return float(total)
    ds = g.shift - f.shift
    if not np.isfinite(ds):
        # distinct frame parameters in the overflow regime: the translations
        # differ by far more than a support width
        return 0.0
    x0, w0 = gauss_base(f.basis.nodes_per_unit)
    cc = f.basis.norm_const**2
    return float(kernels.frame_inner_cross(f.coeffs, g.coeffs, ds, x0, w0, cc))


def _frame_grid_inner(f: FrameElement, g: GridElement) -> float:
    if _supports_disjoint(f, g):
        return 0.0
    vals = f.value(g.positions())
    return simpson(vals * g.samples, g.spacing)


def _grid_grid_inner(f: GridElement, g: GridElement) -> float:
    if _supports_disjoint(f, g):
        return 0.0
    if (f.lo, f.hi, f.samples.shape) == (g.lo, g.hi, g.samples.shape):
        return simpson(f.samples * g.samples, f.spacing)
    lo = max(f.lo, g.lo)
    hi = min(f.hi, g.hi)
    h = min(f.spacing, g.spacing)
    n = max(3, int(np.ceil((hi - lo) / h)) + 1)
    s = np.linspace(lo, hi, n)
    return simpson(f.value(s) * g.value(s), s[1] - s[0])


def l2_inner(f: L2Element, g: L2Element) -> float:
    """L2 inner product; exactly zero when the supports do not overlap."""
    if isinstance(f, ZeroElement) or isinstance(g, ZeroElement):
        return 0.0
    if isinstance(f, L2Sum):
        return sum(l2_inner(p, g) for p in f.parts)
    if isinstance(g, L2Sum):
        return sum(l2_inner(f, p) for p in g.parts)
    if isinstance(f, FrameElement) and isinstance(g, FrameElement):
        return _frame_frame_inner(f, g)
    if isinstance(f, FrameElement) and isinstance(g, GridElement):
        return _frame_grid_inner(f, g)
    if isinstance(f, GridElement) and isinstance(g, FrameElement):
        return _frame_grid_inner(g, f)
    if isinstance(f, GridElement) and isinstance(g, GridElement):
        return _grid_grid_inner(f, g)
    raise TypeError(f"unsupported operands {type(f).__name__}, {type(g).__name__}")


def l2_norm_sampled(f: L2Element, nodes_per_unit: int | None = None) -> float:
    """Norm via pointwise evaluation on a quadrature grid over the support.

    For near-cancelling sums (finite-difference residuals) this avoids the
    bilinear expansion, whose O(1) cross terms would drown a tiny norm in
    roundoff.
    """
    from .quadrature import composite_grid

    lo, hi = f.support()
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi <= lo:
        return float(np.sqrt(max(l2_inner(f, f), 0.0)))
    if nodes_per_unit is None:
        part = f.parts[0] if isinstance(f, L2Sum) else f
        nodes_per_unit = part.basis.nodes_per_unit if isinstance(part, FrameElement) \
            else 64
    s, w = composite_grid(lo, hi, nodes_per_unit)
    vals = f.value(s)
    return float(np.sqrt(np.sum(w * vals * vals)))


def l2_norm(f: L2Element) -> float:
    if isinstance(f, L2Sum):
        return l2_norm_sampled(f)
    return float(np.sqrt(max(l2_inner(f, f), 0.0)))


def to_grid(f: L2Element, spacing: float = GRID_SPACING, pad: float = 0.0) -> L2Element:
    """Sample onto a uniform grid covering the support plus optional padding."""
    if isinstance(f, ZeroElement):
        return ZERO
    lo, hi = f.support()
    if hi <= lo:
        return ZERO
    lo -= pad
    hi += pad
    n = max(3, int(np.ceil((hi - lo) / spacing)) + 1)
    s = np.linspace(lo, hi, n)
    return GridElement(lo, hi, f.value(s))


def grid_from_function(fn, lo: float, hi: float,
                       spacing: float = GRID_SPACING) -> GridElement:
    n = max(3, int(np.ceil((hi - lo) / spacing)) + 1)
    s = np.linspace(lo, hi, n)
    return GridElement(lo, hi, np.asarray(fn(s), dtype=float))
