"""Scale structures on L2(R): weight sequence, odd cutoff, weighted Sobolev norms.

Level m of the scale is the weighted Sobolev space with norm

    ||f||_m^2 = integral (|f|^2 + |Df|^2 + ... + |D^m f|^2) exp(delta_m s beta(s)) ds,

where delta_0 = 0, delta is strictly increasing, and beta is a smooth odd
cutoff with beta(0) = 0 and beta(s) = 1 for s >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .l2 import FrameElement, GridElement, L2Element, L2Sum, ZeroElement
from .quadrature import composite_grid, simpson


def _expstep(x):
    # exp(-1/x) for x > 0, zero otherwise; all derivatives vanish at 0
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 1e-8
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def smooth_cutoff(s):
    """Odd C-infinity cutoff: 0 at 0, +-1 beyond |s| >= 1, built from the
    exp(-1/x) smoothstep ratio."""
    scalar = np.isscalar(s)
    x = np.atleast_1d(np.asarray(s, dtype=float))
    a = np.abs(np.clip(x, -1.0, 1.0))
    q = _expstep(a)
    qc = _expstep(1.0 - a)
    ratio = np.where(q + qc > 0.0, q / np.where(q + qc > 0.0, q + qc, 1.0), 0.0)
    out = np.sign(x) * ratio
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class ScaleStructure:
    """The weight data (delta_m, beta) plus a computational level cap."""

    deltas: Sequence[float] = field(default=None)
    beta: Callable = field(default=None)
    max_level: int = 3

    def __post_init__(self):
        if self.deltas is None:
            object.__setattr__(self, "deltas",
                               tuple(float(m) for m in range(self.max_level + 1)))
        if self.beta is None:
            object.__setattr__(self, "beta", smooth_cutoff)
        d = self.deltas
        if d[0] != 0.0:
            raise ValueError("delta_0 must be 0")
        if any(b <= a for a, b in zip(d, d[1:])):
            raise ValueError("delta must be strictly increasing")
        b = self.beta
        probes = np.array([0.25, 0.5, 0.75])
        if b(0.0) != 0.0 or b(1.0) != 1.0 or b(2.5) != 1.0:
            raise ValueError("cutoff must vanish at 0 and equal 1 for s >= 1")
        if np.max(np.abs(np.asarray(b(-probes)) + np.asarray(b(probes)))) > 1e-14:
            raise ValueError("cutoff must be odd")

    def delta(self, m: int) -> float:
        if m >= len(self.deltas):
            raise ValueError(f"level {m} above configured cap {len(self.deltas) - 1}")
        return self.deltas[m]

    def weight(self, m: int, s: np.ndarray) -> np.ndarray:
        return np.exp(self.delta(m) * s * np.asarray(self.beta(s)))


def _frame_derivative_values(f: FrameElement, s: np.ndarray, order: int) -> np.ndarray:
    # differentiate by shifting coefficient rows; bump derivatives stop at order 3
    from . import kernels

    top = int(np.max(np.nonzero(np.any(f.coeffs != 0.0, axis=1))[0], initial=0))
    if top + order > 3:
        raise ValueError("derivative order exceeds the analytic cap for this element")
    vals = np.zeros_like(s)
    for d in range(3):
        row = f.coeffs[d]
        if not np.any(row != 0.0):
            continue
        if d + order <= 2:
            c = np.zeros((3, f.basis.k))
            c[d + order] = row
            vals += kernels.frame_eval(c, f.shift, s, f.basis.norm_const)
        else:
            for j in range(f.basis.k):
                if row[j] != 0.0:
                    v = s + f.shift - 3.0 * (j + 1)
                    vals += row[j] * f.basis.norm_const * kernels.bump_values(v, 3)
    return vals


def sobolev_norm(f: L2Element, m: int, scale: ScaleStructure) -> float:
    """Weighted Sobolev norm at level ``m``.

    Frame elements use analytic derivatives; grid elements use second-order
    central differences on their own grid.
    """
    if m < 0:
        raise ValueError("level must be nonnegative")
    if m > scale.max_level:
        raise ValueError(f"level {m} above cap {scale.max_level}")
    scale.delta(m)
    if isinstance(f, ZeroElement):
        return 0.0
    if isinstance(f, L2Sum):
        parts = f.parts
    else:
        parts = (f,)
    total = 0.0
    if all(isinstance(p, FrameElement) for p in parts):
        lo = min(p.support()[0] for p in parts)
        hi = max(p.support()[1] for p in parts)
        if not np.isfinite(lo) or hi <= lo:
            return 0.0
        s, w = composite_grid(lo, hi, parts[0].basis.nodes_per_unit)
        wgt = scale.weight(m, s)
        for order in range(m + 1):
            vals = np.zeros_like(s)
            for p in parts:
                vals += _frame_derivative_values(p, s, order)
            total += float(np.sum(w * wgt * vals * vals))
        return float(np.sqrt(total))
    if isinstance(f, GridElement):
        s = f.positions()
        wgt = scale.weight(m, s)
        vals = f.samples
        h = f.spacing
        for order in range(m + 1):
            total += simpson(wgt * vals * vals, h)
            if order < m:
                vals = np.gradient(vals, h, edge_order=2)
        return float(np.sqrt(total))
    raise TypeError(f"unsupported element {type(f).__name__}")
