"""Seeded random generators for points, tangent vectors, and raw fibers.

Everything is driven by a numpy Generator so a suite seed fully determines
the sampled data.
"""

from __future__ import annotations

import numpy as np

from .gamma import AmbientVector, GammaPoint, GammaSpec, TangentVector, gamma_point
from .l2 import FrameElement, GridElement, frame_element


def random_gamma_point(spec: GammaSpec, rng: np.random.Generator,
                       t_range=(0.05, 2.0), negative: bool = False,
                       x_scale: float = 1.0, f_scale: float = 1.0) -> GammaPoint:
    t = float(rng.uniform(*t_range))
    if negative:
        t = -t
        return gamma_point(spec, x_scale * rng.standard_normal(spec.n), t)
    return gamma_point(spec, x_scale * rng.standard_normal(spec.n), t,
                       f_scale * rng.standard_normal(spec.k))


def random_tangent(spec: GammaSpec, rng: np.random.Generator, p: GammaPoint,
                   scale: float = 1.0) -> TangentVector:
    df = scale * rng.standard_normal(spec.k) if p.t > 0.0 else np.zeros(spec.k)
    return TangentVector(scale * rng.standard_normal(spec.n),
                         scale * float(rng.standard_normal()), df)


def random_raw_fiber(spec: GammaSpec, rng: np.random.Generator,
                     t_range=(0.3, 2.0), with_derivative_row: bool = True,
                     scale: float = 1.0) -> FrameElement:
    t = float(rng.uniform(*t_range))
    dot = scale * rng.standard_normal(spec.k) if with_derivative_row else None
    return frame_element(spec.basis, t=t, gamma=scale * rng.standard_normal(spec.k),
                         gamma_dot=dot)


def random_grid_fiber(spec: GammaSpec, rng: np.random.Generator,
                      spacing: float = 1.0 / 512.0) -> GridElement:
    # smooth compactly supported content over the unshifted bump region
    lo, hi = 1.0, 3.0 * spec.k + 2.0
    n = int(np.ceil((hi - lo) / spacing)) + 1
    s = np.linspace(lo, hi, n)
    amps = rng.standard_normal(3)
    freqs = rng.uniform(0.3, 2.0, size=3)
    vals = sum(a * np.sin(2.0 * np.pi * f * s) for a, f in zip(amps, freqs))
    window = np.sin(np.pi * (s - lo) / (hi - lo)) ** 2
    return GridElement(lo, hi, vals * window)


def random_raw_ambient(spec: GammaSpec, rng: np.random.Generator, t: float,
                       scale: float = 1.0) -> AmbientVector:
    """Raw ambient direction whose fiber lives on the frame at parameter t."""
    fib = frame_element(spec.basis, t=t, gamma=scale * rng.standard_normal(spec.k),
                        gamma_dot=scale * rng.standard_normal(spec.k))
    return AmbientVector(scale * rng.standard_normal(spec.n),
                         scale * float(rng.standard_normal()), fib)
