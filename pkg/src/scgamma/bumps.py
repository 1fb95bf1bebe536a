"""A moving frame of compactly supported mollifier bumps.

Bump ``j`` (1-based) is ``c * exp(-1/(1 - (s - 3j)^2))`` on (3j - 1, 3j + 1)
and zero elsewhere. The spacing 3 exceeds twice the halfwidth 1, so distinct
bumps have disjoint supports, and ``c`` normalizes each to unit L2 norm.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .quadrature import NODES_PER_UNIT, composite_grid, gauss_base

SPACING = 3.0
HALFWIDTH = 1.0


@lru_cache(maxsize=None)
def norm_constant(nodes_per_unit: int = NODES_PER_UNIT) -> float:
    """1/sqrt of the quadrature value of integral exp(-2/(1-v^2)) dv on (-1, 1)."""
    x, w = composite_grid(-1.0, 1.0, nodes_per_unit)
    b = kernels.bump_values(x, 0)
    return float(1.0 / np.sqrt(np.sum(w * b * b)))


@lru_cache(maxsize=None)
def same_shift_gram(nodes_per_unit: int = NODES_PER_UNIT) -> np.ndarray:
    """Gram matrix of (bump, bump', bump'') for one normalized bump.

    Off-diagonal zeros and the (0,2) entry are imposed exactly: the products
    bump*bump' and bump'*bump'' integrate an exact derivative of a compactly
    supported function, and integration by parts gives <B, B''> = -<B', B'>.
    """
    cc = norm_constant(nodes_per_unit) ** 2
    x0, w0 = gauss_base(nodes_per_unit)
    n0 = kernels.pair_quad(0, 0, 0.0, x0, w0, cc)
    n1 = kernels.pair_quad(1, 1, 0.0, x0, w0, cc)
    n2 = kernels.pair_quad(2, 2, 0.0, x0, w0, cc)
    g = np.array([
        [n0, 0.0, -n1],
        [0.0, n1, 0.0],
        [-n1, 0.0, n2],
    ])
    g.setflags(write=False)
    return g


@dataclass(frozen=True)
class BumpBasis:
    """The first ``k`` bumps, with quadrature resolution fixed at construction."""

    k: int
    nodes_per_unit: int = NODES_PER_UNIT
    halfwidth: float = field(default=HALFWIDTH, init=False)

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("bump count must be nonnegative")

    @property
    def centers(self) -> np.ndarray:
        return SPACING * np.arange(1, self.k + 1, dtype=float)

    @property
    def norm_const(self) -> float:
        return norm_constant(self.nodes_per_unit)

    @property
    def gram(self) -> np.ndarray:
        return same_shift_gram(self.nodes_per_unit)


def bump_eval(basis: BumpBasis, j: int, s, order: int = 0):
    """Evaluate bump ``j`` (or its derivative up to order 3) at ``s``.

    Smooth everywhere, identically zero outside (3j - 1, 3j + 1).
    """
    if not 1 <= j <= basis.k:
        raise IndexError(f"bump index {j} out of range 1..{basis.k}")
    scalar = np.isscalar(s)
    v = np.atleast_1d(np.asarray(s, dtype=float)) - SPACING * j
    out = basis.norm_const * kernels.bump_values(v, order)
    return float(out[0]) if scalar else out
