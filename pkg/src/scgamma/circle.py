"""Finite Fourier paths on the circle R/Z and the time-shift map.

The time-shift (s, path) -> path(. + s) is the standard example of a map
that is differentiable in the scale sense but not Frechet differentiable at
low regularity: its candidate differential at (s0, g0) is

    (s, g) -> g0'(. + s0) s + g(. + s0),

which needs one more derivative of the base path than the increment has.
``sc1_quotient_test`` measures the difference quotient with the increment
norm taken one level above the error norm and reports whether it decays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_MODES = 64
SUP_SAMPLES = 1024


@dataclass(frozen=True, eq=False)
class CirclePath:
    """Real trigonometric polynomial a0 + sum a_m cos(2 pi m u) + b_m sin(2 pi m u).

    ``coeffs`` is the flat vector [a0, a_1..a_M, b_1..b_M]; ``level`` is the
    regularity tag the path is tracked at.
    """

    coeffs: np.ndarray
    level: int = 0

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.coeffs, dtype=float))
        if c.ndim != 1 or c.shape[0] % 2 != 1:
            raise ValueError("coefficient vector must be [a0, a_1..a_M, b_1..b_M]")
        object.__setattr__(self, "coeffs", c)

    @property
    def modes(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    def _split(self) -> tuple[float, np.ndarray, np.ndarray]:
        m = self.modes
        return self.coeffs[0], self.coeffs[1:m + 1], self.coeffs[m + 1:]

    def value(self, u, order: int = 0):
        scalar = np.isscalar(u)
        uu = np.atleast_1d(np.asarray(u, dtype=float))
        a0, am, bm = self._split()
        m = np.arange(1, self.modes + 1, dtype=float)
        for _ in range(order):
            am, bm = 2.0 * np.pi * m * bm, -2.0 * np.pi * m * am
            a0 = 0.0
        ang = 2.0 * np.pi * np.outer(uu, m)
        out = a0 + np.cos(ang) @ am + np.sin(ang) @ bm
        return float(out[0]) if scalar else out

    def derivative(self) -> "CirclePath":
        a0, am, bm = self._split()
        m = np.arange(1, self.modes + 1, dtype=float)
        return CirclePath(np.concatenate([[0.0], 2.0 * np.pi * m * bm,
                                          -2.0 * np.pi * m * am]),
                          level=max(self.level - 1, 0))

    def __add__(self, other: "CirclePath") -> "CirclePath":
        return CirclePath(self.coeffs + other.coeffs,
                          level=min(self.level, other.level))

    def __mul__(self, a: float) -> "CirclePath":
        return CirclePath(a * self.coeffs, level=self.level)

    __rmul__ = __mul__


def sup_level_norm(path: CirclePath, m: int, samples: int = SUP_SAMPLES) -> float:
    """sup |f| + sup |Df| + ... + sup |D^m f| on a uniform sample of the circle."""
    u = np.arange(samples) / samples
    return float(sum(np.max(np.abs(path.value(u, order=o))) for o in range(m + 1)))


def timeshift(s: float, path: CirclePath) -> CirclePath:
    """path(. + s); exact on Fourier coefficients, so the level is preserved."""
    a0, am, bm = path._split()
    m = np.arange(1, path.modes + 1, dtype=float)
    c = np.cos(2.0 * np.pi * m * s)
    sn = np.sin(2.0 * np.pi * m * s)
    return CirclePath(np.concatenate([[a0], am * c + bm * sn, -am * sn + bm * c]),
                      level=path.level)


def timeshift_differential(s0: float, base: CirclePath, s: float,
                           path: CirclePath) -> CirclePath:
    """The scale differential of the time-shift at (s0, base), applied to (s, path)."""
    return timeshift(s0, base.derivative()) * s + timeshift(s0, path)


def sawtooth_path(modes: int = DEFAULT_MODES) -> CirclePath:
    """Fourier truncation of the unit sawtooth: continuous, but with a
    derivative that blows up with the mode count at the corner."""
    m = np.arange(1, modes + 1, dtype=float)
    b = (-1.0) ** (m + 1.0) / (np.pi * m)
    return CirclePath(np.concatenate([np.zeros(modes + 1), b]), level=0)


def random_c2_path(rng: np.random.Generator, modes: int = DEFAULT_MODES,
                   decay: float = 4.0) -> CirclePath:
    """Random path with coefficient decay m^-decay, keeping D^2 moderate."""
    m = np.arange(1, modes + 1, dtype=float)
    a = np.concatenate([rng.normal(size=1), rng.normal(size=modes) / m**decay])
    b = rng.normal(size=modes) / m**decay
    return CirclePath(np.concatenate([a, b]), level=2)


@dataclass(frozen=True)
class QuotientReport:
    """Difference-quotient diagnostics for one base point and increment ray."""

    increments: tuple[float, ...]
    ratios: tuple[float, ...]
    order: float
    tolerance: float
    passed: bool


def sc1_quotient_test(map_fn, base: tuple[float, CirclePath], candidate,
                      increments, *, numerator_level: int = 0,
                      denominator_level: int = 1, tol: float = 1e-3,
                      samples: int = SUP_SAMPLES) -> QuotientReport:
    """Evaluate ||map(base + h) - map(base) - candidate(h)|| / ||h|| along a
    list of shrinking increments.

    The denominator norm is taken at ``denominator_level`` (1 for the scale
    quotient, 0 for the classical Frechet quotient); passing means the final
    ratio is below ``tol`` and the log-log decay rate is at least ~linear.
    """
    s0, g0 = base
    f0 = map_fn(s0, g0)
    ratios = []
    sizes = []
    for (ds, dg) in increments:
        moved = map_fn(s0 + ds, g0 + dg)
        lin = candidate(ds, dg)
        err = moved + (-1.0) * f0 + (-1.0) * lin
        num = sup_level_norm(err, numerator_level, samples)
        den = abs(ds) + sup_level_norm(dg, denominator_level, samples)
        ratios.append(num / den)
        sizes.append(den)
    logs = np.log(np.asarray(sizes))
    logr = np.log(np.maximum(np.asarray(ratios), 1e-300))
    order = float(np.polyfit(logs, logr, 1)[0]) if len(ratios) > 1 else 0.0
    passed = bool(ratios[-1] < tol and order > 0.5)
    return QuotientReport(tuple(float(s) for s in sizes),
                          tuple(float(r) for r in ratios), order, tol, passed)


def scaled_increments(direction: tuple[float, CirclePath],
                      scales) -> list[tuple[float, CirclePath]]:
    ds, dg = direction
    return [(ds * e, dg * e) for e in scales]
