"""Numba-jitted kernels. Loop-level twins of the reference code in ``_ref``.

fastmath is left off so both backends produce the same floating-point
results up to ordering noise.
"""

import numpy as np
from numba import njit

_EDGE = 1e-8


@njit(cache=True)
def _bump_scalar(v: float, order: int) -> float:
    u = 1.0 - v * v
    if u <= _EDGE:
        return 0.0
    e = np.exp(-1.0 / u)
    if order == 0:
        return e
    g1 = -2.0 * v / u**2
    if order == 1:
        return g1 * e
    g2 = -2.0 / u**2 - 8.0 * v * v / u**3
    if order == 2:
        return (g2 + g1 * g1) * e
    g3 = -24.0 * v / u**3 - 48.0 * v**3 / u**4
    return (g3 + 3.0 * g1 * g2 + g1**3) * e


@njit(cache=True)
def bump_values(v: np.ndarray, order: int) -> np.ndarray:
    out = np.empty_like(v)
    for i in range(v.shape[0]):
        out[i] = _bump_scalar(v[i], order)
    return out


@njit(cache=True)
def pair_quad(p: int, q: int, delta: float, x0: np.ndarray, w0: np.ndarray,
              cc: float) -> float:
    lo = max(-1.0, -1.0 - delta)
    hi = min(1.0, 1.0 - delta)
    if not hi > lo:
        return 0.0
    length = hi - lo
    nsub = 1 if length <= 1.0 else 2
    total = 0.0
    for i in range(nsub):
        a = lo + length * i / nsub
        b = lo + length * (i + 1) / nsub
        hw = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        for m in range(x0.shape[0]):
            u = hw * x0[m] + mid
            total += hw * w0[m] * _bump_scalar(u, p) * _bump_scalar(u + delta, q)
    return cc * total


@njit(cache=True)
def frame_inner_cross(c1: np.ndarray, c2: np.ndarray, ds: float,
                      x0: np.ndarray, w0: np.ndarray, cc: float) -> float:
    k1 = c1.shape[1]
    k2 = c2.shape[1]
    total = 0.0
    for i in range(k1):
        for j in range(k2):
            d = ds + 3.0 * (i - j)
            if d <= -2.0 or d >= 2.0:
                continue
            for p in range(3):
                a = c1[p, i]
                if a == 0.0:
                    continue
                for q in range(3):
                    b = c2[q, j]
                    if b == 0.0:
                        continue
                    total += a * b * pair_quad(p, q, d, x0, w0, cc)
    return total


@njit(cache=True)
def frame_eval(coeffs: np.ndarray, shift: float, s: np.ndarray,
               norm_c: float) -> np.ndarray:
    out = np.zeros_like(s)
    for i in range(s.shape[0]):
        acc = 0.0
        for j in range(coeffs.shape[1]):
            v = s[i] + shift - 3.0 * (j + 1)
            for d in range(coeffs.shape[0]):
                if coeffs[d, j] != 0.0:
                    acc += coeffs[d, j] * _bump_scalar(v, d)
        out[i] = norm_c * acc
    return out
