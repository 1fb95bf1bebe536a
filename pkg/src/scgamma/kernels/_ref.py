"""Pure-numpy reference implementations of the hot kernels.

Same signatures as the jitted versions in ``_jit``; selected via the
``SCGAMMA_DISABLE_NUMBA`` environment variable.
"""

import numpy as np

# Smallest 1 - v^2 for which the mollifier is evaluated; below this the
# exponential has underflowed to 0 anyway and the rational prefactors
# would overflow.
_EDGE = 1e-8


def bump_values(v: np.ndarray, order: int) -> np.ndarray:
    """Derivative of order ``order`` (0..3) of exp(-1/(1-v^2)), zero outside (-1, 1)."""
    v = np.asarray(v, dtype=np.float64)
    out = np.zeros_like(v)
    u = 1.0 - v * v
    inside = u > _EDGE
    vi = v[inside]
    ui = u[inside]
    e = np.exp(-1.0 / ui)
    if order == 0:
        out[inside] = e
        return out
    g1 = -2.0 * vi / ui**2
    if order == 1:
        out[inside] = g1 * e
        return out
    g2 = -2.0 / ui**2 - 8.0 * vi**2 / ui**3
    if order == 2:
        out[inside] = (g2 + g1 * g1) * e
        return out
    g3 = -24.0 * vi / ui**3 - 48.0 * vi**3 / ui**4
    if order == 3:
        out[inside] = (g3 + 3.0 * g1 * g2 + g1**3) * e
        return out
    raise ValueError(f"derivative order {order} not supported")


def pair_quad(p: int, q: int, delta: float, x0: np.ndarray, w0: np.ndarray,
              cc: float) -> float:
    """cc * integral of B^(p)(u) B^(q)(u + delta) over the support overlap.

    ``x0``/``w0`` are Gauss-Legendre nodes/weights on [-1, 1]; the overlap is
    split into unit-length panels so the node density stays fixed.
    """
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
        u = hw * x0 + mid
        total += hw * np.sum(w0 * bump_values(u, p) * bump_values(u + delta, q))
    return cc * total


def frame_inner_cross(c1: np.ndarray, c2: np.ndarray, ds: float,
                      x0: np.ndarray, w0: np.ndarray, cc: float) -> float:
    """Inner product of two frame elements whose translations differ by ``ds``.

    ``c1``/``c2`` have shape (3, k): rows are coefficients over the translated
    bumps, their first, and their second derivatives.
    """
    k1 = c1.shape[1]
    k2 = c2.shape[1]
    total = 0.0
    for i in range(k1):
        for j in range(k2):
            d = ds + 3.0 * (i - j)
            if not -2.0 < d < 2.0:
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


def frame_eval(coeffs: np.ndarray, shift: float, s: np.ndarray,
               norm_c: float) -> np.ndarray:
    """Evaluate sum over d, j of coeffs[d, j] * norm_c * B^(d)(s + shift - 3(j+1))."""
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros_like(s)
    for j in range(coeffs.shape[1]):
        v = s + shift - 3.0 * (j + 1)
        for d in range(coeffs.shape[0]):
            if coeffs[d, j] != 0.0:
                out += coeffs[d, j] * bump_values(v, d)
    return norm_c * out
