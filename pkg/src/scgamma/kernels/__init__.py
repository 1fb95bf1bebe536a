"""Backend dispatch for the quadrature kernels.

The jitted backend is the default. Set ``SCGAMMA_DISABLE_NUMBA=1`` to force
the pure-numpy path (used by the benchmark and as a fallback when numba is
unavailable).
"""

import os

BACKEND = "numpy"

if not os.environ.get("SCGAMMA_DISABLE_NUMBA"):
    try:
        from ._jit import bump_values, frame_eval, frame_inner_cross, pair_quad

        BACKEND = "numba"
    except ImportError:
        pass

if BACKEND == "numpy":
    from ._ref import bump_values, frame_eval, frame_inner_cross, pair_quad

__all__ = ["BACKEND", "bump_values", "frame_eval", "frame_inner_cross", "pair_quad"]
