"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The backend is chosen once at import time. Set ``CROWNS_DISABLE_NUMBA=1`` to
force the numpy path; it is also used automatically when numba cannot be
imported. Both backends expose the same functions:

``sn_sum(n)``
    The polygon self-interaction constant.
``twisted_sums(n, a)``
    ``(C12, C21, C12', C21', g2)`` at one radius, compensated summation in
    descending magnitude order.
``twisted_grid(n, grid, full)``
    The same sums over an array of radii (first two rows only unless ``full``).
``cjl_sum(n, aj, al, delta)``
    General ring coefficient, with the smallest denominator and its index.
``pair_accel(x, y, mass)``
    Direct pairwise Newtonian accelerations and the closest pair.
"""

import os

from . import _numpy

_FLAG = "CROWNS_DISABLE_NUMBA"


def _numba_requested():
    return os.environ.get(_FLAG, "").strip().lower() not in {"1", "true", "yes", "on"}


if _numba_requested():
    try:
        from . import _jit as _backend
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _backend = _numpy
        BACKEND = "numpy"
else:
    _backend = _numpy
    BACKEND = "numpy"

sn_sum = _backend.sn_sum
twisted_sums = _backend.twisted_sums
twisted_grid = _backend.twisted_grid
cjl_sum = _backend.cjl_sum
pair_accel = _backend.pair_accel

__all__ = ["BACKEND", "sn_sum", "twisted_sums", "twisted_grid", "cjl_sum", "pair_accel"]
