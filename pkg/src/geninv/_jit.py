"""Optional numba acceleration.

Set ``GENINV_DISABLE_JIT=1`` to force the pure-numpy kernels even when
numba is importable.
"""

from __future__ import annotations

import os

ENV_FLAG = "GENINV_DISABLE_JIT"

try:
    import numba as _nb

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a soft dependency
    _nb = None
    HAVE_NUMBA = False


def jit_disabled_by_env() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


USE_JIT = HAVE_NUMBA and not jit_disabled_by_env()


def njit(*args, **kwargs):
    if HAVE_NUMBA:
        return _nb.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func
