"""JIT selection for the hot kernels.

All numeric kernels in :mod:`polarstack._kernels` are written as plain
numpy/``math`` Python and decorated with :func:`njit` from this module.
By default they are compiled with numba; setting the environment variable
``POLARSTACK_NO_NUMBA=1`` (before import) keeps them as interpreted Python,
which is useful for debugging and as a dependency-light fallback.  The two
modes execute the same source, so results are identical.
"""

import os

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    _HAVE_NUMBA = False

USE_NUMBA = _HAVE_NUMBA and os.environ.get("POLARSTACK_NO_NUMBA", "0").lower() not in (
    "1",
    "true",
    "yes",
)


def njit(*args, **kwargs):
    """numba.njit when acceleration is enabled, identity decorator otherwise."""
    if USE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(func):
        return func

    return wrap
