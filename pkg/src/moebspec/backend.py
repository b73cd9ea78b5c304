"""Kernel backend selection.

The hot per-face and per-point loops exist twice: jitted with numba in
``_kernels_numba`` and vectorized with numpy in ``_kernels_numpy``.  The
environment variable ``MOEBSPEC_BACKEND`` picks one at import time:

* ``numba``  -- force the jitted kernels (error if numba is missing),
* ``numpy``  -- force the pure-numpy fallback,
* unset      -- numba when importable, numpy otherwise.

Both paths are deterministic; they differ only in summation order at the
last few ulps.  ``benchmarks/bench_kernels.py`` compares their speed.
"""

import os

ENV_VAR = "MOEBSPEC_BACKEND"
_CHOICES = ("numba", "numpy")


def numba_available():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def select_backend(requested=None):
    """Resolve the backend name, reading the env var when not given."""
    if requested is None:
        requested = os.environ.get(ENV_VAR, "").strip().lower()
    if requested not in ("",) + _CHOICES:
        raise ValueError(
            f"{ENV_VAR} must be one of {_CHOICES}, got {requested!r}"
        )
    if requested == "numpy":
        return "numpy"
    if requested == "numba":
        if not numba_available():
            raise ImportError(
                f"{ENV_VAR}=numba requested but numba is not importable"
            )
        return "numba"
    return "numba" if numba_available() else "numpy"


BACKEND = select_backend()
