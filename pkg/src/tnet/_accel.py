"""Backend selection for the hot kernels.

Kernels exist in two flavours: loop code compiled with numba ``@njit`` and a
vectorised numpy fallback. ``TNET_DISABLE_JIT=1`` (or numba being absent)
selects the numpy path at import; :func:`set_backend` switches at runtime,
which the tests and the benchmark use to run both paths side by side.
"""

import os

try:
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    HAVE_NUMBA = False
    _numba_njit = None


def _env_disabled():
    return os.environ.get("TNET_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes", "on"}


_backend = "numba" if HAVE_NUMBA and not _env_disabled() else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise a no-op decorator.

    Compilation is lazy, so defining jitted kernels costs nothing when the
    numpy backend is active.
    """
    if HAVE_NUMBA:
        return _numba_njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def backend():
    return _backend


def set_backend(name):
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    previous = _backend
    _backend = name
    return previous
