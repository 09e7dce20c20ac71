"""Runtime configuration: kernel backend selection and resource guards."""

import os

try:
    import numba  # noqa: F401
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

#: enumeration-based operations refuse n above this unless overridden
DEFAULT_BRUTE_FORCE_LIMIT = 8

#: permutation-scan operations refuse n above this
PERM_SCAN_LIMIT = 10

#: generating-tree DP refuses lengths above this (memory guard)
DEFAULT_DP_MAX_TERMS = 2000

_env = os.environ.get("NLPOSETS_BACKEND", "").strip().lower()
if _env in ("numba", "numpy"):
    _backend = _env
elif _env:
    raise RuntimeError(
        "NLPOSETS_BACKEND must be 'numba' or 'numpy', got %r" % _env)
else:
    _backend = "numba" if HAS_NUMBA else "numpy"

if _backend == "numba" and not HAS_NUMBA:
    raise RuntimeError("NLPOSETS_BACKEND=numba but numba is not importable")


def active_backend():
    """Return the kernel backend in use, 'numba' or 'numpy'."""
    return _backend


def set_backend(name):
    """Override the kernel backend ('numba' or 'numpy'). Mainly for tests."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError("backend must be 'numba' or 'numpy', got %r" % name)
    if name == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    _backend = name


class ResourceGuardError(RuntimeError):
    """Raised when an operation would exceed a configured resource limit."""
