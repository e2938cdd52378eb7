"""Selects the Smith normal form kernel at import time.

The compiled int64 kernel is used when it was built and the input fits; any
overflow (on input or mid-computation) transparently re-runs the pure-Python
kernel on Python ints.  Set ``KKCALC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from kkcalc._snf_py import snf_kernel as pure_snf_kernel

try:
    from kkcalc._snf_ext import snf_kernel as compiled_snf_kernel
except ImportError:  # extension not built
    compiled_snf_kernel = None

_FORCE_PURE = bool(os.environ.get("KKCALC_PURE_PYTHON"))


def backend():
    """Name of the kernel that will be tried first: ``"compiled"`` or ``"python"``."""
    if compiled_snf_kernel is not None and not _FORCE_PURE:
        return "compiled"
    return "python"


def snf_kernel(a, m, n):
    if compiled_snf_kernel is not None and not _FORCE_PURE:
        try:
            return compiled_snf_kernel(a, m, n)
        except OverflowError:
            pass
    return pure_snf_kernel(a, m, n)
