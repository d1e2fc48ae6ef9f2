"""Kernel dispatch: the compiled extension if it was built, else pure Python.

Set ``WSINGLET_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
if os.environ.get("WSINGLET_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

bareiss_rank = _impl.bareiss_rank
vandermonde_power_coeff = _impl.vandermonde_power_coeff

__all__ = ["BACKEND", "bareiss_rank", "vandermonde_power_coeff"]
