"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``MPCS_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _purepy

if os.environ.get("MPCS_PURE_PYTHON", "") not in ("", "0"):
    kernels = _purepy
    NAME = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        NAME = "cython"
    except ImportError:
        kernels = _purepy
        NAME = "python"

__all__ = ["kernels", "NAME"]
