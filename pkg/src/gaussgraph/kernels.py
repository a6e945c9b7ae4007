"""Hot block kernels, compiled when available.

The compiled extension is used unless it failed to build or the environment
variable ``GAUSSGRAPH_PURE_PYTHON`` is set to a non-empty value other than
``0``. ``BACKEND`` names the implementation in use.
"""

import os

from . import _kernels_py

_force_python = os.environ.get("GAUSSGRAPH_PURE_PYTHON", "") not in ("", "0")

try:
    if _force_python:
        raise ImportError("pure-python backend requested")
    from . import _kernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

block_determinants = _impl.block_determinants
block_norms = _impl.block_norms
apply_local = _impl.apply_local
qq_correlations = _impl.qq_correlations

__all__ = ["BACKEND", "block_determinants", "block_norms", "apply_local", "qq_correlations"]
