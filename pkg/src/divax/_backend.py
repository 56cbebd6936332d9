"""Kernel backend selection.

The compiled extension is used when it imports; ``DIVAX_BACKEND=python``
forces the pure-Python kernels.
"""
import os

from . import _pykernels

BACKEND = "python"
kernels = _pykernels

if os.environ.get("DIVAX_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        kernels = _compiled
        BACKEND = "compiled"

__all__ = ["BACKEND", "kernels"]
