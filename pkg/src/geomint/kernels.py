"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
implementation. Set ``GEOMINT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
slice_profiles = _pykernels.slice_profiles
l1_aligned = _pykernels.l1_aligned

if not os.environ.get("GEOMINT_PURE_PYTHON"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        slice_profiles = _kernels.slice_profiles
        l1_aligned = _kernels.l1_aligned

__all__ = ["BACKEND", "slice_profiles", "l1_aligned"]
