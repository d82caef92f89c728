"""Backend selection for the elimination kernel.

The compiled module is used when it imports; set NQD_PURE_PYTHON=1 to force
the pure-Python fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
echelon = _kernels_py.echelon

if not os.environ.get("NQD_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None:
        echelon = _compiled.echelon
        BACKEND = "cython"


def backends():
    """Available kernels by name, for tests and benchmarks."""
    out = {"python": _kernels_py.echelon}
    try:
        from . import _kernels
    except ImportError:
        return out
    out["cython"] = _kernels.echelon
    return out
