"""Hot kernels with a compiled backend and a numpy fallback.

The compiled extension is used when it imports; set ``BGPH_PURE_PYTHON=1``
to force the numpy implementation.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("BGPH_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        _impl = _ckernels
        BACKEND = "cython"

rref = _impl.rref
boundary_matrix = _impl.boundary_matrix
subset_diameters = _impl.subset_diameters


def backends():
    """Available backend modules keyed by name."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out


__all__ = ["BACKEND", "backends", "boundary_matrix", "rref", "subset_diameters"]
