"""Backend selection for the search kernels.

The compiled module is used when it was built; otherwise, or when the
environment variable ``FRAISSE_PURE`` is set to a non-empty value, the
pure-Python implementation is used.  ``BACKEND`` names the active one.
"""
import os

from . import _kernels_py

if os.environ.get("FRAISSE_PURE"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

extend_maps = _impl.extend_maps
canonical_code = _impl.canonical_code

__all__ = ["BACKEND", "extend_maps", "canonical_code", "_kernels_py"]
