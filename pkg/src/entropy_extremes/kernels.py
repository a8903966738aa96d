"""Hot kernels, dispatched to the compiled core when it is importable.

Set ``ENTROPY_EXTREMES_PURE=1`` to force the numpy implementation.
``BACKEND`` names the active one.
"""
import os

from . import _pykernels

if os.environ.get("ENTROPY_EXTREMES_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

h_v = _impl.h_v
h_w = _impl.h_w
norm_v = _impl.norm_v
norm_w = _impl.norm_w
inv_h_v = _impl.inv_h_v
inv_h_w = _impl.inv_h_w
inv_norm_v = _impl.inv_norm_v
inv_norm_w = _impl.inv_norm_w
entropy_rows = _impl.entropy_rows
norm_rows = _impl.norm_rows

__all__ = [
    "BACKEND", "h_v", "h_w", "norm_v", "norm_w", "inv_h_v", "inv_h_w",
    "inv_norm_v", "inv_norm_w", "entropy_rows", "norm_rows",
]
