"""Backend selection for the optimizer's hot loops.

The compiled extension is used when importable; set
``FINGERPRINT_LAB_PURE_PYTHON=1`` to force the numpy fallback.
"""

import os

from . import _kernels_py


def _load_compiled():
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


_compiled = _load_compiled()

if _compiled is not None and not os.environ.get("FINGERPRINT_LAB_PURE_PYTHON"):
    _impl = _compiled
else:
    _impl = _kernels_py

BACKEND = _impl.BACKEND
overlap_gram = _impl.overlap_gram
smooth_value_grad = _impl.smooth_value_grad


def available_backends():
    """Map of backend name to kernel module, compiled first when present."""
    out = {}
    if _compiled is not None:
        out[_compiled.BACKEND] = _compiled
    out[_kernels_py.BACKEND] = _kernels_py
    return out
