"""Pick the compiled kernels when importable, else the pure-Python ones."""
import os

from . import _pykernels

if os.environ.get("APML_PURE", "") not in ("", "0"):
    _kernels = _pykernels
else:
    try:
        from . import _ckernels as _kernels
    except ImportError:
        _kernels = _pykernels

BACKEND = "cython" if _kernels is not _pykernels else "python"
kernels = _kernels
