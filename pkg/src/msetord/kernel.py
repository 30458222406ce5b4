"""Select the filtering kernel backend at import time.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``MSETORD_PURE`` is set to a non-empty value, the
pure-Python module is used.  Both expose ``BACKEND``,
``compare_bound_msets`` and ``msetord_filter``.
"""
import os

from . import _kernel_py

if os.environ.get("MSETORD_PURE"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl
    except ImportError:
        _impl = _kernel_py

BACKEND = _impl.BACKEND
compare_bound_msets = _impl.compare_bound_msets
msetord_filter = _impl.msetord_filter


def backends():
    """All importable backends, keyed by name."""
    found = {"python": _kernel_py}
    try:
        from . import _kernel
    except ImportError:
        pass
    else:
        found["cython"] = _kernel
    return found
