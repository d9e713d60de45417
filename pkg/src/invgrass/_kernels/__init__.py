"""Mod-p kernels for the finite-field oracle.

The compiled extension is used when it was built; otherwise (or when
``INVGRASS_PURE_PYTHON`` is set) the pure-Python implementation is used.
Both expose the same functions.
"""

import os

from . import _pyimpl

if os.environ.get("INVGRASS_PURE_PYTHON"):
    _impl = _pyimpl
else:
    try:
        from . import _cimpl as _impl
    except ImportError:
        _impl = _pyimpl

BACKEND = "cython" if _impl is not _pyimpl else "python"

rref_mod = _impl.rref_mod
reduce_mod = _impl.reduce_mod
is_invariant_mod = _impl.is_invariant_mod
plucker_mod = _impl.plucker_mod

__all__ = ["BACKEND", "rref_mod", "reduce_mod", "is_invariant_mod", "plucker_mod"]
