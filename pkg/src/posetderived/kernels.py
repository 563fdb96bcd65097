"""Select the modular elimination backend at import time.

The compiled extension is used when it was built and importable; setting
``POSETDERIVED_PURE=1`` forces the pure-Python fallback.  ``BACKEND``
names the active choice.
"""

import os

from . import _kernels_py

_MAX_COMPILED_MODULUS = 2**31

_compiled = None
if not os.environ.get("POSETDERIVED_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _pick(p):
    if _compiled is not None and p < _MAX_COMPILED_MODULUS:
        return _compiled
    return _kernels_py


def rref_mod_p(rows, ncols, p):
    return _pick(p).rref_mod_p(rows, ncols, p)


def rank_mod_p(rows, ncols, p):
    return _pick(p).rank_mod_p(rows, ncols, p)


def matmul_mod_p(A, B, p):
    return _pick(p).matmul_mod_p(A, B, p)
