"""Backend selection for the modular linear-algebra kernels.

The compiled extension is used when it has been built; setting
``COXHECKE_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _kernels_py

if os.environ.get("COXHECKE_PURE_PYTHON") == "1":
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _kernels_py

rref_mod_p = _impl.rref_mod_p
matmul_mod_p = _impl.matmul_mod_p
