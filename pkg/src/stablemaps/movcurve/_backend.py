"""Pick the compiled kernels when available, else the numpy twin.

Set ``STABLEMAPS_PURE_PYTHON=1`` to force the numpy implementation.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
rref_modp = _kernels_py.rref_modp
dual_rref_modp = _kernels_py.dual_rref_modp
det_modp = _kernels_py.det_modp

if os.environ.get("STABLEMAPS_PURE_PYTHON", "").strip().lower() not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        rref_modp = _compiled.rref_modp
        dual_rref_modp = _compiled.dual_rref_modp
        det_modp = _compiled.det_modp


def kernels(name: str | None = None):
    """Return ``(rref_modp, dual_rref_modp, det_modp)`` for ``name`` (default: active)."""
    if name in (None, BACKEND):
        return rref_modp, dual_rref_modp, det_modp
    if name == "python":
        return _kernels_py.rref_modp, _kernels_py.dual_rref_modp, _kernels_py.det_modp
    if name == "cython":
        from . import _kernels as compiled
        return compiled.rref_modp, compiled.dual_rref_modp, compiled.det_modp
    raise ValueError(f"unknown backend {name!r}")
