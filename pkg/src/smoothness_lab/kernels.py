"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the NumPy fallback
is used. Setting ``SMOOTHNESS_LAB_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("SMOOTHNESS_LAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

row_lp_norms = _impl.row_lp_norms
residual_terms = _impl.residual_terms
shifted_difference_norms = _impl.shifted_difference_norms

__all__ = ["BACKEND", "row_lp_norms", "residual_terms",
           "shifted_difference_norms"]
