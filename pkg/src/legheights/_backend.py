"""Kernel backend selection.

The compiled extension is preferred when present; LEGHEIGHTS_BACKEND=py or
=c forces a choice (the latter fails loudly if the extension is missing).
"""

import os

_choice = os.environ.get("LEGHEIGHTS_BACKEND", "").lower()

if _choice in ("py", "python"):
    from . import _kernels_py as kernels
elif _choice in ("c", "cython"):
    from . import _ckernels as kernels  # type: ignore[attr-defined]
else:
    try:
        from . import _ckernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND_NAME = kernels.BACKEND_NAME
hyper_f = kernels.hyper_f
wp_pair = kernels.wp_pair
wp_grid = kernels.wp_grid
