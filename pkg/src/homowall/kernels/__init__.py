"""Hot kernels with a compiled implementation and a pure-Python fallback.

The compiled module is used when it imports; setting ``HOMOWALL_PURE_PYTHON=1``
forces the fallback. ``BACKEND`` names the implementation in use.
"""

from __future__ import annotations

import os

from . import _flood_py

if os.environ.get("HOMOWALL_PURE_PYTHON") == "1":
    label_faces = _flood_py.label_faces
    BACKEND = "python"
else:
    try:
        from ._flood import label_faces
    except ImportError:
        label_faces = _flood_py.label_faces
        BACKEND = "python"
    else:
        BACKEND = "cython"

__all__ = ["BACKEND", "label_faces"]
