"""Pick the compiled kernels when they were built, the pure ones otherwise.

Set ``SUBCUBIC_PACKING_PURE=1`` to force the pure-Python versions.
"""

import os

if os.environ.get("SUBCUBIC_PACKING_PURE", "") not in ("", "0"):
    from ._kernels_py import extend_coloring, minimal_rows

    BACKEND = "python"
else:
    try:
        from ._kernels import extend_coloring, minimal_rows

        BACKEND = "compiled"
    except ImportError:  # extension not built
        from ._kernels_py import extend_coloring, minimal_rows

        BACKEND = "python"

__all__ = ["BACKEND", "extend_coloring", "minimal_rows"]
