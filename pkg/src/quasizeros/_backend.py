"""Kernel backend selection.

The compiled Cython kernels are preferred when importable; the pure-Python
twin is the fallback.  QUASIZEROS_PURE_PYTHON=1 forces the fallback (used by
the backend-parity tests and the benchmark).
"""

import os

if os.environ.get("QUASIZEROS_PURE_PYTHON") == "1":
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "python"


def backend_name():
    """Which kernel backend is active: 'compiled' or 'python'."""
    return BACKEND
