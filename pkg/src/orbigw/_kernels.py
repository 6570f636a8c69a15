"""Selects the compiled arithmetic core when it is importable, else the
pure-Python kernels.  Set ``ORBIGW_PURE_PYTHON=1`` to force the fallback."""

import os

BACKEND = "python"

if not os.environ.get("ORBIGW_PURE_PYTHON"):
    try:
        from orbigw._ckernels import cyc_mul, poly_mul  # noqa: F401

        BACKEND = "compiled"
    except ImportError:
        pass

if BACKEND == "python":
    from orbigw._kernels_py import cyc_mul, poly_mul  # noqa: F401
