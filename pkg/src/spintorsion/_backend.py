"""Select the compiled kernels when available, else the NumPy fallback.

Set ``SPINTORSION_PURE=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
gauss_matmul = _kernels_py.gauss_matmul
monomial_chain = _kernels_py.monomial_chain

if os.environ.get("SPINTORSION_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        gauss_matmul = _kernels.gauss_matmul
        monomial_chain = _kernels.monomial_chain
