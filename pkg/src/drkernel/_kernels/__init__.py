"""Hot numerical kernels with a compiled core and a pure-numpy fallback.

The compiled extension (`drkernel._kernels._core`, built from Cython) is
used when importable; otherwise the numpy implementations take over.  Set
``DRKERNEL_BACKEND=python`` or ``DRKERNEL_BACKEND=compiled`` to force a
choice (forcing ``compiled`` raises if the extension is missing).
"""

import os

from . import _fallback

_choice = os.environ.get("DRKERNEL_BACKEND", "auto").strip().lower()

if _choice in ("auto", "", "compiled"):
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "DRKERNEL_BACKEND=compiled but drkernel._kernels._core is not built"
            )
        _impl = _fallback
        BACKEND = "python"
elif _choice == "python":
    _impl = _fallback
    BACKEND = "python"
else:
    raise ValueError(f"unknown DRKERNEL_BACKEND value: {_choice!r}")

busemann_batch = _impl.busemann_batch
jacobi_eigh = _impl.jacobi_eigh

__all__ = ["BACKEND", "busemann_batch", "jacobi_eigh"]
