"""Kernel backend selection: compiled extension with pure-Python fallback.

The hot loops (per-consumer simulation steps and the coordinate sweeps of
the equilibrium solver) exist twice: as a Cython extension module
(``netlogit._kernels``) and as a pure-Python twin (``netlogit._kernels_py``)
with identical arithmetic. The compiled module is preferred when it is
importable; set ``NETLOGIT_PURE=1`` to force the fallback (used by the
backend benchmark and the equivalence tests).
"""

import os

if os.environ.get("NETLOGIT_PURE", "").strip() not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels

COMPILED = bool(kernels.COMPILED)


def backend_name():
    """Name of the active kernel backend: "compiled" or "python"."""
    return "compiled" if COMPILED else "python"
