"""Kernel backend selection.

Hot numeric kernels (erf/erf_inv and the sawtooth Fourier series) exist twice:
a numba-compiled version and a pure-numpy version with identical signatures.
The env var ``DISTEST_NUMBA`` picks the backend:

* unset or ``auto`` -- numba if it imports, numpy otherwise;
* ``1`` -- require numba (ImportError propagates);
* ``0`` -- force the numpy fallback.

``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os
from types import ModuleType

_kernels: ModuleType | None = None


def backend_choice() -> str:
    return os.environ.get("DISTEST_NUMBA", "auto").strip().lower()


def kernels() -> ModuleType:
    """Return the active kernel module (memoized)."""
    global _kernels
    if _kernels is None:
        _kernels = _load()
    return _kernels


def backend_name() -> str:
    return kernels().BACKEND


def _load() -> ModuleType:
    choice = backend_choice()
    if choice in ("0", "off", "numpy", "false"):
        from . import _kernels_numpy

        return _kernels_numpy
    if choice in ("1", "on", "numba", "true"):
        from . import _kernels_numba

        return _kernels_numba
    try:
        from . import _kernels_numba

        return _kernels_numba
    except ImportError:
        from . import _kernels_numpy

        return _kernels_numpy
