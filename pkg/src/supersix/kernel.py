"""Kernel backend selection.

The compiled extension (supersix._kernel, built from _kernel.pyx) and the
pure-Python module (_kernel_py) expose the same three primitives with
identical results; the compiled one is just faster. Selection order:

  1. SUPERSIX_PURE=1 forces the pure-Python kernel,
  2. otherwise the compiled extension when it imported cleanly,
  3. otherwise the pure fallback.

`benchmarks/bench_kernel.py` measures the difference.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("SUPERSIX_PURE", "") not in ("", "0"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

BACKEND: str = _impl.BACKEND
bareiss_solve = _impl.bareiss_solve
bareiss_solve_many = _impl.bareiss_solve_many
gray_sweep = _impl.gray_sweep

__all__ = ["BACKEND", "bareiss_solve", "bareiss_solve_many", "gray_sweep"]
