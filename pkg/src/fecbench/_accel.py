"""Kernel backend selection.

Hot decoder loops are compiled with numba by default. Setting the
environment variable ``FECBENCH_BACKEND=numpy`` (before import) selects the
plain numpy/Python fallback, which runs the identical kernel source
uncompiled. ``benchmarks/bench_backends.py`` compares the two.
"""

import os

_requested = os.environ.get("FECBENCH_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(
        f"FECBENCH_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

USE_NUMBA = _requested == "numba"

if USE_NUMBA:
    try:
        from numba import njit as _numba_njit
    except ImportError:  # numba missing: silently fall back
        USE_NUMBA = False

BACKEND = "numba" if USE_NUMBA else "numpy"

if USE_NUMBA:

    def njit(fn):
        # cache=True keeps compiled kernels on disk so campaign worker
        # processes do not re-JIT. fastmath stays off: decoder decisions
        # must not depend on FP reassociation.
        return _numba_njit(cache=True)(fn)

else:

    def njit(fn):
        fn.py_func = fn
        return fn
