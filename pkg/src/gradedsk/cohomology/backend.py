"""Backend selection for the lattice kernels.

GRADEDSK_BACKEND=numba  force numba-jitted kernels (error if unavailable)
GRADEDSK_BACKEND=numpy  force the pure-numpy path
GRADEDSK_BACKEND=auto   numba when importable, numpy otherwise (default)

Both paths share the kernel source in _kernels.py; the two inner helpers
(`_dot_rows`, `_argmin_nonzero`) are bound per backend -- loop bodies that
numba compiles, matmul/argmin expressions for numpy.  The kernel functions
are recompiled with the chosen helper globals so internal calls bind to
the right implementations.  `benchmarks/bench_backends.py` compares them.
"""

import os
import types

import numpy as np

from . import _kernels as _src

_MODE = os.environ.get("GRADEDSK_BACKEND", "auto").lower()
if _MODE not in ("auto", "numba", "numpy"):
    raise RuntimeError("GRADEDSK_BACKEND must be auto, numba, or numpy")

BACKEND = "numpy"

if _MODE in ("auto", "numba"):
    try:
        import numba

        BACKEND = "numba"
    except ImportError:
        if _MODE == "numba":
            raise
        BACKEND = "numpy"


def _rebind(fn, globs):
    raw = types.FunctionType(fn.__code__, globs, fn.__name__, fn.__defaults__)
    raw.__module__ = fn.__module__
    return raw


def _np_dot_rows(mat, vec):
    return mat @ vec


def _np_argmin_nonzero(vec):
    nz = np.nonzero(vec)[0]
    if nz.size == 0:
        return -1
    return int(nz[np.argmin(vec[nz])])


if BACKEND == "numba":
    # no on-disk cache: the kernels are re-bound to jitted globals at import,
    # which the cache loader cannot reconstruct
    _jit = numba.njit(cache=False, nogil=True)
    _ext_gcd = _jit(_src._ext_gcd)
    _dot_rows = _jit(_src._dot_rows)
    _argmin_nonzero = _jit(_src._argmin_nonzero)
    _helpers = {
        "np": np,
        "_ext_gcd": _ext_gcd,
        "_dot_rows": _dot_rows,
        "_argmin_nonzero": _argmin_nonzero,
    }

    def _compile(fn, extra=None):
        globs = dict(_helpers)
        if extra:
            globs.update(extra)
        return _jit(_rebind(fn, globs))

else:
    _ext_gcd = _src._ext_gcd
    _helpers = {
        "np": np,
        "_ext_gcd": _src._ext_gcd,
        "_dot_rows": _np_dot_rows,
        "_argmin_nonzero": _np_argmin_nonzero,
    }

    def _compile(fn, extra=None):
        globs = dict(_helpers)
        if extra:
            globs.update(extra)
        return _rebind(fn, globs)


hermite_mod = _compile(_src.hermite_mod)
lattice_contains = _compile(_src.lattice_contains)
kernel_mod = _compile(_src.kernel_mod, {"hermite_mod": hermite_mod})
snf_mod = _compile(_src.snf_mod)
closure_subgroup = _compile(_src.closure_subgroup)
ravel_elements = _compile(_src.ravel_elements)
min_coset_keys = _compile(_src.min_coset_keys)
