"""Kernel backend selection.

The hot inner loops (binding accumulation, direct circular operators,
wrapped-diagonal compressions) exist twice: a Cython extension
(:mod:`bindsum._ckernels`) and a pure-NumPy fallback
(:mod:`bindsum._kernels_py`). The compiled version is preferred when it
imported successfully; set ``BINDSUM_KERNELS=python`` to force the fallback
or ``BINDSUM_KERNELS=compiled`` to fail loudly when the extension is
missing. ``benchmarks/kernel_bench.py`` compares the two.

All kernels take C-contiguous float64 arrays; the wrappers below coerce.
Complex payloads (phasor codes) never reach this module -- callers route
them through NumPy expressions directly.
"""

import os

import numpy as np

from . import _kernels_py

_requested = os.environ.get("BINDSUM_KERNELS", "auto").strip().lower()
if _requested not in ("auto", "compiled", "python"):
    raise ValueError(
        f"BINDSUM_KERNELS must be 'auto', 'compiled' or 'python', got {_requested!r}"
    )

_impl = None
if _requested in ("auto", "compiled"):
    try:
        from . import _ckernels as _impl
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "BINDSUM_KERNELS=compiled but the bindsum._ckernels extension is "
                "not built; install with `pip install -e . --no-build-isolation`"
            )
if _impl is None:
    _impl = _kernels_py

#: Name of the active backend: "compiled" or "python".
BACKEND = "compiled" if _impl is not _kernels_py else "python"


def _c2(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def _c1(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def sum_outer(dom, cod):
    return _impl.sum_outer(_c2(dom), _c2(cod))


def sum_hadamard(dom, cod):
    return _impl.sum_hadamard(_c2(dom), _c2(cod))


def circ_convolve(a, b):
    return _impl.circ_convolve(_c1(a), _c1(b))


def circ_correlate(a, b):
    return _impl.circ_correlate(_c1(a), _c1(b))


def conv_diag_sums(mat):
    return _impl.conv_diag_sums(_c2(mat))


def corr_diag_sums(mat):
    return _impl.corr_diag_sums(_c2(mat))
