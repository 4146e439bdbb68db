"""Backend selection for the hot loops.

The Cython extension is used when it was built; set ``HARDYLAB_PURE_PYTHON=1``
to force the NumPy fallback.
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("HARDYLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels


def lorentz_step_sum(desc, mu, p, q):
    return float(_impl.lorentz_step_sum(np.ascontiguousarray(desc, dtype=float), float(mu), float(p), float(q)))


def lorentz_step_sup(desc, mu, p):
    return float(_impl.lorentz_step_sup(np.ascontiguousarray(desc, dtype=float), float(mu), float(p)))


def running_max_abs(acc, z):
    """In-place ``acc = max(acc, |z|)`` on flat contiguous arrays."""
    _impl.running_max_abs(acc, np.ascontiguousarray(z, dtype=complex).ravel())
