"""Kernel backend selection.

The compiled extension is preferred when importable; otherwise the NumPy
fallback is used.  Set HARDYZ_KERNELS=python (or =compiled) to force a
backend; forcing `compiled` when the extension is missing raises at import
so that benchmarks cannot silently measure the wrong thing.
"""

import os

from . import pykernels

_choice = os.environ.get("HARDYZ_KERNELS", "").strip().lower()

if _choice == "python":
    _impl = pykernels
elif _choice == "compiled":
    from . import _ckernels as _impl  # noqa: F401  (ImportError is the point)
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = pykernels

BACKEND = _impl.BACKEND
power_log_sums = _impl.power_log_sums
sieve_tables = _impl.sieve_tables

__all__ = ["BACKEND", "power_log_sums", "sieve_tables", "pykernels"]
