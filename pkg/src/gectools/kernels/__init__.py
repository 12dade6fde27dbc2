"""Character distance kernels with a compiled fast path.

Importing this module picks the compiled backend when it is available and
silently falls back to the pure-Python one otherwise.  Setting the
environment variable GECTOOLS_PURE to a non-empty value forces the pure
backend regardless.
"""

import os

if os.environ.get("GECTOOLS_PURE"):
    from gectools.kernels import _pure as _impl

    BACKEND = "python"
else:
    try:
        from gectools.kernels import _fast as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from gectools.kernels import _pure as _impl

        BACKEND = "python"

dl_distance = _impl.dl_distance
lcs_length = _impl.lcs_length
scan_distances = _impl.scan_distances

__all__ = ["BACKEND", "dl_distance", "lcs_length", "scan_distances"]
