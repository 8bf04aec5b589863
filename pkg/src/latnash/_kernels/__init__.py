"""Kernel backend selection.

The compiled extension is preferred when present; setting ``LATNASH_PURE=1``
in the environment forces the pure-Python backend (used by the benchmark
and by tests that compare the two).
"""

import os

if os.environ.get("LATNASH_PURE"):
    from latnash._kernels import pure as _impl
else:
    try:
        from latnash._kernels import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from latnash._kernels import pure as _impl

BACKEND = _impl.BACKEND

SCAN_OK = _impl.SCAN_OK
SCAN_NO_JOIN = _impl.SCAN_NO_JOIN
SCAN_NO_MEET = _impl.SCAN_NO_MEET
SCAN_JOIN_ESCAPES = _impl.SCAN_JOIN_ESCAPES
SCAN_MEET_ESCAPES = _impl.SCAN_MEET_ESCAPES

transitive_closure = _impl.transitive_closure
pair_scan = _impl.pair_scan
family_close = _impl.family_close
