"""Selects the ranking kernel at import: compiled if built, Python otherwise.

ASRSPELL_PURE_PYTHON=1 forces the fallback (useful for benchmarking and for
debugging suspected kernel issues).
"""
import os

from asrspell import _pykernels

if os.environ.get("ASRSPELL_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from asrspell import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

rank_shared_candidates = _impl.rank_shared_candidates

IMPLEMENTATION = "native" if _impl is not _pykernels else "python"
