"""Kernel selection: compiled core when importable, pure Python otherwise.

Set ``WEDGEDEG_PURE=1`` to force the fallback.
"""

import os

from . import _fallback

if os.environ.get("WEDGEDEG_PURE"):
    _core = None
else:
    try:
        from . import _core
    except ImportError:
        _core = None

BACKEND = "compiled" if _core is not None else "python"
_impl = _core if _core is not None else _fallback

enumerate_cosets = _impl.enumerate_cosets
count_pairwise_tuples = _impl.count_pairwise_tuples
enumerate_cosets_felsch = _fallback.enumerate_cosets_felsch
