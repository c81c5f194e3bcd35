"""Hot kernels: compiled fast path when available, pure numpy fallback.

Both backends honour the same contracts and produce identical results; the
merge kernel works on scaled integer bounds and defers every unclear
comparison to the caller, so backend choice never changes a word.  Set
CUTSEQ_FORCE_PURE=1 to skip the compiled module.
"""

import os

from . import pure

_impl = pure
if not os.environ.get("CUTSEQ_FORCE_PURE"):
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = "cython" if _impl is not pure else "pure"
merge_events = _impl.merge_events
FactorEngine = _impl.FactorEngine
