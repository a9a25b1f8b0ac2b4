"""Backend selection for the Monte-Carlo tally kernels.

Prefers the compiled extension; falls back to the numpy implementation
when the extension is unavailable or SEMDISC_PURE is set.  Both backends
are drop-in equivalent (bit-identical tallies on identical draws).
"""

from __future__ import annotations

import os

from . import _mc_pure

if os.environ.get("SEMDISC_PURE"):
    _impl = _mc_pure
    BACKEND = "numpy"
else:
    try:
        from . import _mc_ext as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _mc_pure
        BACKEND = "numpy"

tally_argmax = _impl.tally_argmax
count_positive_2x2 = _impl.count_positive_2x2
