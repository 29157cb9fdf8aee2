"""Hot loops of the majorization analysis.

Each kernel exists twice: numba-compiled (``_numba``) and plain numpy
(``_numpy``). The compiled set is used unless numba is missing or the
environment variable ``GAUSSTRANS_DISABLE_NUMBA`` is set to ``1``/``true``.
"""

import os

from . import _numpy

NUMBA_ENABLED = False
if os.environ.get("GAUSSTRANS_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes"):
    try:
        from . import _numba as _impl

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _impl = _numpy
else:
    _impl = _numpy

pair_spectrum = _impl.pair_spectrum
product_spectrum = _impl.product_spectrum
dilution_search = _impl.dilution_search
scan_gaps = _impl.scan_gaps

__all__ = [
    "NUMBA_ENABLED",
    "pair_spectrum",
    "product_spectrum",
    "dilution_search",
    "scan_gaps",
]
