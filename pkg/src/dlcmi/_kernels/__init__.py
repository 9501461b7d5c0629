"""Kernel backend selection.

The compiled extension is preferred when importable; set ``DLCMI_PURE=1`` to
force the pure-Python fallback (used by the benchmark and by CI parity runs).
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("DLCMI_PURE"):
    _impl = pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

BACKEND: str = _impl.BACKEND
principal_closure = _impl.principal_closure
r_witness_grid = _impl.r_witness_grid

__all__ = ["BACKEND", "principal_closure", "r_witness_grid", "pure"]
