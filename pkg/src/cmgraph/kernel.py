"""Kernel selection: compiled c-separation backend with pure-Python fallback.

The compiled extension is optional and capped at 63 nodes; calls outside
its envelope (or with ``CMGRAPH_PURE=1`` in the environment) go to the
pure-Python twin in ``_pykernel``.
"""

from __future__ import annotations

import os

from . import _pykernel

if os.environ.get("CMGRAPH_PURE"):
    _compiled = None
else:
    try:
        from . import _csep as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def backend_name() -> str:
    return BACKEND


def _impl(n: int):
    if _compiled is not None and n <= 63:
        return _compiled
    return _pykernel


def separated(n, ln, pa, ch, sp, amask, bmask, cmask) -> bool:
    return _impl(n).separated(n, ln, pa, ch, sp, amask, bmask, cmask)


def all_pair_separations(n, ln, pa, ch, sp):
    return _impl(n).all_pair_separations(n, ln, pa, ch, sp)


def exists_separator(n, ln, pa, ch, sp, i, j):
    return _impl(n).exists_separator(n, ln, pa, ch, sp, i, j)
