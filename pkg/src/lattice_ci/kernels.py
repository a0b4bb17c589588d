"""Backend selection for the bitmask kernels.

The compiled extension is used when it imported successfully and every mask
of a call fits in 63 bits.  Set ``LATTICE_CI_PURE=1`` to force the Python
fallback for the whole process.
"""
from __future__ import annotations

import os
from typing import Iterable, Sequence

from . import _pykernels

_WIDTH = 63

try:
    if os.environ.get("LATTICE_CI_PURE", "") not in ("", "0"):
        raise ImportError("pure backend requested")
    from . import _kernels as _ext
except ImportError:
    _ext = None

BACKEND = "cython" if _ext is not None else "python"


def _narrow(masks: Sequence[int]) -> bool:
    return _ext is not None and all(0 <= m < (1 << _WIDTH) for m in masks)


def close_family(masks: Iterable[int], cap: int) -> list[int]:
    masks = list(masks)
    if _narrow(masks):
        return _ext.close_family(masks, cap)
    return _pykernels.close_family(masks, cap)


def minimize(masks: Iterable[int]) -> list[int]:
    masks = list(masks)
    if _narrow(masks):
        return _ext.minimize(masks)
    return _pykernels.minimize(masks)


def transversals(edges: Sequence[int], cap: int) -> list[int]:
    edges = list(edges)
    if _narrow(edges):
        return _ext.transversals(edges, cap)
    return _pykernels.transversals(edges, cap)


def pairwise_or_min(a: Sequence[int], b: Sequence[int], cap: int) -> list[int]:
    a, b = list(a), list(b)
    if _narrow(a) and _narrow(b):
        return _ext.pairwise_or_min(a, b, cap)
    return _pykernels.pairwise_or_min(a, b, cap)


def order_ideals(below: Sequence[int], cap: int) -> list[int]:
    below = list(below)
    if _ext is not None and len(below) <= _WIDTH:
        return _ext.order_ideals(below, cap)
    return _pykernels.order_ideals(below, cap)


def cover_pairs(masks: Sequence[int]) -> list[tuple[int, int]]:
    masks = list(masks)
    if _narrow(masks):
        return _ext.cover_pairs(masks)
    return _pykernels.cover_pairs(masks)

