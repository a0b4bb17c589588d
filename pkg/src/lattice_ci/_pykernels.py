"""Pure-Python bitmask kernels.

Every set is an ``int`` bitmask.  These functions are the reference
implementation; :mod:`lattice_ci._kernels` mirrors them in Cython for masks
that fit in 63 bits.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ResourceError


def _popcount(x: int) -> int:
    return bin(x).count("1")


def close_family(masks: Iterable[int], cap: int) -> list[int]:
    """Smallest family containing ``masks`` and 0, closed under | and &."""
    family = {0}
    family.update(masks)
    if len(family) > cap:
        raise ResourceError(f"lattice closure exceeded cap of {cap} elements")
    work = list(family)
    while work:
        x = work.pop()
        for y in list(family):
            for z in (x | y, x & y):
                if z not in family:
                    family.add(z)
                    work.append(z)
                    if len(family) > cap:
                        raise ResourceError(
                            f"lattice closure exceeded cap of {cap} elements"
                        )
    return sorted(family)


def minimize(masks: Iterable[int]) -> list[int]:
    """Inclusion-minimal members of ``masks``, deduplicated."""
    kept: list[int] = []
    for x in sorted(set(masks), key=lambda m: (_popcount(m), m)):
        if not any(k & x == k for k in kept):
            kept.append(x)
    return kept


def transversals(edges: Sequence[int], cap: int) -> list[int]:
    """Minimal hitting sets of the hypergraph ``edges`` (Berge's method)."""
    current = [0]
    for e in minimize(edges):
        nxt = []
        for t in current:
            if t & e:
                nxt.append(t)
                continue
            bits = e
            while bits:
                low = bits & -bits
                nxt.append(t | low)
                bits ^= low
        current = minimize(nxt)
        if len(current) > cap:
            raise ResourceError(f"transversal count exceeded cap of {cap}")
    return current


def pairwise_or_min(a: Sequence[int], b: Sequence[int], cap: int) -> list[int]:
    """Minimal generators of the intersection of two squarefree ideals."""
    out = minimize(x | y for x in a for y in b)
    if len(out) > cap:
        raise ResourceError(f"generator count exceeded cap of {cap}")
    return out


def order_ideals(below: Sequence[int], cap: int) -> list[int]:
    """Down-closed subsets of a poset.

    ``below[k]`` is the mask of strict predecessors of element ``k``; indices
    must form a linear extension (every predecessor has a smaller index).
    """
    n = len(below)
    out: list[int] = []
    stack = [(0, 0)]
    while stack:
        k, mask = stack.pop()
        if k == n:
            out.append(mask)
            if len(out) > cap:
                raise ResourceError(f"order-ideal count exceeded cap of {cap}")
            continue
        stack.append((k + 1, mask))
        if below[k] & mask == below[k]:
            stack.append((k + 1, mask | (1 << k)))
    return sorted(out)


def cover_pairs(masks: Sequence[int]) -> list[tuple[int, int]]:
    """Hasse covers ``(i, j)`` of a set family ordered by inclusion.

    ``masks`` must be sorted by popcount so that supersets come later.
    """
    pairs = []
    n = len(masks)
    for i in range(n):
        x = masks[i]
        ups: list[int] = []
        for j in range(i + 1, n):
            y = masks[j]
            if y != x and x & y == x:
                if not any(masks[u] & y == masks[u] for u in ups):
                    ups.append(j)
        pairs.extend((i, j) for j in ups)
    return pairs
