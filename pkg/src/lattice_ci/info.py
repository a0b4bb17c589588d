"""Shannon information as a valuation on a lattice of margins.

Information is ``H(I) = E[log p_I(X_I)]`` in nats, the negative of entropy.
"""
from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .ci import DiscreteJoint, _full_margin, margin
from .errors import DomainError, PositivityError, PreconditionError
from .hibi import chain_increments
from .lattice import DistributiveLattice, IndexSet, saturated_chains


class Valuation(dict):
    """Explicit table ``IndexSet -> float``; may hold invalid values on purpose."""

    def value(self, i: IndexSet) -> float:
        try:
            return self[i]
        except KeyError:
            raise DomainError(f"valuation undefined on {i!r}") from None


def shannon_H(d: DiscreteJoint, i: IndexSet) -> float:
    """Expectation of ``log p_i`` under the full joint."""
    m = np.broadcast_to(_full_margin(d, i), d.cards).astype(float)
    p = d.table.astype(float)
    support = p > 0
    if (m[support] <= 0).any():
        raise PositivityError(f"margin on {i} vanishes on the support")
    return float(np.sum(p[support] * np.log(m[support])))


def shannon_H_marginal(d: DiscreteJoint, i: IndexSet) -> float:
    """Same quantity as an expectation under the margin itself."""
    m = np.asarray(margin(d, i), dtype=float).reshape(-1)
    m = m[m > 0]
    return float(np.sum(m * np.log(m)))


def valuation_from_joint(d: DiscreteJoint, l: DistributiveLattice) -> Valuation:
    return Valuation({e: shannon_H(d, e) for e in l.elements})


def valuation_deviation(v: Mapping[IndexSet, float], l: DistributiveLattice) -> float:
    """Largest ``|v(x&y) + v(x|y) - v(x) - v(y)|`` over all pairs."""
    v = v if isinstance(v, Valuation) else Valuation(v)
    elems = l.elements
    worst = 0.0
    for a, x in enumerate(elems):
        for y in elems[a + 1:]:
            dev = abs(v.value(x & y) + v.value(x | y) - v.value(x) - v.value(y))
            worst = max(worst, dev)
    return worst


def valuation_check(v: Mapping[IndexSet, float], l: DistributiveLattice, tol: float = 1e-10) -> bool:
    return valuation_deviation(v, l) <= tol


def running_intersection_check(sets: Sequence[IndexSet]) -> bool:
    """Whether ``sets[i] & sets[k] <= sets[j]`` for every ``i < j < k``."""
    n = len(sets)
    for i in range(n):
        for k in range(i + 2, n):
            common = sets[i] & sets[k]
            for j in range(i + 1, k):
                if not common <= sets[j]:
                    return False
    return True


def rota_inclusion_exclusion(v: Mapping[IndexSet, float], sets: Sequence[IndexSet]) -> float:
    """Value of the union by the simplified inclusion-exclusion formula.

    Under running intersection every later set meets the union of its
    predecessors exactly in its immediate predecessor, so only consecutive
    intersections are subtracted.
    """
    if not sets:
        raise DomainError("need at least one set")
    if not running_intersection_check(sets):
        raise PreconditionError("sets do not have the running intersection property")
    v = v if isinstance(v, Valuation) else Valuation(v)
    total = sum(v.value(s) for s in sets)
    total -= sum(v.value(a & b) for a, b in zip(sets, sets[1:]))
    return total


def edge_increments(v: Mapping[IndexSet, float], l: DistributiveLattice) -> dict[tuple[IndexSet, IndexSet], float]:
    """Increment ``v(upper) - v(lower)`` for every Hasse cover of ``l``."""
    v = v if isinstance(v, Valuation) else Valuation(v)
    out = {}
    for i, j in l.covers:
        lo, hi = l.elements[i], l.elements[j]
        out[(lo, hi)] = v.value(hi) - v.value(lo)
    return out


def chain_decomposition(v: Mapping[IndexSet, float], chain: Sequence[IndexSet]) -> list[tuple[IndexSet, float]]:
    """``(increment set, information gained)`` along one saturated chain."""
    v = v if isinstance(v, Valuation) else Valuation(v)
    incs = chain_increments(chain)
    return [(inc, v.value(b) - v.value(a)) for inc, a, b in zip(incs, chain, chain[1:])]


def chain_sums(v: Mapping[IndexSet, float], l: DistributiveLattice, target: IndexSet) -> list[float]:
    """Total increment along every saturated chain from the bottom to ``target``."""
    return [sum(x for _, x in chain_decomposition(v, c))
            for c in saturated_chains(l, l.bottom, target)]
