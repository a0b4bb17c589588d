"""Transitive DAGs and their correspondence with distributive lattices."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .lattice import (
    DEFAULT_CAP,
    DistributiveLattice,
    GroundSet,
    IndexSet,
    Poset,
    join_irreducibles,
    order_ideals,
)


class Tdag:
    """Transitively closed DAG over string labels, without self-loops.

    Validation runs on every construction.  Pass ``close=True`` to take the
    transitive closure of ``edges`` first instead of rejecting them.
    """

    __slots__ = ("vertices", "edges", "_ground")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = (),
                 *, close: bool = False):
        self.vertices = tuple(str(v) for v in vertices)
        self._ground = GroundSet(self.vertices)
        edge_set = set()
        for a, b in edges:
            a, b = str(a), str(b)
            if a not in self._ground or b not in self._ground:
                raise DomainError(f"edge {a}->{b} uses an unknown vertex")
            if a == b:
                raise DomainError(f"self-loop at {a}")
            edge_set.add((a, b))
        if close:
            edge_set = _closure(self.vertices, edge_set)
        self.edges = frozenset(edge_set)
        self._validate()

    def _validate(self) -> None:
        succ = {v: set() for v in self.vertices}
        for a, b in self.edges:
            succ[a].add(b)
        for a, b in self.edges:
            if b in succ and a in succ[b]:
                raise DomainError(f"cycle through {a} and {b}")
            missing = succ[b] - succ[a]
            if missing:
                c = sorted(missing)[0]
                raise DomainError(f"not transitive: {a}->{b}->{c} without {a}->{c}")

    @property
    def ground(self) -> GroundSet:
        return self._ground

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Tdag)
            and set(self.vertices) == set(other.vertices)
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.edges))

    def __repr__(self) -> str:
        return f"Tdag({list(self.vertices)!r}, {self.sorted_edges()!r})"

    def sorted_edges(self) -> list[tuple[str, str]]:
        pos = {v: k for k, v in enumerate(self.vertices)}
        return sorted(self.edges, key=lambda e: (pos[e[0]], pos[e[1]]))

    def predecessors(self, v: str) -> list[str]:
        return [a for a in self.vertices if (a, v) in self.edges]

    def topological_order(self) -> list[str]:
        # in a transitive DAG the in-degree is the number of ancestors
        return sorted(self.vertices, key=lambda v: (len(self.predecessors(v)), self.vertices.index(v)))


def _closure(vertices: Sequence[str], edges: set[tuple[str, str]]) -> set[tuple[str, str]]:
    pos = {v: k for k, v in enumerate(vertices)}
    n = len(vertices)
    rel = np.zeros((n, n), dtype=bool)
    for a, b in edges:
        rel[pos[a], pos[b]] = True
    for k in range(n):
        rel |= rel[:, [k]] & rel[[k], :]
    if rel.diagonal().any():
        raise DomainError("graph has a directed cycle")
    return {(vertices[i], vertices[j]) for i, j in zip(*np.nonzero(rel))}


def vertex_poset(g: Tdag) -> Poset:
    """Vertices ordered by ``i <= j`` iff ``i == j`` or ``i -> j``."""
    pos = {v: k for k, v in enumerate(g.vertices)}
    return Poset.from_pairs(g.vertices, [(pos[a], pos[b]) for a, b in g.edges], g.vertices)


def tdag_from_poset(q: Poset) -> Tdag:
    return Tdag(q.names, [(q.names[i], q.names[j]) for i in range(len(q))
                          for j in range(len(q)) if q.lt(i, j)])


def ji_increments(l: DistributiveLattice) -> list[tuple[IndexSet, IndexSet]]:
    """``(join_irreducible, increment)`` pairs, ordered by first label of the increment."""
    out = []
    for j in join_irreducibles(l).elements:
        (lower,) = l.lower_covers(j)
        out.append((j, j - lower))
    return sorted(out, key=lambda p: p[1].indices())


def labelled_ji_poset(l: DistributiveLattice) -> Poset:
    """Join-irreducible poset with each element named by its increment."""
    pairs = ji_increments(l)
    return Poset.from_sets([j for j, _ in pairs], names=[str(inc) for _, inc in pairs])


def tdag_of_lattice(l: DistributiveLattice) -> Tdag:
    return tdag_from_poset(labelled_ji_poset(l))


def lattice_of_tdag(g: Tdag, cap: int = DEFAULT_CAP) -> DistributiveLattice:
    """Lattice of ancestrally closed vertex sets."""
    return DistributiveLattice(g.ground, order_ideals(vertex_poset(g), cap), check=False)


def as_tdag(vertices: Iterable[str], edges: Iterable[tuple[str, str]], close: bool = False) -> Tdag:
    return Tdag(vertices, edges, close=close)


def ancestors(g: Tdag, v: str) -> IndexSet:
    """``{v}`` together with every vertex that has an edge into ``v``."""
    v = str(v)
    if v not in g.ground:
        raise DomainError(f"unknown vertex {v!r}")
    return g.ground.subset([v, *g.predecessors(v)])


def reverse_tdag(g: Tdag) -> Tdag:
    return Tdag(g.vertices, [(b, a) for a, b in g.edges])


def complementary_lattice(l: DistributiveLattice) -> DistributiveLattice:
    """Complements of all members, which is again a distributive lattice."""
    return DistributiveLattice(l.ground, [e.complement() for e in l.elements])
