"""Ground sets, index sets, posets and distributive lattices of sets.

Index sets are bitmasks over an ordered :class:`GroundSet`.  A
:class:`DistributiveLattice` is a family of index sets closed under union and
intersection that always contains the empty set; meet is intersection and join
is union.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import DomainError, FormatError

DEFAULT_CAP = 10**6


class GroundSet:
    """Ordered collection of distinct string labels."""

    __slots__ = ("labels", "_index", "_hash")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(x) for x in labels)
        index = {lab: k for k, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise DomainError(f"duplicate labels in ground set {labels!r}")
        self.labels = labels
        self._index = index
        self._hash = hash(labels)

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[str]]) -> "GroundSet":
        """Ground set of all labels occurring in ``sets``, naturally sorted."""
        seen: set[str] = set()
        for s in sets:
            seen.update(str(x) for x in s)
        return cls(sorted(seen, key=natural_key))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)!r})"

    @property
    def single_char(self) -> bool:
        return all(len(x) == 1 for x in self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise DomainError(f"label {label!r} not in ground set") from None

    def mask(self, labels: Iterable[str]) -> int:
        bits = 0
        for lab in labels:
            bits |= 1 << self.index(lab)
        return bits

    def subset(self, labels: Iterable[str] | str) -> "IndexSet":
        if isinstance(labels, str):
            labels = split_labels(labels, self.single_char)
        return IndexSet(self, self.mask(labels))

    def from_mask(self, bits: int) -> "IndexSet":
        return IndexSet(self, bits)

    @property
    def full(self) -> "IndexSet":
        return IndexSet(self, (1 << len(self.labels)) - 1)

    @property
    def empty(self) -> "IndexSet":
        return IndexSet(self, 0)


class IndexSet:
    """Immutable subset of a :class:`GroundSet`, stored as a bitmask."""

    __slots__ = ("ground", "bits")

    def __init__(self, ground: GroundSet, bits: int):
        if bits < 0 or bits >> len(ground):
            raise DomainError("index set is not a subset of the ground set")
        self.ground = ground
        self.bits = bits

    def _same(self, other: "IndexSet") -> None:
        if self.ground != other.ground:
            raise DomainError("index sets live over different ground sets")

    def __or__(self, other: "IndexSet") -> "IndexSet":
        self._same(other)
        return IndexSet(self.ground, self.bits | other.bits)

    def __and__(self, other: "IndexSet") -> "IndexSet":
        self._same(other)
        return IndexSet(self.ground, self.bits & other.bits)

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        self._same(other)
        return IndexSet(self.ground, self.bits & ~other.bits)

    def complement(self) -> "IndexSet":
        return IndexSet(self.ground, self.ground.full.bits & ~self.bits)

    def __le__(self, other: "IndexSet") -> bool:
        self._same(other)
        return self.bits & other.bits == self.bits

    def __lt__(self, other: "IndexSet") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "IndexSet") -> bool:
        return other <= self

    def __gt__(self, other: "IndexSet") -> bool:
        return other < self

    def isdisjoint(self, other: "IndexSet") -> bool:
        self._same(other)
        return not self.bits & other.bits

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IndexSet)
            and self.bits == other.bits
            and self.ground == other.ground
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.bits))

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return bool(self.bits)

    def __contains__(self, label: object) -> bool:
        if label not in self.ground:
            return False
        return bool(self.bits >> self.ground.index(label) & 1)

    def indices(self) -> tuple[int, ...]:
        bits, out, k = self.bits, [], 0
        while bits:
            if bits & 1:
                out.append(k)
            bits >>= 1
            k += 1
        return tuple(out)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.ground.labels[k] for k in self.indices())

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    @property
    def key(self) -> tuple:
        """Canonical sort key: cardinality, then ground-order lexicographic."""
        idx = self.indices()
        return (len(idx), idx)

    def __str__(self) -> str:
        sep = "" if self.ground.single_char else ","
        return sep.join(self.labels)

    def __repr__(self) -> str:
        return f"IndexSet({{{','.join(self.labels)}}})"


def natural_key(label: str):
    return (0, int(label), label) if label.isdigit() else (1, 0, label)


def split_labels(text: str, single_char: bool = True) -> list[str]:
    """Split one set written as ``123`` or ``11,21`` into labels."""
    text = text.strip()
    if not text or text in ("{}", "∅"):
        return []
    if "," in text or not single_char:
        return [x.strip() for x in text.split(",") if x.strip()]
    return list(text)


def parse_family(text: str) -> list[list[str]]:
    """Parse a generator list.

    ``"123,234,345"`` separates sets with commas and treats every character as
    a label.  ``"11,21;21,22"`` separates sets with semicolons and labels with
    commas, which is required for multi-character labels.
    """
    text = text.strip()
    if not text:
        return []
    if ";" in text:
        return [split_labels(part, single_char=False) for part in text.split(";")]
    out = []
    for part in text.split(","):
        part = part.strip()
        if part and not part.isalnum():
            raise FormatError(f"cannot parse generator {part!r}")
        out.append(list(part))
    return out


class Poset:
    """Finite partial order stored as a boolean ``leq`` matrix.

    ``elements`` are arbitrary payloads (labels or :class:`IndexSet`);
    ``names`` are their string renderings and form :attr:`ground`.
    """

    def __init__(self, elements: Sequence, leq, names: Sequence[str] | None = None):
        self.elements = tuple(elements)
        n = len(self.elements)
        leq = np.asarray(leq, dtype=bool).reshape(n, n)
        if not leq.diagonal().all():
            raise DomainError("relation is not reflexive")
        strict = leq & ~np.eye(n, dtype=bool)
        if (strict & strict.T).any():
            raise DomainError("relation is not antisymmetric")
        if n and ((leq.astype(np.int64) @ leq.astype(np.int64) > 0) & ~leq).any():
            raise DomainError("relation is not transitive")
        leq.setflags(write=False)
        self.leq = leq
        self.names = tuple(str(e) for e in self.elements) if names is None else tuple(names)
        self.ground = GroundSet(self.names)

    @classmethod
    def from_pairs(cls, elements: Sequence, pairs: Iterable[tuple[int, int]],
                   names: Sequence[str] | None = None) -> "Poset":
        """Poset generated by strict relations ``i < j`` (transitively closed)."""
        n = len(elements)
        rel = np.eye(n, dtype=bool)
        for i, j in pairs:
            rel[i, j] = True
        for k in range(n):
            rel |= rel[:, [k]] & rel[[k], :]
        return cls(elements, rel, names)

    @classmethod
    def from_sets(cls, sets: Sequence[IndexSet], names: Sequence[str] | None = None) -> "Poset":
        """Sets ordered by inclusion."""
        n = len(sets)
        rel = np.array([[a <= b for b in sets] for a in sets], dtype=bool).reshape(n, n)
        return cls(sets, rel, names)

    def __len__(self) -> int:
        return len(self.elements)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.leq[i, j])

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Transitive reduction of the strict order."""
        n = len(self.elements)
        strict = self.leq & ~np.eye(n, dtype=bool)
        two_step = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        red = strict & ~two_step
        return tuple((int(i), int(j)) for i, j in zip(*np.nonzero(red)))

    def below(self, j: int) -> list[int]:
        """Indices strictly below ``j``."""
        return [i for i in range(len(self.elements)) if self.lt(i, j)]

    def relabel(self, names: Sequence[str]) -> "Poset":
        return Poset(names, self.leq, names)

    def __repr__(self) -> str:
        return f"Poset({list(self.names)!r}, covers={list(self.covers)!r})"


class DistributiveLattice:
    """A family of index sets closed under union and intersection.

    Elements are sorted canonically by :attr:`IndexSet.key`; element 0 is the
    empty set and the last element is the union of all members.
    """

    def __init__(self, ground: GroundSet, elements: Iterable[IndexSet], *, check: bool = True):
        elems = {e.bits: e for e in elements}
        for e in elems.values():
            if e.ground != ground:
                raise DomainError("lattice element over a different ground set")
        elems.setdefault(0, ground.empty)
        self.ground = ground
        self.elements: tuple[IndexSet, ...] = tuple(sorted(elems.values(), key=lambda e: e.key))
        self._index = {e.bits: k for k, e in enumerate(self.elements)}
        if check:
            self._check_closed()

    def _check_closed(self) -> None:
        bits = [e.bits for e in self.elements]
        for a in range(len(bits)):
            x = bits[a]
            for y in bits[a + 1:]:
                if x | y not in self._index or x & y not in self._index:
                    raise DomainError("family is not closed under union and intersection")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[IndexSet]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, IndexSet) and x.ground == self.ground and x.bits in self._index

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DistributiveLattice)
            and self.ground == other.ground
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.ground, tuple(e.bits for e in self.elements)))

    def __repr__(self) -> str:
        return f"DistributiveLattice({[str(e) for e in self.elements]!r})"

    def index_of(self, x: IndexSet) -> int:
        if x not in self:
            raise DomainError(f"{x!r} is not a lattice element")
        return self._index[x.bits]

    def require(self, x: IndexSet) -> IndexSet:
        self.index_of(x)
        return x

    @property
    def bottom(self) -> IndexSet:
        return self.elements[0]

    @property
    def top(self) -> IndexSet:
        return self.elements[-1]

    def meet(self, x: IndexSet, y: IndexSet) -> IndexSet:
        self.index_of(x), self.index_of(y)
        return x & y

    def join(self, x: IndexSet, y: IndexSet) -> IndexSet:
        self.index_of(x), self.index_of(y)
        return x | y

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram as ``(lower, upper)`` element-index pairs."""
        return tuple(kernels.cover_pairs([e.bits for e in self.elements]))

    @cached_property
    def _up(self) -> tuple[tuple[int, ...], ...]:
        up: list[list[int]] = [[] for _ in self.elements]
        for i, j in self.covers:
            up[i].append(j)
        return tuple(tuple(sorted(u)) for u in up)

    @cached_property
    def _down(self) -> tuple[tuple[int, ...], ...]:
        down: list[list[int]] = [[] for _ in self.elements]
        for i, j in self.covers:
            down[j].append(i)
        return tuple(tuple(sorted(d)) for d in down)

    def upper_covers(self, x: IndexSet) -> list[IndexSet]:
        return [self.elements[j] for j in self._up[self.index_of(x)]]

    def lower_covers(self, x: IndexSet) -> list[IndexSet]:
        return [self.elements[i] for i in self._down[self.index_of(x)]]

    @cached_property
    def order(self) -> np.ndarray:
        """Containment relation ``order[i, j] = elements[i] <= elements[j]``."""
        bits = np.array([e.bits for e in self.elements], dtype=object)
        rel = np.array([[(a & b) == a for b in bits] for a in bits], dtype=bool)
        rel.setflags(write=False)
        return rel

    def _table(self, op) -> np.ndarray:
        bits = [e.bits for e in self.elements]
        out = np.array([[self._index[op(a, b)] for b in bits] for a in bits], dtype=np.int64)
        out.setflags(write=False)
        return out

    @cached_property
    def meet_table(self) -> np.ndarray:
        return self._table(lambda a, b: a & b)

    @cached_property
    def join_table(self) -> np.ndarray:
        return self._table(lambda a, b: a | b)

    def is_distributive(self) -> bool:
        """Exhaustive check of x & (y | z) == (x & y) | (x & z)."""
        m, j = self.meet_table, self.join_table
        n = len(self.elements)
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if m[x, j[y, z]] != j[m[x, y], m[x, z]]:
                        return False
        return True


def lattice_from_generators(ground: GroundSet, gens: Iterable[IndexSet | Iterable[str]],
                            cap: int = DEFAULT_CAP) -> DistributiveLattice:
    """Close ``gens`` together with the empty set under union and intersection."""
    masks = []
    for g in gens:
        if isinstance(g, IndexSet):
            if g.ground != ground:
                raise DomainError("generator is over a different ground set")
            masks.append(g.bits)
        else:
            masks.append(ground.mask(g))
    closed = kernels.close_family(masks, cap)
    return DistributiveLattice(ground, (IndexSet(ground, b) for b in closed), check=False)


def _linear_extension(q: Poset) -> list[int]:
    counts = q.leq.sum(axis=0)
    return sorted(range(len(q)), key=lambda k: (int(counts[k]), k))


def order_ideals(q: Poset, cap: int = DEFAULT_CAP) -> list[IndexSet]:
    """All down-closed subsets of ``q`` as index sets over ``q.ground``."""
    order = _linear_extension(q)
    pos = {k: p for p, k in enumerate(order)}
    below = []
    for k in order:
        m = 0
        for i in q.below(k):
            m |= 1 << pos[i]
        below.append(m)
    out = []
    for m in kernels.order_ideals(below, cap):
        bits = 0
        p = 0
        while m:
            if m & 1:
                bits |= 1 << order[p]
            m >>= 1
            p += 1
        out.append(IndexSet(q.ground, bits))
    return sorted(out, key=lambda e: e.key)


def join_irreducibles(l: DistributiveLattice) -> Poset:
    """Poset of elements covering exactly one element, ordered by inclusion."""
    ji = [e for k, e in enumerate(l.elements) if len(l._down[k]) == 1]
    return Poset.from_sets(ji)


def birkhoff_check(l: DistributiveLattice) -> bool:
    """Whether ``x -> {join-irreducibles <= x}`` is an isomorphism onto O(J(l))."""
    q = join_irreducibles(l)
    ji = q.elements
    image = []
    for x in l.elements:
        bits = 0
        union = l.ground.empty
        for k, j in enumerate(ji):
            if j <= x:
                bits |= 1 << k
                union = union | j
        if union != x:
            return False
        image.append(IndexSet(q.ground, bits))
    ideals = order_ideals(q)
    if len(set(image)) != len(image) or set(image) != set(ideals):
        return False
    for a, x in enumerate(l.elements):
        for b, y in enumerate(l.elements):
            if (x <= y) != (image[a] <= image[b]):
                return False
    return True


def saturated_chains(l: DistributiveLattice, start: IndexSet, stop: IndexSet) -> list[list[IndexSet]]:
    """All maximal chains of covers from ``start`` up to ``stop``."""
    s, t = l.index_of(start), l.index_of(stop)
    if not start <= stop:
        raise DomainError(f"{start!r} is not contained in {stop!r}")
    target = stop.bits
    chains: list[list[IndexSet]] = []
    path = [s]

    def walk(k: int) -> None:
        if k == t:
            chains.append([l.elements[i] for i in path])
            return
        for j in l._up[k]:
            if l.elements[j].bits & target == l.elements[j].bits:
                path.append(j)
                walk(j)
                path.pop()

    walk(s)
    return chains
