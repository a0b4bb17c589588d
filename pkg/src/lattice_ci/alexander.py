"""Squarefree monomial ideals, Alexander duality and edge ideals.

Generators are bitmasks over an ordered variable list.  The dual is computed
two independent ways: by intersecting the variable primes of the generators,
and as the minimal transversals of the generator supports.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .errors import ContractViolation, DomainError, FormatError
from .lattice import DEFAULT_CAP, Poset, natural_key, order_ideals
from .tdag import Tdag

GENERATOR_CAP = 10**5


def _key(bits: int) -> tuple:
    idx = [k for k in range(bits.bit_length()) if bits >> k & 1]
    return (len(idx), idx)


class MonomialIdeal:
    """Squarefree monomial ideal with minimal, canonically sorted generators.

    An empty generator list is the zero ideal; the single generator ``0``
    (the empty monomial) is the unit ideal.
    """

    __slots__ = ("variables", "gens")

    def __init__(self, variables: Sequence[str], gens: Iterable[int]):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise DomainError("duplicate variable names")
        gens = list(gens)
        limit = 1 << len(self.variables)
        for g in gens:
            if g < 0 or g >= limit:
                raise DomainError("generator uses an unknown variable")
        self.gens = tuple(sorted(kernels.minimize(gens), key=_key))

    @classmethod
    def from_exponents(cls, variables: Sequence[str], vectors: Iterable[Sequence[int]]) -> "MonomialIdeal":
        gens = []
        for vec in vectors:
            if len(vec) != len(variables):
                raise FormatError("exponent vector length does not match variables")
            bits = 0
            for k, a in enumerate(vec):
                if a not in (0, 1):
                    raise DomainError(f"exponent {a} is not squarefree")
                bits |= int(a) << k
            gens.append(bits)
        return cls(variables, gens)

    @classmethod
    def from_monomials(cls, variables: Sequence[str], monomials: Iterable[Iterable[str]]) -> "MonomialIdeal":
        pos = {v: k for k, v in enumerate(variables)}
        gens = []
        for mono in monomials:
            bits = 0
            for v in mono:
                if v not in pos:
                    raise FormatError(f"unknown variable {v!r}")
                if bits >> pos[v] & 1:
                    raise DomainError(f"variable {v} repeated; monomial is not squarefree")
                bits |= 1 << pos[v]
            gens.append(bits)
        return cls(variables, gens)

    def exponents(self) -> list[list[int]]:
        n = len(self.variables)
        return [[g >> k & 1 for k in range(n)] for g in self.gens]

    def support(self, g: int) -> list[str]:
        return [v for k, v in enumerate(self.variables) if g >> k & 1]

    def monomials(self) -> list[tuple[str, ...]]:
        return [tuple(self.support(g)) for g in self.gens]

    @property
    def is_unit(self) -> bool:
        return self.gens == (0,)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def render(self, g: int) -> str:
        return "*".join(self.support(g)) or "1"

    def to_text(self) -> str:
        return "".join(self.render(g) + "\n" for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonomialIdeal)
            and self.variables == other.variables
            and self.gens == other.gens
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.gens))

    def __repr__(self) -> str:
        return f"MonomialIdeal<{', '.join(self.render(g) for g in self.gens)}>"


def parse_ideal_text(text: str, variables: Sequence[str] | None = None) -> MonomialIdeal:
    """Parse one generator per line, e.g. ``z_3*y_2``; ``1`` is the unit."""
    monos = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        monos.append([] if line == "1" else [v.strip() for v in line.split("*")])
    if variables is None:
        names = {v for m in monos for v in m}
        variables = sorted(names, key=_var_order)
    return MonomialIdeal.from_monomials(variables, monos)


def _var_order(name: str):
    prefix, _, label = name.partition("_")
    return ({"z": 0, "y": 1}.get(prefix, 2), prefix, natural_key(label))


def zy_variables(labels: Sequence[str]) -> list[str]:
    return [f"z_{x}" for x in labels] + [f"y_{x}" for x in labels]


def ideal_M_Q(q: Poset, cap: int = DEFAULT_CAP) -> MonomialIdeal:
    """``<u_I : I an order ideal of q>`` over ``z_i, y_i`` for each element name."""
    n = len(q)
    full = (1 << n) - 1
    gens = [I.bits | ((full & ~I.bits) << n) for I in order_ideals(q, cap)]
    return MonomialIdeal(zy_variables(q.names), gens)


def _variable_prime(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low)
        bits ^= low
    return out


def alexander_dual_intersect(m: MonomialIdeal, cap: int = GENERATOR_CAP) -> MonomialIdeal:
    """Intersection of the primes ``<x_j : x_j divides g>`` over generators ``g``."""
    current = [0]
    for g in m.gens:
        current = kernels.pairwise_or_min(current, _variable_prime(g), cap)
    return MonomialIdeal(m.variables, current)


def alexander_dual_hitting(m: MonomialIdeal, cap: int = GENERATOR_CAP) -> MonomialIdeal:
    """Minimal transversals of the generator supports."""
    return MonomialIdeal(m.variables, kernels.transversals(list(m.gens), cap))


def alexander_dual(m: MonomialIdeal, cap: int = GENERATOR_CAP) -> MonomialIdeal:
    """Dual via both algorithms; raises if they disagree."""
    a = alexander_dual_intersect(m, cap)
    b = alexander_dual_hitting(m, cap)
    if a != b:
        raise ContractViolation("dual algorithms disagree")
    return a


def edge_ideal(vertices, edges: Iterable[tuple[str, str]] | None = None) -> MonomialIdeal:
    """``<z_i y_j : i -> j>``.  Accepts a :class:`Tdag` or a vertex list and edges."""
    if edges is None:
        vertices, edges = vertices.vertices, vertices.edges
    vertices = [str(v) for v in vertices]
    variables = zy_variables(vertices)
    pos = {v: k for k, v in enumerate(vertices)}
    n = len(vertices)
    gens = []
    for a, b in edges:
        a, b = str(a), str(b)
        if a not in pos or b not in pos:
            raise DomainError(f"edge {a}->{b} uses an unknown vertex")
        if a == b:
            raise DomainError(f"self-loop at {a}")
        gens.append(1 << pos[a] | 1 << (n + pos[b]))
    return MonomialIdeal(variables, gens)


@dataclass(frozen=True)
class BipartiteEdgeSet:
    edges: tuple[tuple[str, str], ...]
    loops: tuple[str, ...]


def _split_var(name: str) -> tuple[str, str]:
    prefix, sep, label = name.partition("_")
    if not sep or prefix not in ("z", "y") or not label:
        raise FormatError(f"variable {name!r} is not of the form z_<label> or y_<label>")
    return prefix, label


def bipartite_edges(dual: MonomialIdeal) -> BipartiteEdgeSet:
    """Read every generator ``z_i y_j`` as a pair; ``i == j`` gives a loop."""
    edges, loops = [], []
    for g in dual.gens:
        parts = [_split_var(v) for v in dual.support(g)]
        zs = [lab for p, lab in parts if p == "z"]
        ys = [lab for p, lab in parts if p == "y"]
        if len(zs) != 1 or len(ys) != 1:
            raise FormatError(f"generator {dual.render(g)} is not of the form z_i*y_j")
        if zs[0] == ys[0]:
            loops.append(zs[0])
        else:
            edges.append((zs[0], ys[0]))
    return BipartiteEdgeSet(tuple(edges), tuple(loops))


def tdag_from_dual(dual: MonomialIdeal) -> Tdag:
    """Recover the TDAG whose edge ideal plus loops is ``dual``."""
    vertices = []
    for v in dual.variables:
        prefix, label = _split_var(v)
        if prefix == "z":
            vertices.append(label)
    bip = bipartite_edges(dual)
    try:
        return Tdag(vertices, bip.edges)
    except DomainError as exc:
        raise ContractViolation(f"dual does not describe a TDAG: {exc}") from exc
