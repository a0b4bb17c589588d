"""Monomial maps of a lattice and the Hibi binomial generators.

Each lattice element ``I`` maps to ``u_I = prod_{i in I} z_i prod_{i not in I} y_i``
and to the z-only monomial ``u'_I = prod_{i in I} z_i``.  The Hibi ideal is the
common kernel of both maps, generated by ``p_I p_J - p_{I&J} p_{I|J}`` over
incomparable pairs.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError
from .lattice import DistributiveLattice, IndexSet, join_irreducibles


@dataclass(frozen=True)
class SquarefreeMonomial:
    z_support: IndexSet
    y_support: IndexSet

    def __post_init__(self):
        if self.z_support.ground != self.y_support.ground:
            raise DomainError("z and y supports over different ground sets")

    @property
    def degree(self) -> int:
        return len(self.z_support) + len(self.y_support)

    def variables(self) -> list[str]:
        return [f"z_{x}" for x in self.z_support] + [f"y_{x}" for x in self.y_support]

    def __str__(self) -> str:
        return "*".join(self.variables()) or "1"


def monomial_product(*monomials: SquarefreeMonomial) -> Counter:
    """Product of monomials as a multiset of variable names."""
    out: Counter = Counter()
    for m in monomials:
        out.update(m.variables())
    return out


@dataclass(frozen=True)
class HibiBinomial:
    """``p_i p_j - p_{i & j} p_{i | j}`` stored structurally."""

    i: IndexSet
    j: IndexSet

    @property
    def lhs(self) -> tuple[IndexSet, IndexSet]:
        return (self.i, self.j)

    @property
    def rhs(self) -> tuple[IndexSet, IndexSet]:
        return (self.i & self.j, self.i | self.j)

    @property
    def degenerate(self) -> bool:
        return self.i <= self.j or self.j <= self.i

    def __str__(self) -> str:
        a, b = self.lhs
        c, d = self.rhs
        return f"p_{{{a}}}*p_{{{b}}}-p_{{{c}}}*p_{{{d}}}"


def monomial_u(l: DistributiveLattice, i: IndexSet) -> SquarefreeMonomial:
    l.require(i)
    return SquarefreeMonomial(i, i.complement())


def monomial_u_prime(l: DistributiveLattice, i: IndexSet) -> SquarefreeMonomial:
    l.require(i)
    return SquarefreeMonomial(i, l.ground.empty)


def hibi_generators(l: DistributiveLattice) -> list[HibiBinomial]:
    """One binomial per incomparable pair, smaller element (canonical order) first."""
    elems = l.elements
    out = []
    for a in range(len(elems)):
        x = elems[a]
        for y in elems[a + 1:]:
            if not (x <= y or y <= x):
                out.append(HibiBinomial(x, y))
    return out


def smallest_containing(l: DistributiveLattice, label: str) -> IndexSet:
    if label not in l.ground:
        raise DomainError(f"label {label!r} not in ground set")
    bits = l.top.bits
    found = False
    for e in l.elements:
        if label in e:
            bits &= e.bits
            found = True
    if not found:
        raise DomainError(f"no lattice element contains {label!r}")
    return IndexSet(l.ground, bits)


def generator_g(l: DistributiveLattice, label: str) -> SquarefreeMonomial:
    """``u'`` of the smallest lattice element containing ``label``."""
    return monomial_u_prime(l, smallest_containing(l, label))


@dataclass(frozen=True)
class GeneratorG:
    increment: IndexSet
    element: IndexSet
    monomial: SquarefreeMonomial

    @property
    def ambiguous(self) -> bool:
        """True when several labels enter the lattice at the same element."""
        return len(self.increment) > 1


def g_generators(l: DistributiveLattice) -> list[GeneratorG]:
    """The ``g`` monomial of every join-irreducible, keyed by its increment."""
    out = []
    for j in join_irreducibles(l).elements:
        (lower,) = l.lower_covers(j)
        out.append(GeneratorG(j - lower, j, monomial_u_prime(l, j)))
    return out


@dataclass(frozen=True)
class ZFactorization:
    target: IndexSet
    factors: tuple[IndexSet, ...]
    chain: tuple[IndexSet, ...]

    def __str__(self) -> str:
        return " ".join(f"z_{{{f}}}" for f in self.factors) or "1"


def canonical_chain(l: DistributiveLattice, j: IndexSet) -> list[IndexSet]:
    """Saturated chain from the bottom to ``j`` taking the least cover each step."""
    l.require(j)
    chain = [l.bottom]
    while chain[-1] != j:
        ups = [u for u in l.upper_covers(chain[-1]) if u <= j]
        chain.append(min(ups, key=lambda e: e.key))
    return chain


def chain_increments(chain: Iterable[IndexSet]) -> list[IndexSet]:
    chain = list(chain)
    return [b - a for a, b in zip(chain, chain[1:])]


def z_factorization(l: DistributiveLattice, j: IndexSet) -> ZFactorization:
    chain = canonical_chain(l, j)
    return ZFactorization(j, tuple(chain_increments(chain)), tuple(chain))


def kernel_membership(l: DistributiveLattice, b: HibiBinomial) -> bool:
    """Whether both monomial maps send the binomial to zero."""
    i, j = b.lhs
    meet, join = b.rhs
    for m in (monomial_u, monomial_u_prime):
        if monomial_product(m(l, i), m(l, j)) != monomial_product(m(l, meet), m(l, join)):
            return False
    return True


def render_ideal(binomials: Iterable[HibiBinomial]) -> str:
    """Brace-delimited, comma-separated list accepted by computer-algebra systems."""
    return "{" + ", ".join(str(b) for b in binomials) + "}"
