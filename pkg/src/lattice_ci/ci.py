"""Conditional-independence statements of a lattice and their numerical oracles.

Two oracles are provided: brute force over a discrete joint table, and
projector algebra for a Gaussian vector ``X = A Z``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ContractViolation, DomainError, NumericalError, PositivityError
from .hibi import hibi_generators
from .lattice import DistributiveLattice, GroundSet, IndexSet
from .tdag import Tdag, ancestors

CI_TOL = 1e-9
PROJECTOR_TOL = 1e-10
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class CiStatement:
    """``X_a`` independent of ``X_b`` given ``X_c``."""

    a: IndexSet
    b: IndexSet
    c: IndexSet

    def __post_init__(self):
        if not self.a or not self.b:
            raise DomainError("a and b must be nonempty")
        if not (self.a.isdisjoint(self.b) and self.a.isdisjoint(self.c) and self.b.isdisjoint(self.c)):
            raise DomainError("a, b and c must be pairwise disjoint")

    def canonical(self) -> "CiStatement":
        if self.b.key < self.a.key:
            return CiStatement(self.b, self.a, self.c)
        return self

    def __str__(self) -> str:
        s = f"{self.a} _||_ {self.b}"
        return f"{s} | {self.c}" if self.c else s


def ci_statements(l: DistributiveLattice) -> list[CiStatement]:
    """One statement ``(I-J, J-I, I&J)`` per Hibi binomial, deduplicated."""
    seen = set()
    out = []
    for b in hibi_generators(l):
        s = CiStatement(b.i - b.j, b.j - b.i, b.i & b.j).canonical()
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


class DiscreteJoint:
    """Joint probability table with one axis per ground label.

    Tables of :class:`fractions.Fraction` (dtype ``object``) give exact
    arithmetic throughout.
    """

    def __init__(self, ground: GroundSet, cards: Sequence[int], table, *, positive: bool | None = None):
        self.ground = ground
        self.cards = tuple(int(c) for c in cards)
        if len(self.cards) != len(ground):
            raise DomainError("one cardinality per ground label is required")
        if any(c < 1 for c in self.cards):
            raise DomainError("cardinalities must be positive")
        table = np.asarray(table)
        if table.dtype != object:
            table = table.astype(float)
        table = table.reshape(self.cards)
        if (table < 0).any():
            raise DomainError("negative probability")
        total = table.sum()
        exact = table.dtype == object
        if (total != 1) if exact else abs(total - 1.0) > 1e-12:
            raise DomainError(f"probabilities sum to {total}, not 1")
        if positive is None:
            positive = bool((table > 0).all())
        elif positive and not (table > 0).all():
            raise PositivityError("positivity flag set but table has zero entries")
        table.setflags(write=False)
        self.table = table
        self.positive = positive

    @property
    def exact(self) -> bool:
        return self.table.dtype == object

    @classmethod
    def from_probs(cls, cards: Sequence[int], probs: Sequence, labels: Sequence[str] | None = None,
                   *, exact: bool = False, **kw) -> "DiscreteJoint":
        """Build from a flat row-major list (last variable varies fastest).

        Strings such as ``"1/8"`` or ``exact=True`` select rational arithmetic.
        """
        labels = labels if labels is not None else [str(k + 1) for k in range(len(cards))]
        probs = list(probs)
        if exact or any(isinstance(p, str) for p in probs):
            table = np.array([Fraction(p) for p in probs], dtype=object)
        else:
            table = np.array(probs, dtype=float)
        return cls(GroundSet(labels), cards, table, **kw)

    @property
    def n(self) -> int:
        return len(self.cards)

    def probs(self) -> list:
        return list(self.table.reshape(-1))


def _full_margin(d: DiscreteJoint, i: IndexSet) -> np.ndarray:
    if i.ground != d.ground:
        raise DomainError("index set over a different ground set")
    keep = set(i.indices())
    axes = tuple(k for k in range(d.n) if k not in keep)
    return d.table.sum(axis=axes, keepdims=True) if axes else d.table


def margin(d: DiscreteJoint, i: IndexSet) -> np.ndarray:
    """Table of ``X_i`` with axes in ground order; the empty margin is ``1``."""
    m = _full_margin(d, i)
    return m.reshape(tuple(d.cards[k] for k in i.indices()))


def _max_abs(x) -> float | Fraction:
    x = np.abs(np.asarray(x))
    return x.max() if x.size else 0


def hibi_deviation(d: DiscreteJoint, i: IndexSet, j: IndexSet):
    """Max over assignments of ``|p_{i|j} p_{i&j} - p_i p_j|``."""
    lhs = _full_margin(d, i | j) * _full_margin(d, i & j)
    rhs = _full_margin(d, i) * _full_margin(d, j)
    return _max_abs(np.broadcast_to(lhs - rhs, d.cards))


def check_hibi_relation(d: DiscreteJoint, i: IndexSet, j: IndexSet, tol: float = CI_TOL) -> bool:
    return hibi_deviation(d, i, j) <= tol


def ci_deviation(d: DiscreteJoint, s: CiStatement):
    """Max over assignments of ``|p_{abc} p_c - p_{ac} p_{bc}|``."""
    lhs = _full_margin(d, s.a | s.b | s.c) * _full_margin(d, s.c)
    rhs = _full_margin(d, s.a | s.c) * _full_margin(d, s.b | s.c)
    return _max_abs(np.broadcast_to(lhs - rhs, d.cards))


def check_ci(d: DiscreteJoint, s: CiStatement, tol: float = CI_TOL) -> bool:
    return ci_deviation(d, s) <= tol


def joint_from_tdag(g: Tdag, cards: int | Sequence[int] = 2, seed: int = 0,
                    *, uniform: bool = False) -> DiscreteJoint:
    """Product of seeded, strictly positive conditionals given full ancestral sets."""
    n = len(g.vertices)
    cards = (cards,) * n if isinstance(cards, int) else tuple(cards)
    if len(cards) != n or any(c < 2 for c in cards):
        raise DomainError("need one alphabet size >= 2 per vertex")
    rng = np.random.default_rng(seed)
    table = np.ones(cards)
    for v in g.topological_order():
        k = g.ground.index(v)
        parents = [p for p in ancestors(g, v).indices() if p != k]
        shape = tuple(cards[p] for p in parents) + (cards[k],)
        cond = np.ones(shape) if uniform else rng.uniform(0.05, 1.0, size=shape)
        cond /= cond.sum(axis=-1, keepdims=True)
        axes = parents + [k]
        cond = np.transpose(cond, np.argsort(axes))
        full = [1] * n
        for a in axes:
            full[a] = cards[a]
        table = table * cond.reshape(full)
    return DiscreteJoint(g.ground, cards, table / table.sum())


def perturb(d: DiscreteJoint, cell: int = 0, eps: float = 0.01) -> DiscreteJoint:
    """Add ``eps`` to one cell (flat index) and renormalize."""
    flat = np.array(d.table, dtype=float).reshape(-1)
    flat[cell] += eps
    return DiscreteJoint(d.ground, d.cards, flat / flat.sum())


def q_margin(d: DiscreteJoint, j: IndexSet) -> np.ndarray:
    """``p_full / p_{complement of j}`` on every full assignment."""
    denom = _full_margin(d, j.complement())
    if not (denom > 0).all():
        raise PositivityError(f"margin on {j.complement()} has zero entries")
    return np.broadcast_to(d.table / denom, d.cards)


class GaussianModel:
    """Zero-mean Gaussian ``X = A Z`` with ``Z`` standard normal."""

    def __init__(self, factor, ground: GroundSet | None = None):
        a = np.array(factor, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError("factor must be a square matrix")
        n = a.shape[0]
        scaled = a / np.maximum(np.linalg.norm(a, axis=1, keepdims=True), 1e-300)
        if abs(np.linalg.det(scaled)) <= 1e-10:
            raise NumericalError("factor matrix is singular")
        a.setflags(write=False)
        self.factor = a
        self.ground = ground if ground is not None else GroundSet(str(k + 1) for k in range(n))
        if len(self.ground) != n:
            raise DomainError("ground set size does not match factor")

    @property
    def n(self) -> int:
        return self.factor.shape[0]

    @property
    def covariance(self) -> np.ndarray:
        return self.factor @ self.factor.T

    def rows(self, i: IndexSet) -> np.ndarray:
        if i.ground != self.ground:
            raise DomainError("index set over a different ground set")
        return self.factor[list(i.indices()), :]


def gaussian_from_tdag(g: Tdag, seed: int = 0) -> GaussianModel:
    """Row ``i`` of the factor is supported on the ancestors of ``i``."""
    rng = np.random.default_rng(seed)
    n = len(g.vertices)
    a = np.zeros((n, n))
    for k, v in enumerate(g.vertices):
        for p in ancestors(g, v).indices():
            if p != k:
                a[k, p] = rng.uniform(-1.0, 1.0)
        a[k, k] = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 1.0)
    return GaussianModel(a, g.ground)


def _gram_solve(rows: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    if rows.shape[0]:
        s = np.linalg.svd(rows, compute_uv=False)
        if s.min() <= RANK_RTOL * s.max():
            raise NumericalError("selected rows of the factor are rank deficient")
    return np.linalg.solve(rows @ rows.T, rhs)


def projector(m: GaussianModel, i: IndexSet) -> np.ndarray:
    """Orthogonal projector onto the row space of ``A_i``."""
    rows = m.rows(i)
    if rows.shape[0] == 0:
        return np.zeros((m.n, m.n))
    return rows.T @ _gram_solve(rows, rows)


def complement_projector(m: GaussianModel, j: IndexSet) -> np.ndarray:
    """Projector of the complementary variable ``Y_j``: identity minus ``P`` of the complement."""
    return np.eye(m.n) - projector(m, j.complement())


def gaussian_ci_deviations(m: GaussianModel, s: CiStatement) -> dict[str, float]:
    """Max-abs of the Schur complement, commutator and ``P_I (1 - P_K) P_J``."""
    i, j, k = s.a | s.c, s.b | s.c, s.c
    ai, aj, ak = m.rows(i), m.rows(j), m.rows(k)
    schur = ai @ aj.T
    if ak.shape[0]:
        schur = schur - ai @ ak.T @ _gram_solve(ak, ak @ aj.T)
    pi, pj, pk = projector(m, i), projector(m, j), projector(m, k)
    return {
        "schur": float(np.abs(schur).max()),
        "commutator": float(np.abs(pi @ pj - pj @ pi).max()),
        "projector": float(np.abs(pi @ (np.eye(m.n) - pk) @ pj).max()),
    }


def check_gaussian_ci(m: GaussianModel, s: CiStatement, tol: float = CI_TOL) -> bool:
    dev = gaussian_ci_deviations(m, s)
    verdicts = {name: v < tol for name, v in dev.items()}
    if len(set(verdicts.values())) != 1:
        raise ContractViolation(f"Gaussian CI criteria disagree for {s}: {dev}")
    return verdicts["schur"]
