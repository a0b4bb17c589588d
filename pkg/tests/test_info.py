import itertools
import math
import random

import numpy as np
import pytest

from lattice_ci import (
    DiscreteJoint,
    DomainError,
    GroundSet,
    PreconditionError,
    Tdag,
    Valuation,
    edge_increments,
    joint_from_tdag,
    lattice_of_tdag,
    rota_inclusion_exclusion,
    running_intersection_check,
    shannon_H,
    valuation_check,
)
from lattice_ci.hibi import canonical_chain
from lattice_ci.info import chain_decomposition, chain_sums, shannon_H_marginal, valuation_from_joint

from oracles import assignments, brute_margin, random_tdag_edges


@pytest.fixture
def model(fig1, fig2):
    d = joint_from_tdag(fig2, seed=7)
    return d, valuation_from_joint(d, fig1)


def S(l, text):
    return l.ground.subset(text)


def test_trivial_values():
    d = DiscreteJoint.from_probs([2], [0.5, 0.5])
    assert shannon_H(d, d.ground.empty) == 0.0
    assert shannon_H(d, d.ground.full) == pytest.approx(math.log(0.5))
    assert shannon_H_marginal(d, d.ground.full) == pytest.approx(-0.6931, abs=1e-4)


def test_valuation_identity(fig1, model):
    _, v = model
    assert valuation_check(v, fig1, 1e-10)
    bad = Valuation(v)
    bad[S(fig1, "23")] += 0.1
    assert not valuation_check(bad, fig1, 1e-10)
    with pytest.raises(DomainError):
        Valuation().value(S(fig1, "3"))


@pytest.mark.parametrize("seed", range(6))
def test_valuation_random_models(seed):
    rng = random.Random(seed)
    vertices, edges = random_tdag_edges(rng, rng.randint(2, 6))
    g = Tdag(vertices, edges)
    l = lattice_of_tdag(g)
    v = valuation_from_joint(joint_from_tdag(g, seed=seed), l)
    assert valuation_check(v, l, 1e-10)


def test_conditional_information_identity(fig1, model):
    d, v = model
    probs = [float(p) for p in d.probs()]
    for i, j in itertools.combinations(fig1.elements, 2):
        u = i | j
        pu = brute_margin(probs, d.cards, u.indices())
        pi = brute_margin(probs, d.cards, i.indices())
        direct = sum(p * math.log(pu[tuple(x[k] for k in u.indices())] / pi[tuple(x[k] for k in i.indices())])
                     for x, p in zip(assignments(d.cards), probs))
        assert abs(v[u] - v[i] - direct) < 1e-10


def test_rip():
    g = GroundSet("12345")
    s = [g.subset(x) for x in ("123", "234", "345")]
    assert running_intersection_check(s)
    assert running_intersection_check(s[:1])
    assert not running_intersection_check([s[0], s[2], s[1]])


def test_rota_running(fig1, model):
    _, v = model
    sets = [S(fig1, x) for x in ("123", "234", "345")]
    explicit = v[sets[0]] + v[sets[1]] + v[sets[2]] - v[S(fig1, "23")] - v[S(fig1, "34")]
    assert rota_inclusion_exclusion(v, sets) == pytest.approx(explicit, abs=1e-14)
    assert abs(explicit - v[fig1.top]) < 1e-10
    assert rota_inclusion_exclusion(v, sets[:1]) == v[sets[0]]
    a, b = S(fig1, "23"), S(fig1, "34")
    assert rota_inclusion_exclusion(v, [a, b]) == pytest.approx(v[a] + v[b] - v[a & b])
    with pytest.raises(PreconditionError):
        rota_inclusion_exclusion(v, [sets[0], sets[2], sets[1]])


def test_rota_missing_entry(fig1):
    sets = [S(fig1, "123"), S(fig1, "234")]
    with pytest.raises(DomainError):
        rota_inclusion_exclusion(Valuation({sets[0]: 0.0, sets[1]: 0.0}), sets)


def test_chain_to_123(fig1, model):
    _, v = model
    chain = canonical_chain(fig1, S(fig1, "123"))
    parts = chain_decomposition(v, chain)
    assert [str(i) for i, _ in parts] == ["3", "2", "1"]
    vals = [x for _, x in parts]
    assert vals == pytest.approx([v[S(fig1, "3")], v[S(fig1, "23")] - v[S(fig1, "3")],
                                  v[S(fig1, "123")] - v[S(fig1, "23")]])
    assert sum(vals) == pytest.approx(v[S(fig1, "123")])
    assert chain_decomposition(v, [fig1.bottom]) == []


def test_chain_sum_independence(fig1, model):
    _, v = model
    sums = chain_sums(v, fig1, fig1.top)
    assert len(sums) > 1
    assert max(abs(s - v[fig1.top]) for s in sums) < 1e-10


def test_edge_increments(fig1, model):
    _, v = model
    inc = edge_increments(v, fig1)
    assert len(inc) == len(fig1.covers)
    for (lo, hi), x in inc.items():
        assert len(hi - lo) == 1
        assert x == pytest.approx(v[hi] - v[lo])


def test_positivity_on_support():
    d = DiscreteJoint.from_probs([2, 2], [0.5, 0.0, 0.0, 0.5])
    assert np.isfinite(shannon_H(d, d.ground.subset("1")))
