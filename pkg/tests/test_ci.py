import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from lattice_ci import (
    CiStatement,
    ContractViolation,
    DiscreteJoint,
    DomainError,
    GaussianModel,
    GroundSet,
    NumericalError,
    PositivityError,
    Tdag,
    check_ci,
    check_gaussian_ci,
    check_hibi_relation,
    ci_statements,
    gaussian_from_tdag,
    joint_from_tdag,
    lattice_from_generators,
    lattice_of_tdag,
    margin,
    projector,
    q_margin,
)
from lattice_ci.ci import (
    _full_margin as _full,
    complement_projector,
    gaussian_ci_deviations,
    hibi_deviation,
    perturb,
)

from oracles import brute_ci_deviation, d_separated, random_tdag_edges


def stmt(ground, a, b, c=""):
    return CiStatement(ground.subset(a), ground.subset(b), ground.subset(c))


def test_ci_statements_running(fig1):
    got = [str(s) for s in ci_statements(fig1)]
    assert "2 _||_ 4 | 3" in got
    assert "12 _||_ 45 | 3" in got
    assert len(got) == len(set(got))


def test_ci_statements_chain():
    l = lattice_from_generators(GroundSet("12"), [["1"], ["1", "2"]])
    assert ci_statements(l) == []


def test_statement_validation():
    g = GroundSet("123")
    with pytest.raises(DomainError):
        stmt(g, "12", "23")
    with pytest.raises(DomainError):
        stmt(g, "", "1")
    assert str(stmt(g, "3", "1").canonical()) == "1 _||_ 3"


def test_margins(fig2):
    d = joint_from_tdag(fig2, seed=3)
    assert np.allclose(margin(d, d.ground.full), d.table)
    assert float(margin(d, d.ground.empty)) == pytest.approx(1.0)
    m1 = margin(d, d.ground.subset("1"))
    assert m1.shape == (2,) and m1.sum() == pytest.approx(1.0)


def test_soundness_running_brute(fig1, fig2):
    for seed in (1, 2, 3):
        d = joint_from_tdag(fig2, seed=seed)
        probs = [float(p) for p in d.probs()]
        for s in ci_statements(fig1):
            dev = brute_ci_deviation(probs, d.cards, list(s.a.indices()), list(s.b.indices()),
                                     list(s.c.indices()))
            assert dev < 1e-12
            assert check_ci(d, s, 1e-10)
        for x, y in itertools.combinations(fig1.elements, 2):
            assert check_hibi_relation(d, x, y, 1e-12)


@pytest.mark.parametrize("seed", range(8))
def test_soundness_random_tdag(seed):
    rng = random.Random(seed)
    vertices, edges = random_tdag_edges(rng, rng.randint(2, 6))
    g = Tdag(vertices, edges)
    d = joint_from_tdag(g, seed=seed)
    for s in ci_statements(lattice_of_tdag(g)):
        assert check_ci(d, s, 1e-10)


def test_perturbation_fails(fig2):
    d = perturb(joint_from_tdag(fig2, seed=1), cell=0, eps=0.01)
    s = stmt(d.ground, "12", "45", "3")
    assert not check_ci(d, s, 1e-6)


def test_toric_violation():
    # X3 fixed at 0: p000 p110 = 0.2*0.2 differs from p010 p100 = 0.05*0.05
    probs = [0.2, 0.1, 0.05, 0.05, 0.05, 0.1, 0.2, 0.25]
    d = DiscreteJoint.from_probs([2, 2, 2], probs)
    g = d.ground
    assert not check_hibi_relation(d, g.subset("13"), g.subset("23"))
    assert check_hibi_relation(d, g.subset("3"), g.subset("13"))


def test_independent_product():
    p = np.outer([0.3, 0.7], [0.6, 0.4]).reshape(-1)
    d = DiscreteJoint.from_probs([2, 2], p)
    assert check_ci(d, stmt(d.ground, "1", "2"))


def test_exact_mode(fig2):
    d = joint_from_tdag(fig2, seed=0, uniform=True)
    assert np.allclose(d.table, 1 / 32)
    probs = ["1/8"] * 8
    e = DiscreteJoint.from_probs([2, 2, 2], probs)
    assert e.exact
    assert hibi_deviation(e, e.ground.subset("13"), e.ground.subset("23")) == 0
    with pytest.raises(DomainError):
        DiscreteJoint.from_probs([2], ["1/3", "1/3"])


def test_edgeless_is_product():
    d = joint_from_tdag(Tdag(["a", "b", "c"], []), seed=4)
    m = [margin(d, d.ground.subset([x])) for x in "abc"]
    assert np.allclose(d.table, np.einsum("i,j,k->ijk", *m))


def test_bad_tables():
    with pytest.raises(DomainError):
        DiscreteJoint.from_probs([2], [0.5, 0.6])
    with pytest.raises(DomainError):
        DiscreteJoint.from_probs([2], [-0.5, 1.5])
    with pytest.raises(PositivityError):
        DiscreteJoint.from_probs([2], [0.0, 1.0], positive=True)


def test_q_margin_duality(fig1, fig2):
    d = joint_from_tdag(fig2, seed=2)
    full = d.ground.full
    assert np.allclose(q_margin(d, full), d.table)
    for i in fig1.elements:
        p_i = np.broadcast_to(_full(d, i), d.cards)
        assert np.allclose(p_i * q_margin(d, full - i), d.table)
    # comparable pairs: ratio of p equals inverse ratio of the paired q
    for a, b in itertools.combinations(fig1.elements, 2):
        if a < b:
            lhs = _full(d, b) / _full(d, a)
            rhs = q_margin(d, full - a) / q_margin(d, full - b)
            assert np.allclose(np.broadcast_to(lhs, d.cards), rhs)


def test_q_margin_positivity():
    d = DiscreteJoint.from_probs([2, 2], [0.5, 0.5, 0.0, 0.0])
    with pytest.raises(PositivityError):
        q_margin(d, d.ground.subset("2"))


# Gaussian oracles

def test_gaussian_support(fig2):
    m = gaussian_from_tdag(fig2, seed=0)
    row = m.factor[m.ground.index("1")]
    assert {m.ground.labels[k] for k in np.flatnonzero(row)} == {"1", "2", "3"}
    diag = gaussian_from_tdag(Tdag(["1", "2"], []), seed=0).factor
    assert np.count_nonzero(diag - np.diag(np.diag(diag))) == 0


def test_spectra_three_variable_chain():
    g = Tdag(["1", "2", "3"], [("3", "1"), ("3", "2")])
    m = gaussian_from_tdag(g, seed=5)
    want = {"13": [1, 0, 1], "23": [0, 1, 1], "3": [0, 0, 1]}
    for s, spec in want.items():
        p = projector(m, m.ground.subset(s))
        assert np.allclose(p, np.diag(spec), atol=1e-9)
        assert np.allclose(np.sort(np.linalg.eigvalsh(p)), np.sort(spec), atol=1e-9)


def test_projector_laws(fig1, fig2):
    m = gaussian_from_tdag(fig2, seed=1)
    n = m.n
    assert np.allclose(projector(m, m.ground.full), np.eye(n))
    assert np.allclose(projector(m, m.ground.empty), 0)
    ps = {e: projector(m, e) for e in fig1.elements}
    for e, p in ps.items():
        assert np.allclose(p @ p, p, atol=1e-10)
        assert np.allclose(p, p.T, atol=1e-10)
        ind = np.diag([1.0 if lab in e.labels else 0.0 for lab in m.ground.labels])
        assert np.allclose(p, ind, atol=1e-10)
        assert np.allclose(p + complement_projector(m, m.ground.full - e), np.eye(n), atol=1e-10)
    for x, y in itertools.product(fig1.elements, repeat=2):
        assert np.abs(ps[x] @ ps[y] - ps[x & y]).max() < 1e-9


def test_gaussian_running_statement(fig2):
    m = gaussian_from_tdag(fig2, seed=0)
    g = m.ground
    s = stmt(g, "12", "45", "3")
    assert check_gaussian_ci(m, s)
    assert gaussian_ci_deviations(m, s)["schur"] < 1e-9
    q12 = complement_projector(m, g.subset("12"))
    q45 = complement_projector(m, g.subset("45"))
    assert np.abs(q12 @ q45).max() < 1e-9


def test_gaussian_dense_fails():
    rng = np.random.default_rng(11)
    m = GaussianModel(rng.normal(size=(3, 3)))
    assert not check_gaussian_ci(m, stmt(m.ground, "1", "2", "3"))


def test_gaussian_orthogonal_blocks():
    m = GaussianModel(np.diag([1.0, 2.0, 3.0]))
    assert check_gaussian_ci(m, stmt(m.ground, "1", "23"))


def test_gaussian_singular():
    with pytest.raises(NumericalError):
        GaussianModel([[1.0, 2.0], [2.0, 4.0]])


def _random_statement(rng, labels):
    pool = list(labels)
    rng.shuffle(pool)
    k = len(pool)
    i = rng.randint(1, k - 1)
    j = rng.randint(i + 1, k)
    c = [x for x in pool[j:] if rng.random() < 0.6]
    return pool[:i], pool[i:j], c


@pytest.mark.parametrize("seed", range(3))
def test_gaussian_agrees_with_separation(seed):
    rng = random.Random(seed)
    vertices, edges = random_tdag_edges(rng, 6, p=0.3)
    g = Tdag(vertices, edges)
    m = gaussian_from_tdag(g, seed=seed)
    for s in ci_statements(lattice_of_tdag(g)):
        assert check_gaussian_ci(m, s)
    false_seen = 0
    tries = 0
    while false_seen < 50 and tries < 5000:
        tries += 1
        a, b, c = _random_statement(rng, vertices)
        s = stmt(m.ground, a, b, c)
        expect = d_separated(vertices, edges, set(a), set(b), set(c))
        assert check_gaussian_ci(m, s) == expect, str(s)
        false_seen += not expect
    assert false_seen == 50


def test_disagreeing_criteria_raise(monkeypatch, fig2):
    import lattice_ci.ci as ci
    m = gaussian_from_tdag(fig2, seed=0)
    s = stmt(m.ground, "12", "45", "3")
    monkeypatch.setattr(ci, "gaussian_ci_deviations",
                        lambda *_: {"schur": 0.0, "commutator": 1.0, "projector": 0.0})
    with pytest.raises(ContractViolation):
        ci.check_gaussian_ci(m, s)


def test_fraction_table_round_trip():
    d = DiscreteJoint.from_probs([2], [Fraction(1, 3), Fraction(2, 3)], exact=True)
    assert d.probs() == [Fraction(1, 3), Fraction(2, 3)]
