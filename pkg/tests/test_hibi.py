import itertools
import random
from collections import Counter

import pytest

from lattice_ci import (
    DomainError,
    GroundSet,
    generator_g,
    hibi_generators,
    kernel_membership,
    lattice_from_generators,
    monomial_u,
    monomial_u_prime,
    saturated_chains,
    z_factorization,
)
from lattice_ci.hibi import HibiBinomial, g_generators, render_ideal
from lattice_ci.lattice import parse_family

from oracles import random_family


def z(*labels):
    return Counter({f"z_{x}": 1 for x in labels})


def test_monomial_u_running(fig1):
    g = fig1.ground
    assert str(monomial_u(fig1, g.subset("3"))) == "z_3*y_1*y_2*y_4*y_5"
    assert str(monomial_u(fig1, g.empty)) == "y_1*y_2*y_3*y_4*y_5"
    top = monomial_u(fig1, g.full)
    assert str(top) == "z_1*z_2*z_3*z_4*z_5" and not top.y_support
    with pytest.raises(DomainError):
        monomial_u(fig1, g.subset("1"))


def test_degree_identity(fig1):
    assert all(monomial_u(fig1, e).degree == 5 for e in fig1.elements)


def test_monomial_u_prime(fig1):
    g = fig1.ground
    assert str(monomial_u_prime(fig1, g.subset("23"))) == "z_2*z_3"
    assert str(monomial_u_prime(fig1, g.empty)) == "1"
    assert str(monomial_u_prime(fig1, g.subset("345"))) == "z_3*z_4*z_5"


def test_hibi_generators_running(fig1):
    gens = hibi_generators(fig1)
    pairs = {tuple(str(x) for x in b.lhs): tuple(str(x) for x in b.rhs) for b in gens}
    assert pairs[("23", "34")] == ("3", "234")
    assert pairs[("123", "345")] == ("3", "12345")
    incomparable = sum(1 for x, y in itertools.combinations(fig1.elements, 2)
                       if not (x <= y or y <= x))
    assert len(gens) == incomparable == 9
    assert "p_{23}*p_{34}-p_{3}*p_{234}" in {str(b) for b in gens}


def test_hibi_generators_chain():
    fam = parse_family("1,12,123")
    assert hibi_generators(lattice_from_generators(GroundSet("123"), fam)) == []


def test_generator_g(fig1):
    assert str(generator_g(fig1, "1")) == "z_1*z_2*z_3"
    assert str(generator_g(fig1, "3")) == "z_3"
    assert str(generator_g(fig1, "4")) == "z_3*z_4"
    l = lattice_from_generators(GroundSet("123"), [["1"]])
    with pytest.raises(DomainError):
        generator_g(l, "2")


def test_g_consistency(fig1):
    for g in g_generators(fig1):
        (label,) = g.increment.labels
        assert generator_g(fig1, label) == monomial_u_prime(fig1, g.element)
        assert not g.ambiguous


def test_multi_label_increment_flagged():
    l = lattice_from_generators(GroundSet("123"), [["1", "2"], ["1", "2", "3"]])
    flags = {str(g.increment): g.ambiguous for g in g_generators(l)}
    assert flags == {"12": True, "3": False}


def test_z_factorization(fig1):
    g = fig1.ground
    f = z_factorization(fig1, g.subset("123"))
    assert [str(x) for x in f.factors] == ["3", "2", "1"]
    assert [str(x) for x in f.chain] == ["", "3", "23", "123"]
    assert z_factorization(fig1, g.empty).factors == ()
    with pytest.raises(DomainError):
        z_factorization(fig1, g.subset("12"))


def test_chain_independence_234(fig1):
    target = fig1.ground.subset("234")
    products = set()
    for chain in saturated_chains(fig1, fig1.bottom, target):
        c = Counter()
        for a, b in zip(chain, chain[1:]):
            c.update(z(*(b - a).labels))
        products.add(frozenset(c.items()))
    assert products == {frozenset(z("2", "3", "4").items())}


def _chain_independent(l):
    for j in l.elements:
        want = Counter({f"z_{x}": 1 for x in j.labels})
        for chain in saturated_chains(l, l.bottom, j):
            got = Counter()
            for a, b in zip(chain, chain[1:]):
                got.update({f"z_{x}": 1 for x in (b - a).labels})
            if got != want:
                return False
    return True


@pytest.mark.parametrize("seed", range(15))
def test_random_lattices_kernel_and_chains(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    fam = random_family(rng, n, rng.randint(1, 4))
    l = lattice_from_generators(GroundSet([str(k) for k in range(1, n + 1)]), fam)
    assert all(kernel_membership(l, b) for b in hibi_generators(l))
    if len(l) <= 12:
        assert _chain_independent(l)


def test_kernel_membership_manual(fig1):
    g = fig1.ground
    b = HibiBinomial(g.subset("23"), g.subset("34"))
    assert kernel_membership(fig1, b)
    # z_2 z_3 . z_3 z_4 = z_3 . z_2 z_3 z_4
    lhs = Counter(monomial_u_prime(fig1, g.subset("23")).variables()) + \
        Counter(monomial_u_prime(fig1, g.subset("34")).variables())
    assert lhs == Counter({"z_2": 1, "z_3": 2, "z_4": 1})
    nested = HibiBinomial(g.subset("3"), g.subset("123"))
    assert nested.degenerate and kernel_membership(fig1, nested)


def test_render_ideal(fig1):
    text = render_ideal(hibi_generators(fig1))
    assert text.startswith("{p_{") and text.endswith("}")
    assert text.count(",") == 8
