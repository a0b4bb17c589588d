from collections import Counter

import pytest

from lattice_ci import (
    CiStatement,
    DomainError,
    Poset,
    ResourceError,
    SeriesSpec,
    advance_time,
    check_ci,
    ci_statements,
    joint_from_tdag,
    lattice_from_generators,
    order_ideals,
    timeseries_lattice,
    timeseries_tdag,
)
from lattice_ci.hibi import monomial_u_prime
from lattice_ci.info import running_intersection_check
from lattice_ci.timeseries import innovation_history, top_generators

from oracles import count_ideals, transitive_closure


def test_tdag_332():
    g = timeseries_tdag(SeriesSpec(3, 3, 2))
    assert len(g.edges) == 15
    within = {(f"{i}1", f"{i}3") for i in (1, 2, 3)}
    assert within <= g.edges
    for e in [("21", "12"), ("21", "13"), ("21", "32"), ("21", "33"), ("22", "13"), ("22", "33")]:
        assert e in g.edges
    assert transitive_closure(g.vertices, g.edges) == set(g.edges)


def test_small_specs():
    assert timeseries_tdag(SeriesSpec(1, 2, 1)).edges == {("11", "12")}
    assert timeseries_tdag(SeriesSpec(3, 1, 2)).edges == frozenset()
    with pytest.raises(DomainError):
        SeriesSpec(2, 2, 3)


def test_lattice_332(ts332):
    assert len(ts332) == 45
    tops = [set(t.labels) for t in top_generators(SeriesSpec(3, 3, 2))]
    assert tops == [{"11", "12", "13", "21", "22"}, {"21", "22", "23"}, {"21", "22", "31", "32", "33"}]
    for t in tops:
        assert ts332.ground.subset(t) in ts332


def test_single_series_chain():
    for t in range(1, 5):
        assert len(timeseries_lattice(SeriesSpec(1, t, 1))) == t + 1


def test_221_against_recursive_counter():
    g = timeseries_tdag(SeriesSpec(2, 2, 1))
    less = lambda a, b: (a, b) in g.edges
    assert len(timeseries_lattice(SeriesSpec(2, 2, 1))) == count_ideals(g.vertices, less)


def test_cap():
    with pytest.raises(ResourceError):
        timeseries_lattice(SeriesSpec(4, 4, 2), cap=100)


def test_advance_time():
    steps = advance_time(SeriesSpec(3, 3, 2))
    assert [sorted(s.innovation.labels) for s in steps] == [["14", "23"], ["24"], ["23", "34"]]
    for s in steps:
        assert s.new_top == s.old_top | s.innovation


def test_innovation_soundness():
    spec = SeriesSpec(3, 3, 2)
    l = timeseries_lattice(spec.advanced())
    for s in advance_time(spec):
        new = Counter(monomial_u_prime(l, s.new_top).variables())
        old = Counter(monomial_u_prime(l, s.old_top).variables())
        assert new == old + Counter(f"z_{x}" for x in s.innovation.labels)


def test_consistency_with_generators():
    spec = SeriesSpec(3, 3, 2)
    nxt = timeseries_lattice(spec.advanced())
    tops = top_generators(spec.advanced())
    # the top generators alone do not close to the full lattice; every join-irreducible does
    ji = [t for s in range(1, spec.t + 2) for t in top_generators(SeriesSpec(3, s, 2))]
    rebuilt = lattice_from_generators(nxt.ground, [nxt.ground.subset(t.labels) for t in ji])
    assert rebuilt == nxt
    assert all(t in nxt for t in tops)


def test_innovation_history_reconstructs_top():
    spec = SeriesSpec(3, 4, 2)
    for i, hist in innovation_history(spec).items():
        union = hist[0]
        for u in hist[1:]:
            assert union.isdisjoint(u)
            union = union | u
        assert union == top_generators(spec)[i - 1]


def test_headline_statement():
    spec = SeriesSpec(3, 3, 2)
    g = timeseries_tdag(spec)
    d = joint_from_tdag(g, seed=0)
    gr = d.ground
    s = CiStatement(gr.subset(["11", "12", "13"]), gr.subset(["31", "32", "33"]), gr.subset(["21", "22"]))
    assert check_ci(d, s, 1e-10)
    l = timeseries_lattice(spec)
    assert s in ci_statements(l)
    assert all(check_ci(d, x, 1e-10) for x in ci_statements(l))


def test_monotone_growth():
    counts = [[len(timeseries_lattice(SeriesSpec(m, t, 1))) for t in range(1, 4)] for m in range(1, 4)]
    for row in counts:
        assert row == sorted(row)
    for col in zip(*counts):
        assert list(col) == sorted(col)


def test_rip_on_time_series_generators():
    spec = SeriesSpec(3, 3, 2)
    tops = top_generators(spec)
    assert running_intersection_check(tops)


def test_order_ideals_of_vertex_poset(ts332):
    g = timeseries_tdag(SeriesSpec(3, 3, 2))
    pos = {v: k for k, v in enumerate(g.vertices)}
    q = Poset.from_pairs(g.vertices, [(pos[a], pos[b]) for a, b in g.edges])
    assert len(order_ideals(q)) == len(ts332)
