"""Regenerate the worked examples and compare them with vendored golden files."""
from __future__ import annotations

import difflib
from importlib import resources

from .alexander import alexander_dual, ideal_M_Q
from .hibi import monomial_u
from .io import tdag_to_dot
from .lattice import GroundSet, join_irreducibles, lattice_from_generators, parse_family
from .tdag import labelled_ji_poset, tdag_of_lattice
from .timeseries import SeriesSpec, timeseries_lattice, timeseries_tdag

GOLDEN = {
    "fig1": "fig1.txt",
    "fig2": "fig2.dot",
    "fig3": "fig3.dot",
    "fig4": "fig4.txt",
    "ex-dual": "ex-dual.txt",
    "ex-timeseries": "ex-timeseries.txt",
}


def running_example():
    fam = parse_family("123,234,345")
    return lattice_from_generators(GroundSet.from_sets(fam), fam)


def _name(s) -> str:
    return str(s) if s else "{}"


def render_fig1() -> str:
    l = running_example()
    lines = ["# elements"]
    lines += [f"{_name(e)}\t{monomial_u(l, e)}" for e in l.elements]
    lines.append("# join-irreducibles")
    lines += [str(j) for j in join_irreducibles(l).elements]
    return "\n".join(lines) + "\n"


def render_fig2() -> str:
    return tdag_to_dot(tdag_of_lattice(running_example()))


def render_fig3() -> str:
    return tdag_to_dot(timeseries_tdag(SeriesSpec(3, 3, 2)))


def render_fig4() -> str:
    q = labelled_ji_poset(timeseries_lattice(SeriesSpec(3, 4, 2)))
    lines = ["# join-irreducibles"]
    lines += [f"{name}\t{j}" for name, j in zip(q.names, q.elements)]
    lines.append("# covers")
    lines += [f"{q.names[i]} -- {q.names[j]}" for i, j in sorted(q.covers)]
    return "\n".join(lines) + "\n"


def render_ex_dual() -> str:
    return alexander_dual(ideal_M_Q(labelled_ji_poset(running_example()))).to_text()


def render_ex_timeseries() -> str:
    l = timeseries_lattice(SeriesSpec(3, 3, 2))
    dual = alexander_dual(ideal_M_Q(labelled_ji_poset(l)))
    lines = [f"# lattice ({len(l)} elements)"]
    lines += [_name(e) for e in l.elements]
    lines.append(f"# dual ({len(dual)} generators)")
    return "\n".join(lines) + "\n" + dual.to_text()


RENDER = {
    "fig1": render_fig1,
    "fig2": render_fig2,
    "fig3": render_fig3,
    "fig4": render_fig4,
    "ex-dual": render_ex_dual,
    "ex-timeseries": render_ex_timeseries,
}


def golden(name: str) -> str:
    return resources.files("lattice_ci").joinpath("golden", GOLDEN[name]).read_text()


def diff(name: str) -> str:
    """Unified diff between golden and regenerated output; empty when identical."""
    expected, actual = golden(name), RENDER[name]()
    return "".join(difflib.unified_diff(
        expected.splitlines(keepends=True), actual.splitlines(keepends=True),
        fromfile=f"golden/{GOLDEN[name]}", tofile=f"generated/{GOLDEN[name]}"))
