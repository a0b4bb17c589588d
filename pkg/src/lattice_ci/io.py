"""JSON, DOT and text formats for the package's value types."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Mapping

from .alexander import MonomialIdeal
from .ci import DiscreteJoint, GaussianModel
from .errors import FormatError
from .lattice import DistributiveLattice, GroundSet, IndexSet, Poset, split_labels
from .tdag import Tdag


def _set_name(s: IndexSet) -> str:
    return str(s) if s else "{}"


# lattices and posets

def ground_to_json(g: GroundSet) -> list[str]:
    return list(g.labels)


def lattice_to_json(l: DistributiveLattice) -> dict[str, Any]:
    return {
        "ground": list(l.ground.labels),
        "elements": [list(e.labels) for e in l.elements],
        "covers": [list(c) for c in l.covers],
    }


def lattice_from_json(obj: Mapping[str, Any]) -> DistributiveLattice:
    try:
        ground = GroundSet(obj["ground"])
        elements = [ground.subset([str(x) for x in e]) for e in obj["elements"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed lattice JSON: {exc}") from exc
    return DistributiveLattice(ground, elements)


def poset_to_json(q: Poset) -> dict[str, Any]:
    if q.elements and all(isinstance(e, IndexSet) for e in q.elements):
        ground = list(q.elements[0].ground.labels)
        elements = [list(e.labels) for e in q.elements]
    else:
        ground = list(q.names)
        elements = [[n] for n in q.names]
    return {"ground": ground, "elements": elements, "covers": [list(c) for c in q.covers]}


def poset_from_json(obj: Mapping[str, Any]) -> Poset:
    """Label poset from ``{"ground": [...], "covers": [[i, j], ...]}``."""
    try:
        names = [str(x) for x in obj["ground"]]
        pairs = [(int(i), int(j)) for i, j in obj.get("covers", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed poset JSON: {exc}") from exc
    return Poset.from_pairs(names, pairs, names)


def hasse_dot(l: DistributiveLattice, edge_labels: Mapping[tuple[int, int], str] | None = None,
              name: str = "lattice") -> str:
    """Undirected Hasse diagram, bottom to top, one rank per cardinality."""
    lines = [f"graph {name} {{", "  rankdir=BT;"]
    ranks: dict[int, list[int]] = {}
    for k, e in enumerate(l.elements):
        ranks.setdefault(len(e), []).append(k)
        lines.append(f'  n{k} [label="{_set_name(e)}"];')
    for r in sorted(ranks):
        lines.append("  { rank=same; " + " ".join(f"n{k};" for k in ranks[r]) + " }")
    for i, j in l.covers:
        attr = ""
        if edge_labels and (i, j) in edge_labels:
            attr = f' [label="{edge_labels[(i, j)]}"]'
        lines.append(f"  n{i} -- n{j}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_dot(q: Poset, name: str = "poset") -> str:
    lines = [f"graph {name} {{", "  rankdir=BT;"]
    for k, nm in enumerate(q.names):
        lines.append(f'  n{k} [label="{nm}"];')
    for i, j in q.covers:
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# TDAGs

def tdag_to_json(g: Tdag) -> dict[str, Any]:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.sorted_edges()]}


def tdag_from_json(obj: Mapping[str, Any], close: bool = False) -> Tdag:
    try:
        return Tdag(obj["vertices"], [tuple(e) for e in obj["edges"]], close=close)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed TDAG JSON: {exc}") from exc


def tdag_to_dot(g: Tdag, name: str = "tdag") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for a, b in g.sorted_edges():
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_EDGE = re.compile(r'"?([^"\s;>-]+)"?\s*->\s*"?([^"\s;\[]+)"?')
_DOT_NODE = re.compile(r'^\s*"?([^"\s;\[{}=]+)"?\s*(\[[^\]]*\])?\s*;?\s*$')


def tdag_from_dot(text: str, close: bool = False) -> Tdag:
    """Read ``a -> b`` edges and bare node statements from a DOT digraph."""
    if "digraph" not in text:
        raise FormatError("expected a DOT digraph")
    body = text[text.index("{") + 1: text.rindex("}")]
    vertices: list[str] = []
    edges = []
    for stmt in re.split(r"[;\n]", body):
        stmt = stmt.strip()
        if not stmt or "=" in stmt.split("[")[0]:
            continue
        m = _DOT_EDGE.search(stmt)
        if m:
            a, b = m.groups()
            edges.append((a, b))
            for v in (a, b):
                if v not in vertices:
                    vertices.append(v)
            continue
        m = _DOT_NODE.match(stmt)
        if m and m.group(1) not in ("node", "edge", "graph"):
            if m.group(1) not in vertices:
                vertices.append(m.group(1))
    return Tdag(vertices, edges, close=close)


# ideals

def ideal_to_json(m: MonomialIdeal) -> dict[str, Any]:
    return {"vars": list(m.variables), "gens": m.exponents()}


def ideal_from_json(obj: Mapping[str, Any]) -> MonomialIdeal:
    try:
        return MonomialIdeal.from_exponents(obj["vars"], obj["gens"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed ideal JSON: {exc}") from exc


# distributions

def joint_to_json(d: DiscreteJoint) -> dict[str, Any]:
    probs = [str(p) if d.exact else float(p) for p in d.probs()]
    return {"labels": list(d.ground.labels), "cards": list(d.cards), "probs": probs}


def joint_from_json(obj: Mapping[str, Any]) -> DiscreteJoint:
    try:
        return DiscreteJoint.from_probs(obj["cards"], obj["probs"], obj.get("labels"))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed joint JSON: {exc}") from exc


def gaussian_to_json(m: GaussianModel) -> dict[str, Any]:
    return {"labels": list(m.ground.labels), "rows": m.factor.tolist()}


def gaussian_from_json(obj) -> GaussianModel:
    if isinstance(obj, list):
        return GaussianModel(obj)
    labels = obj.get("labels")
    return GaussianModel(obj["rows"], GroundSet(labels) if labels else None)


# valuations

def valuation_to_json(v: Mapping[IndexSet, float]) -> dict[str, float]:
    return {str(k): float(x) for k, x in sorted(v.items(), key=lambda kv: kv[0].key)}


def valuation_from_json(obj: Mapping[str, Any], ground: GroundSet):
    from .info import Valuation

    out = Valuation()
    for k, x in obj.items():
        out[ground.subset(split_labels(k, ground.single_char))] = float(Fraction(str(x)))
    return out
