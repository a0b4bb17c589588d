"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a safety cap was
exceeded, 4 a round-trip or cross-check contract was violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import repro
from .alexander import (
    GENERATOR_CAP,
    MonomialIdeal,
    alexander_dual,
    alexander_dual_hitting,
    alexander_dual_intersect,
    ideal_M_Q,
    parse_ideal_text,
    tdag_from_dual,
)
from .ci import (
    CI_TOL,
    PROJECTOR_TOL,
    check_gaussian_ci,
    ci_deviation,
    ci_statements,
    complement_projector,
    gaussian_ci_deviations,
    gaussian_from_tdag,
    hibi_deviation,
    joint_from_tdag,
    projector,
)
from .errors import ContractViolation, LatticeCIError, ResourceError
from .hibi import g_generators, hibi_generators, render_ideal, z_factorization
from .info import (
    chain_decomposition,
    edge_increments,
    rota_inclusion_exclusion,
    running_intersection_check,
    valuation_deviation,
    valuation_from_joint,
)
from .io import (
    hasse_dot,
    ideal_from_json,
    ideal_to_json,
    joint_from_json,
    lattice_from_json,
    lattice_to_json,
    poset_to_json,
    tdag_from_dot,
    tdag_from_json,
    tdag_to_dot,
    tdag_to_json,
    valuation_to_json,
)
from .lattice import (
    DEFAULT_CAP,
    DistributiveLattice,
    GroundSet,
    join_irreducibles,
    lattice_from_generators,
    parse_family,
)
from .tdag import (
    Tdag,
    labelled_ji_poset,
    lattice_of_tdag,
    reverse_tdag,
    tdag_of_lattice,
)
from .timeseries import SeriesSpec, advance_time, innovation_history, timeseries_lattice, timeseries_tdag


class UsageError(LatticeCIError):
    pass


def _name(s) -> str:
    return str(s) if s else "{}"


# model sources

def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _load_tdag(path: str, close: bool) -> Tdag:
    text = _read(path)
    if text.lstrip().startswith("{"):
        return tdag_from_json(json.loads(text), close=close)
    return tdag_from_dot(text, close=close)


def _spec(args) -> SeriesSpec | None:
    if getattr(args, "series", None) is None:
        return None
    return SeriesSpec(args.series, args.horizon, args.hub)


def load_lattice(args) -> DistributiveLattice:
    if getattr(args, "gens", None) is not None:
        fam = parse_family(args.gens)
        ground = GroundSet(args.ground.split(",")) if args.ground else GroundSet.from_sets(fam)
        return lattice_from_generators(ground, fam, args.cap)
    if getattr(args, "gens_file", None):
        obj = json.loads(_read(args.gens_file))
        if isinstance(obj, dict) and "elements" in obj:
            return lattice_from_json(obj)
        fam = obj["gens"] if isinstance(obj, dict) else obj
        fam = [[str(x) for x in g] for g in fam]
        ground = GroundSet(obj["ground"]) if isinstance(obj, dict) and "ground" in obj \
            else GroundSet.from_sets(fam)
        return lattice_from_generators(ground, fam, args.cap)
    if getattr(args, "tdag", None):
        return lattice_of_tdag(_load_tdag(args.tdag, args.close), args.cap)
    spec = _spec(args)
    if spec is not None:
        return timeseries_lattice(spec, args.cap)
    raise UsageError("no model given: use --gens, --gens-file, --tdag or --series")


def load_model_tdag(args) -> Tdag:
    if getattr(args, "tdag", None):
        return _load_tdag(args.tdag, args.close)
    spec = _spec(args)
    if spec is not None and getattr(args, "gens", None) is None:
        return timeseries_tdag(spec)
    return tdag_of_lattice(load_lattice(args))


# output

def emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _ideal_out(args, m: MonomialIdeal) -> str:
    if args.format == "json":
        return _json(ideal_to_json(m))
    return m.to_text()


# subcommands

def cmd_lattice(args) -> int:
    l = load_lattice(args)
    q = join_irreducibles(l)
    if args.format == "json":
        obj = lattice_to_json(l)
        obj["join_irreducibles"] = [list(j.labels) for j in q.elements]
        emit(args, _json(obj))
    elif args.format == "dot":
        emit(args, hasse_dot(l))
    else:
        lines = [f"# {len(l)} elements"]
        lines += [_name(e) for e in l.elements]
        lines.append("# covers")
        lines += [f"{_name(l.elements[i])} < {_name(l.elements[j])}" for i, j in l.covers]
        lines.append("# join-irreducibles")
        lines += [str(j) for j in q.elements]
        emit(args, "\n".join(lines))
    return 0


def cmd_hibi(args) -> int:
    l = load_lattice(args)
    gens = hibi_generators(l)
    gs = g_generators(l)
    if args.format == "json":
        emit(args, _json({
            "binomials": [str(b) for b in gens],
            "g": [{"increment": list(g.increment.labels), "monomial": str(g.monomial),
                   "ambiguous": g.ambiguous} for g in gs],
            "z_factorizations": {_name(e): [list(f.labels) for f in z_factorization(l, e).factors]
                                 for e in l.elements},
        }))
        return 0
    if args.cas:
        emit(args, render_ideal(gens))
        return 0
    lines = [f"# {len(gens)} binomials"] + [str(b) for b in gens]
    lines.append("# g generators")
    for g in gs:
        flag = "  # several labels enter here" if g.ambiguous else ""
        lines.append(f"g_{{{g.increment}}} = {g.monomial}{flag}")
    lines.append("# z factorizations")
    lines += [f"p_{{{_name(e)}}} = {z_factorization(l, e)}" for e in l.elements]
    emit(args, "\n".join(lines))
    return 0


def cmd_ideal(args) -> int:
    l = load_lattice(args)
    emit(args, _ideal_out(args, ideal_M_Q(labelled_ji_poset(l), args.cap)))
    return 0


def _load_ideal(path: str) -> MonomialIdeal:
    text = _read(path)
    if text.lstrip().startswith("{"):
        return ideal_from_json(json.loads(text))
    return parse_ideal_text(text)


def cmd_dual(args) -> int:
    if args.ideal:
        m = _load_ideal(args.ideal)
    else:
        m = ideal_M_Q(labelled_ji_poset(load_lattice(args)), args.cap)
    cap = args.cap if args.cap != DEFAULT_CAP else GENERATOR_CAP
    if args.algorithm == "intersect":
        d = alexander_dual_intersect(m, cap)
    elif args.algorithm == "hitting":
        d = alexander_dual_hitting(m, cap)
    else:
        d = alexander_dual(m, cap)
    emit(args, _ideal_out(args, d))
    return 0


def _tdag_out(args, g: Tdag) -> str:
    if args.format == "json":
        return _json(tdag_to_json(g))
    if args.format == "dot":
        return tdag_to_dot(g)
    return "\n".join([f"# {len(g.vertices)} vertices, {len(g.edges)} edges"]
                     + [f"{a} -> {b}" for a, b in g.sorted_edges()])


def cmd_tdag(args) -> int:
    if args.from_dual:
        g = tdag_from_dual(_load_ideal(args.from_dual))
    else:
        g = load_model_tdag(args)
    if args.reverse:
        g = reverse_tdag(g)
    emit(args, _tdag_out(args, g))
    return 0


def cmd_ci(args) -> int:
    stmts = ci_statements(load_lattice(args))
    if args.format == "json":
        emit(args, _json([{"a": list(s.a.labels), "b": list(s.b.labels), "c": list(s.c.labels),
                           "text": str(s)} for s in stmts]))
    else:
        emit(args, "\n".join(str(s) for s in stmts))
    return 0


def _check(report: list, kind: str, name: str, dev: float, tol: float) -> None:
    report.append({"check": kind, "name": name, "deviation": float(dev), "pass": bool(dev <= tol)})


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else CI_TOL
    report: list[dict] = []
    if args.joint:
        obj = json.loads(_read(args.joint))
        d = joint_from_json(obj)
        l = _joint_lattice(args, obj, d)
    else:
        g = load_model_tdag(args)
        l = lattice_of_tdag(g, args.cap)
        if not args.gaussian:
            d = joint_from_tdag(g, args.cards, args.seed)
    if args.gaussian:
        g = tdag_of_lattice(l)
        m = gaussian_from_tdag(g, args.seed)
        ptol = args.tol if args.tol is not None else PROJECTOR_TOL
        mg = m.ground
        ps = {e: projector(m, mg.subset(e.labels)) for e in l.elements}
        for a, x in enumerate(l.elements):
            for y in l.elements[a + 1:]:
                dev = abs(ps[x] @ ps[y] - ps[x & y]).max()
                _check(report, "projector-meet", f"P_{_name(x)} P_{_name(y)} = P_{_name(x & y)}", dev, ptol)
        for s in ci_statements(l):
            s2 = type(s)(mg.subset(s.a.labels), mg.subset(s.b.labels), mg.subset(s.c.labels))
            devs = gaussian_ci_deviations(m, s2)
            check_gaussian_ci(m, s2, tol)  # raises if the three criteria disagree
            for k, v in devs.items():
                _check(report, f"gaussian-{k}", str(s), v, tol)
        for s in ci_statements(l):
            # sides covering every variable leave orthogonal complements
            if (s.a | s.b | s.c) != l.top:
                continue
            i = mg.subset((s.a | s.c).labels)
            j = mg.subset((s.b | s.c).labels)
            qi = complement_projector(m, i.complement())
            qj = complement_projector(m, j.complement())
            _check(report, "complement-product",
                   f"Q_{_name(i.complement())} Q_{_name(j.complement())}", abs(qi @ qj).max(), ptol)
    else:
        # l is over the joint's own ground set on this branch
        for a, x in enumerate(l.elements):
            for y in l.elements[a + 1:]:
                if not (x <= y or y <= x):
                    _check(report, "hibi", f"p_{{{_name(x)}}}*p_{{{_name(y)}}}", hibi_deviation(d, x, y), tol)
        for s in ci_statements(l):
            _check(report, "ci", str(s), ci_deviation(d, s), tol)
        if d.positive:
            v = valuation_from_joint(d, l)
            _check(report, "valuation", "H(x&y)+H(x|y)=H(x)+H(y)", valuation_deviation(v, l), tol)
            sets = _minimal_generators(l)
            if len(sets) > 1 and running_intersection_check(sets):
                dev = abs(rota_inclusion_exclusion(v, sets) - v[l.top])
                _check(report, "rota", " + ".join(_name(s) for s in sets), dev, tol)
    ok = all(r["pass"] for r in report)
    worst = max((r["deviation"] for r in report), default=0.0)
    failing = [r["name"] for r in report if not r["pass"]]
    if args.format == "json":
        emit(args, _json({"pass": ok, "max_deviation": worst, "failing": failing, "checks": report}))
    else:
        lines = [f"{'PASS' if r['pass'] else 'FAIL'} {r['check']:<20} {r['name']}  dev={r['deviation']:.3e}"
                 for r in report]
        lines.append(f"{'PASS' if ok else 'FAIL'}: {len(report)} checks, max deviation {worst:.3e}")
        emit(args, "\n".join(lines))
    return 0 if ok else 1


def _has_source(args) -> bool:
    return any(getattr(args, k, None) is not None for k in ("gens", "gens_file", "tdag", "series"))


def _joint_lattice(args, obj, d) -> DistributiveLattice:
    """Model lattice for a joint file: explicit flags win, else the file's ``gens``."""
    if _has_source(args):
        l = load_lattice(args)
    elif isinstance(obj, dict) and "gens" in obj:
        fam = [[str(x) for x in g] for g in obj["gens"]]
        l = lattice_from_generators(d.ground, fam, args.cap)
    else:
        raise UsageError("--joint needs a model: add --gens, --tdag, or a 'gens' key in the file")
    return DistributiveLattice(d.ground, [d.ground.subset(e.labels) for e in l.elements])


def _minimal_generators(l: DistributiveLattice):
    """Join-irreducibles that are maximal among join-irreducibles, in canonical order."""
    ji = join_irreducibles(l).elements
    return [j for j in ji if not any(j < k for k in ji)]


def cmd_timeseries(args) -> int:
    spec = SeriesSpec(args.series, args.horizon, args.hub)
    g = timeseries_tdag(spec)
    if args.format == "dot":
        emit(args, tdag_to_dot(g))
        return 0
    l = timeseries_lattice(spec, args.cap)
    q = labelled_ji_poset(l)
    tops = [q.elements[q.names.index(spec.label(i, spec.t))] for i in range(1, spec.m + 1)]
    steps = advance_time(spec) if args.advance else []
    if args.format == "json":
        obj = {
            "spec": {"series": spec.m, "horizon": spec.t, "hub": spec.hub},
            "elements": len(l),
            "tdag": tdag_to_json(g),
            "join_irreducibles": poset_to_json(q),
            "top_generators": [list(t.labels) for t in tops],
        }
        if args.advance:
            obj["innovations"] = [{"series": s.series, "old_top": list(s.old_top.labels),
                                   "new_top": list(s.new_top.labels),
                                   "innovation": list(s.innovation.labels)} for s in steps]
        emit(args, _json(obj))
        return 0
    lines = [f"# series={spec.m} horizon={spec.t} hub={spec.hub}",
             f"elements: {len(l)}", f"tdag edges: {len(g.edges)}",
             f"join-irreducibles: {len(q)}", "# top generators"]
    lines += [f"g_{spec.label(i, spec.t)} = {{{t}}}" for i, t in enumerate(tops, start=1)]
    if args.advance:
        lines.append(f"# advance to t={spec.t + 1}")
        for s in steps:
            z = " ".join(f"z_{x}" for x in s.innovation)
            lines.append(f"series {s.series}: p_{{{s.new_top}}} = {z} * p_{{{s.old_top}}}")
        lines.append("# log g_{i,t} as cumulative innovations")
        for i, hist in innovation_history(spec.advanced()).items():
            terms = " + ".join("log(" + "*".join(f"z_{x}" for x in u) + ")" for u in hist)
            lines.append(f"log g_{spec.advanced().label(i, spec.t + 1)} = {terms}")
    emit(args, "\n".join(lines))
    return 0


def cmd_entropy(args) -> int:
    if args.joint:
        obj = json.loads(_read(args.joint))
        d = joint_from_json(obj)
        l = _joint_lattice(args, obj, d)
    else:
        g = load_model_tdag(args)
        l = lattice_of_tdag(g, args.cap)
        d = joint_from_tdag(g, args.cards, args.seed)
    v = valuation_from_joint(d, l)
    if args.format == "json":
        emit(args, _json(valuation_to_json(v)))
    elif args.format == "dot":
        inc = edge_increments(v, l)
        labels = {(i, j): f"{inc[(l.elements[i], l.elements[j])]:+.6f}" for i, j in l.covers}
        emit(args, hasse_dot(l, labels, name="information"))
    else:
        lines = [f"H({_name(e)}) = {v[e]:.12f}" for e in l.elements]
        lines.append("# canonical chain to the top")
        chain = z_factorization(l, l.top).chain
        for incr, x in chain_decomposition(v, chain):
            lines.append(f"+{{{incr}}}: {x:.12f}")
        emit(args, "\n".join(lines))
    return 0


def cmd_pipeline(args) -> int:
    l = load_lattice(args)
    q = labelled_ji_poset(l)
    binomials = hibi_generators(l)
    mq = ideal_M_Q(q, args.cap)
    dual = alexander_dual(mq)
    recovered = tdag_from_dual(dual)
    expected = tdag_of_lattice(l)
    stmts = ci_statements(l)
    ok = recovered == expected
    if args.format == "json":
        emit(args, _json({
            "elements": len(l), "binomials": [str(b) for b in binomials],
            "M_Q": mq.to_text().split(), "dual": dual.to_text().split(),
            "tdag": tdag_to_json(recovered), "ci": [str(s) for s in stmts],
            "round_trip": "PASS" if ok else "FAIL",
        }))
    else:
        lines = [f"# lattice: {len(l)} elements",
                 f"# Hibi binomials: {len(binomials)}"] + [str(b) for b in binomials]
        lines += [f"# M_Q: {len(mq)} generators"] + mq.to_text().split()
        lines += [f"# dual: {len(dual)} generators"] + dual.to_text().split()
        lines += [f"# recovered TDAG: {len(recovered.edges)} edges"]
        lines += [f"{a} -> {b}" for a, b in recovered.sorted_edges()]
        lines += [f"# CI statements: {len(stmts)}"] + [str(s) for s in stmts]
        lines.append(f"round trip: {'PASS' if ok else 'FAIL'}")
        emit(args, "\n".join(lines))
    if not ok:
        raise ContractViolation("TDAG recovered from the dual differs from the lattice TDAG")
    return 0


def cmd_repro(args) -> int:
    names = list(repro.GOLDEN) if args.name == "all" else [args.name]
    status = 0
    for name in names:
        d = repro.diff(name)
        if d:
            sys.stdout.write(d)
            status = 1
        elif args.name != "all":
            emit(args, repro.RENDER[name]())
        else:
            sys.stdout.write(f"{name}: identical\n")
    return status


# parser

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", default=None)
    return p


def _source() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("model source")
    g.add_argument("--gens", help="generators, e.g. 123,234,345 or 11,21;21,22")
    g.add_argument("--ground", help="comma-separated ground labels (default: labels in --gens)")
    g.add_argument("--gens-file", help="JSON list of generator label lists, or lattice JSON")
    g.add_argument("--tdag", help="TDAG as JSON or DOT")
    g.add_argument("--close", action="store_true", help="transitively close --tdag input")
    g.add_argument("--series", type=int)
    g.add_argument("--horizon", type=int, default=3)
    g.add_argument("--hub", type=int, default=2)
    return p


def build_parser() -> argparse.ArgumentParser:
    common, source = _common(), _source()
    parser = argparse.ArgumentParser(prog="lattice-ci", description=__doc__.splitlines()[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, *extra):
        p = sub.add_parser(name, parents=[common, *extra], help=help_)
        p.set_defaults(func=func)
        return p

    add("lattice", cmd_lattice, "close generators into a lattice", source)
    p = add("hibi", cmd_hibi, "Hibi binomials, g generators, z factorizations", source)
    p.add_argument("--cas", action="store_true", help="brace-delimited ideal for CAS input")
    add("ideal", cmd_ideal, "monomial ideal M_Q of the join-irreducible poset", source)
    p = add("dual", cmd_dual, "Alexander dual", source)
    p.add_argument("--ideal", help="ideal as text (one generator per line) or JSON")
    p.add_argument("--algorithm", choices=["both", "intersect", "hitting"], default="both")
    p = add("tdag", cmd_tdag, "TDAG of a lattice or recovered from a dual", source)
    p.add_argument("--from-dual", help="ideal file whose generators are z_i*y_j")
    p.add_argument("--reverse", action="store_true")
    add("ci", cmd_ci, "conditional independence statements", source)
    p = add("verify", cmd_verify, "numerical oracles", source)
    p.add_argument("--sample-tdag", action="store_true", help="sample a joint from the model TDAG")
    p.add_argument("--joint", help="discrete joint JSON {cards, probs}")
    p.add_argument("--gaussian", action="store_true")
    p.add_argument("--cards", type=int, default=2)
    p = add("timeseries", cmd_timeseries, "hub-structured time-series model")
    p.add_argument("--series", type=int, default=3)
    p.add_argument("--horizon", type=int, default=3)
    p.add_argument("--hub", type=int, default=2)
    p.add_argument("--advance", action="store_true")
    p = add("entropy", cmd_entropy, "Shannon information valuation", source)
    p.add_argument("--joint", help="discrete joint JSON {cards, probs}")
    p.add_argument("--cards", type=int, default=2)
    add("pipeline", cmd_pipeline, "lattice -> Hibi -> M_Q -> dual -> TDAG -> CI", source)
    p = add("repro", cmd_repro, "regenerate a worked example and diff against its golden file")
    p.add_argument("name", choices=[*repro.GOLDEN, "all"])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return 4
    except (LatticeCIError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
