"""Time the compiled bitmask kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each workload is run through both backends on identical inputs; results are
compared before any timing is reported.
"""
from __future__ import annotations

import argparse
import sys
import timeit

from lattice_ci import _pykernels
from lattice_ci.alexander import ideal_M_Q
from lattice_ci.tdag import labelled_ji_poset
from lattice_ci.timeseries import SeriesSpec, timeseries_lattice, timeseries_tdag

try:
    from lattice_ci import _kernels
except ImportError:
    _kernels = None

CAP = 10**7


def _below(spec: SeriesSpec) -> list[int]:
    g = timeseries_tdag(spec)
    order = g.topological_order()
    pos = {v: k for k, v in enumerate(order)}
    return [sum(1 << pos[a] for a, b in g.edges if b == v) for v in order]


def workloads():
    small = SeriesSpec(3, 3, 2)
    big = SeriesSpec(5, 5, 2)
    l = timeseries_lattice(small)
    mq = ideal_M_Q(labelled_ji_poset(l))
    gens = [e.bits for e in l.elements if e]
    lbig = timeseries_lattice(big)
    yield "order_ideals 5x5", "order_ideals", (_below(big), CAP)
    yield "close_family 3x3", "close_family", (gens, CAP)
    yield "close_family 5x5", "close_family", ([j.bits for j in labelled_ji_poset(lbig).elements], CAP)
    yield "cover_pairs 5x5", "cover_pairs", ([e.bits for e in lbig.elements],)
    yield "transversals M_Q 3x3", "transversals", (list(mq.gens), CAP)
    yield "minimize 5x5", "minimize", ([e.bits for e in lbig.elements],)
    pairs = [list(mq.gens[:k]) for k in (12, 24)]
    yield "pairwise_or_min", "pairwise_or_min", (pairs[0], pairs[1], CAP)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'workload':<24}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for label, fn, inputs in workloads():
        py, cy = getattr(_pykernels, fn), getattr(_kernels, fn)
        if sorted(py(*inputs)) != sorted(cy(*inputs)):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 4
        tp = min(timeit.repeat(lambda: py(*inputs), number=1, repeat=args.repeat)) * 1e3
        tc = min(timeit.repeat(lambda: cy(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:<24}{tp:>12.3f}{tc:>12.3f}{tp / max(tc, 1e-9):>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
