"""Hub-structured time-series LCI models and their one-step time advance.

Series ``i`` at time ``s`` is the vertex ``"is"`` (``"i.s"`` once either index
reaches 10).  Each series depends on its own past and on the past of the hub
series.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .lattice import DEFAULT_CAP, DistributiveLattice, IndexSet
from .tdag import Tdag, ancestors, lattice_of_tdag


@dataclass(frozen=True)
class SeriesSpec:
    m: int
    t: int
    hub: int

    def __post_init__(self):
        if self.m < 1 or self.t < 1 or not 1 <= self.hub <= self.m:
            raise DomainError(f"invalid series spec {self}")

    def label(self, i: int, s: int) -> str:
        return f"{i}{s}" if self.m < 10 and self.t < 10 else f"{i}.{s}"

    def advanced(self) -> "SeriesSpec":
        return SeriesSpec(self.m, self.t + 1, self.hub)


@dataclass(frozen=True)
class UpdateStep:
    series: int
    old_top: IndexSet
    new_top: IndexSet
    innovation: IndexSet

    def __post_init__(self):
        if not self.innovation or self.new_top != self.old_top | self.innovation:
            raise DomainError("new top must extend the old top by a nonempty innovation")


def timeseries_tdag(spec: SeriesSpec) -> Tdag:
    vertices = [spec.label(i, s) for s in range(1, spec.t + 1) for i in range(1, spec.m + 1)]
    edges = []
    for s in range(1, spec.t + 1):
        for u in range(s + 1, spec.t + 1):
            for j in range(1, spec.m + 1):
                edges.append((spec.label(j, s), spec.label(j, u)))
                if j != spec.hub:
                    edges.append((spec.label(spec.hub, s), spec.label(j, u)))
    return Tdag(vertices, edges)


def timeseries_lattice(spec: SeriesSpec, cap: int = DEFAULT_CAP) -> DistributiveLattice:
    return lattice_of_tdag(timeseries_tdag(spec), cap)


def top_generators(spec: SeriesSpec) -> list[IndexSet]:
    """Ancestral set of each series at the final time point."""
    g = timeseries_tdag(spec)
    return [ancestors(g, spec.label(i, spec.t)) for i in range(1, spec.m + 1)]


def advance_time(spec: SeriesSpec) -> list[UpdateStep]:
    """Per-series innovation when the horizon grows from ``t`` to ``t + 1``."""
    nxt = spec.advanced()
    ground = timeseries_tdag(nxt).ground
    steps = []
    for i, (old, new) in enumerate(zip(top_generators(spec), top_generators(nxt)), start=1):
        old = ground.subset(old.labels)
        steps.append(UpdateStep(i, old, new, new - old))
    return steps


def innovation_history(spec: SeriesSpec) -> dict[int, list[IndexSet]]:
    """Innovations ``u_{i,1}, ..., u_{i,t}`` whose union is the top generator.

    The first entry is the time-1 generator itself; summing the logs of the
    z-products along the list reconstructs ``log g_{i,t}``.
    """
    ground = timeseries_tdag(spec).ground
    hist: dict[int, list[IndexSet]] = {i: [] for i in range(1, spec.m + 1)}
    prev = {i: ground.empty for i in hist}
    for s in range(1, spec.t + 1):
        tops = top_generators(SeriesSpec(spec.m, s, spec.hub))
        for i, top in enumerate(tops, start=1):
            top = ground.subset(top.labels)
            hist[i].append(top - prev[i])
            prev[i] = top
    return hist
