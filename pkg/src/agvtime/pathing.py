"""Earliest-arrival routing through reservation gaps.

The search runs over labels (resource, gap window, stage, entry tick) where a
gap window is a maximal span the timeline grants this AGV on that resource.
Within a window the AGV may wait freely; leaving it means crossing an edge
whose own window must admit the full traversal, landing inside a window on
the far node. Visits are half open, so departure may sit exactly on a window
end while an arrival tick must be strictly inside its window.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .graph import InvalidParameterError, ResourceGraph, spatial_path
from .intervals import INF, AgvId, Interval, is_finite
from .timegraph import TimeGraph


@dataclass(frozen=True)
class Stage:
    """One errand: reach any target node, then hold still for ``stop`` ticks."""

    targets: frozenset[int]
    stop: int | float

    def __init__(self, targets, stop):
        object.__setattr__(self, "targets", frozenset(targets))
        object.__setattr__(self, "stop", stop)


@dataclass(frozen=True)
class SourceSpec:
    """Where an AGV starts: a node, or partway along an edge.

    ``elapsed`` ticks of the edge are already behind it; ``toward`` names the
    endpoint it is heading for and defaults to the edge's stored head.
    """

    resource: int
    elapsed: int = 0
    toward: int | None = None


class Step(NamedTuple):
    resource: int
    start: int
    end: int | float


@dataclass(frozen=True)
class TimePath:
    agv: AgvId
    steps: tuple[Step, ...]
    arrival: int

    def occupations(self):
        """Base claims (agv, resource, start, end) for audits and commits."""
        return [(self.agv, s.resource, s.start, s.end) for s in self.steps]


def check_stages(stages) -> None:
    if not stages:
        raise InvalidParameterError("route needs at least one stage")
    last = len(stages) - 1
    for i, st in enumerate(stages):
        if not st.targets:
            raise InvalidParameterError(f"stage {i} has no targets")
        if is_finite(st.stop):
            if st.stop < 0:
                raise InvalidParameterError(f"stage {i} stop is negative")
        elif i != last:
            raise InvalidParameterError("infinite stop before the final stage")


GuideFn = Callable[[int, int], float]


def _suffix_constants(stages, pair_cost):
    """suffix[k] = guide mass of everything after reaching stage k's target.

    ``pair_cost(j)`` lower-bounds travel from stage j's targets to stage j+1's.
    Stops count for every stage except the last, whose stop does not delay the
    arrival objective.
    """
    K = len(stages)
    suffix = [0.0] * (K + 1)
    for k in range(K - 2, -1, -1):
        suffix[k] = suffix[k + 1] + pair_cost(k) + stages[k].stop
    return suffix


def zero_guide(g: ResourceGraph, stages) -> GuideFn:
    return lambda node, stage: 0.0


def manhattan_guide(g: ResourceGraph, stages) -> GuideFn:
    if g.coords is None or g.unit_weight is None:
        raise InvalidParameterError("graph carries no coordinates")
    unit = g.unit_weight
    coords = g.coords
    K = len(stages)

    def dist(v, targets):
        vx, vy = coords[v]
        return unit * min(abs(vx - tx) + abs(vy - ty) for tx, ty in targets)

    tcoords = [tuple(coords[t] for t in st.targets) for st in stages]
    suffix = _suffix_constants(
        stages, lambda j: min(dist(a, tcoords[j + 1]) for a in stages[j].targets)
    )

    def h(node, stage):
        if stage >= K:
            return 0.0
        return dist(node, tcoords[stage]) + suffix[stage]

    return h


def table_guide(g: ResourceGraph, stages, table) -> GuideFn:
    K = len(stages)
    per_stage = [table[:, sorted(st.targets)].min(axis=1) for st in stages]
    suffix = _suffix_constants(
        stages, lambda j: min(per_stage[j + 1][a] for a in stages[j].targets)
    )

    def h(node, stage):
        if stage >= K:
            return 0.0
        return per_stage[stage][node] + suffix[stage]

    return h


class _Label:
    __slots__ = ("agv", "node", "wstart", "wend", "entry", "stage", "parent", "via")

    def __init__(self, agv, node, wstart, wend, entry, stage, parent, via):
        self.agv = agv
        self.node = node
        self.wstart = wstart
        self.wend = wend
        self.entry = entry
        self.stage = stage
        self.parent = parent
        self.via = via  # (edge rid, depart, arrive) or None


def _source_label(tg: TimeGraph, agv: AgvId, spec: SourceSpec, earliest: int):
    """Initial label for one AGV, plus an edge prefix step when it starts mid-edge."""
    g = tg.graph
    rid = spec.resource
    if g.is_node(rid):
        if spec.elapsed:
            raise InvalidParameterError("elapsed ticks only apply to edge sources")
        for ws, we in tg.gaps_full(rid, agv):
            if ws <= earliest < we:
                return _Label(agv, rid, ws, we, earliest, 0, None, None), None
        return None, None
    edge = g.edge_at(rid)
    if not 0 <= spec.elapsed < edge.weight:
        raise InvalidParameterError("elapsed ticks outside the edge")
    head = spec.toward if spec.toward is not None else edge.b
    if head not in (edge.a, edge.b) or (edge.directed and head != edge.b):
        raise InvalidParameterError("toward is not a reachable endpoint")
    tau = earliest + (edge.weight - spec.elapsed)
    covered = tg.gap_query(rid, agv, Interval(earliest, tau))
    if not (len(covered) == 1 and covered[0].covers(Interval(earliest, tau))):
        return None, None
    for ws, we in tg.gaps_full(head, agv):
        if ws <= tau < we:
            lab = _Label(agv, head, ws, we, tau, 0, None, None)
            return lab, Step(rid, earliest, tau)
    return None, None


def _expand_moves(tg, lab, allowed, push):
    g = tg.graph
    agv = lab.agv
    for erid, dest, w in g.moves[lab.node]:
        if allowed is not None and (erid not in allowed or dest not in allowed):
            continue
        dest_windows = tg.gaps_full(dest, agv)
        for es, ee in tg.gaps_full(erid, agv):
            if es > lab.wend:
                break
            if ee < lab.entry + w or ee - es < w:
                continue
            for ds, de in dest_windows:
                if ds - w > lab.wend or ds > ee:
                    break
                if de <= lab.entry + w:
                    continue
                dep = max(lab.entry, es, ds - w)
                arr = dep + w
                if dep > lab.wend or arr > ee or arr >= de:
                    continue
                push(
                    _Label(agv, dest, ds, de, arr, lab.stage, lab, (erid, dep, arr))
                )


def _search(tg: TimeGraph, sources, stages, guide: GuideFn, earliest: int, allowed):
    """Best-first scan over gap windows; first finished label is optimal.

    ``sources`` is a list of (agv, SourceSpec). Returns (done label, prefix
    steps by agv) or (None, {}) when no AGV can finish the route.
    """
    check_stages(stages)
    K = len(stages)
    prefixes = {}
    heap = []
    seq = itertools.count()
    best = {}

    def push(lab):
        key = (lab.agv, lab.node, lab.wstart, lab.stage)
        old = best.get(key)
        if old is not None and old <= lab.entry:
            return
        best[key] = lab.entry
        f = lab.entry + guide(lab.node, lab.stage)
        heapq.heappush(heap, (f, lab.entry, -lab.stage, lab.node, next(seq), lab))

    for agv, spec in sources:
        lab, prefix = _source_label(tg, agv, spec, earliest)
        if lab is None:
            continue
        if allowed is not None and lab.node not in allowed:
            continue
        if prefix is not None:
            prefixes[agv] = prefix
        push(lab)

    while heap:
        lab = heapq.heappop(heap)[-1]
        key = (lab.agv, lab.node, lab.wstart, lab.stage)
        if best.get(key) != lab.entry:
            continue
        best[key] = -1  # closed; real entries are never negative
        if lab.stage == K:
            return lab, prefixes
        st = stages[lab.stage]
        if lab.node in st.targets:
            if lab.stage == K - 1:
                ok = lab.wend == INF if not is_finite(st.stop) else lab.entry + st.stop <= lab.wend
                if ok:
                    push(
                        _Label(lab.agv, lab.node, lab.wstart, lab.wend, lab.entry, K, lab, None)
                    )
            elif lab.entry + st.stop <= lab.wend:
                push(
                    _Label(
                        lab.agv,
                        lab.node,
                        lab.wstart,
                        lab.wend,
                        lab.entry + st.stop,
                        lab.stage + 1,
                        lab,
                        None,
                    )
                )
        _expand_moves(tg, lab, allowed, push)
    return None, prefixes


def _emit(done, final_stop, prefix) -> tuple[Step, ...]:
    """Fold the label chain into contiguous steps, merging same-node holds."""
    chain = []
    lab = done
    while lab is not None:
        chain.append(lab)
        lab = lab.parent
    chain.reverse()

    steps = [] if prefix is None else [prefix]
    hold_start = chain[0].entry
    for lab in chain[1:]:
        if lab.via is None:
            continue  # stage completion or the finishing marker, same node
        erid, dep, arr = lab.via
        steps.append(Step(lab.parent.node, hold_start, dep))
        steps.append(Step(erid, dep, arr))
        hold_start = arr
    arrival = done.entry
    end = INF if not is_finite(final_stop) else arrival + final_stop
    steps.append(Step(done.node, hold_start, end))
    return tuple(steps)


def time_path(
    tg: TimeGraph,
    agv: AgvId,
    source: SourceSpec,
    stages,
    *,
    earliest: int = 0,
    guide: GuideFn | None = None,
    allowed: frozenset[int] | None = None,
) -> TimePath | None:
    """Earliest-arrival path for one AGV through its current reservations."""
    return multi_source_time_path(
        tg, [(agv, source)], stages, earliest=earliest, guide=guide, allowed=allowed
    )


def multi_source_time_path(
    tg: TimeGraph,
    sources,
    stages,
    *,
    earliest: int = 0,
    guide: GuideFn | None = None,
    allowed: frozenset[int] | None = None,
) -> TimePath | None:
    """Race several AGVs over one route; the soonest finisher's path wins."""
    if guide is None:
        guide = zero_guide(tg.graph, stages)
    done, prefixes = _search(tg, sources, stages, guide, earliest, allowed)
    if done is None:
        return None
    steps = _emit(done, stages[-1].stop, prefixes.get(done.agv))
    return TimePath(done.agv, steps, done.entry)


def route_corridor(
    g: ResourceGraph,
    waypoints,
    *,
    guide: str = "none",
    table=None,
) -> frozenset[int] | None:
    """Resources touched by shortest spatial legs between consecutive waypoints.

    Legs steer around every anchor except their own endpoints, so a corridor
    never cuts through someone's parking spot. Returns None if any leg fails.
    """
    allowed = set()
    for a, b in zip(waypoints, waypoints[1:]):
        forbidden = g.anchors - {a, b}
        leg = spatial_path(g, a, b, forbidden=forbidden, guide=guide, table=table)
        if leg is None:
            return None
        allowed.update(leg[0])
    return frozenset(allowed)
