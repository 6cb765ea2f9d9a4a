"""Sending every idle AGV to a parking anchor without conflicts.

Each unparked AGV pins its start footprint for all time; a successful plan
swaps that pin for the reservations of an actual journey ending in an open
ended hold on some anchor. An anchor already pinned forever by someone else
fails the route's final hold, so the target set can simply be every anchor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .footprint import boundary_reservations
from .graph import GeoLinks
from .intervals import INF, AgvId, Interval
from .pathing import SourceSpec, Stage, TimePath, multi_source_time_path, time_path
from .timegraph import Reservation, TimeGraph


@dataclass(frozen=True)
class AnchorResult:
    paths: dict[AgvId, TimePath]
    stalled: frozenset[AgvId]
    attempts: int

    @property
    def ok(self) -> bool:
        return not self.stalled


def initialise_reservations(
    tg: TimeGraph, links: GeoLinks, placements: dict[AgvId, SourceSpec]
) -> dict[AgvId, list[Reservation]]:
    """Pin each AGV's start and its linked surroundings for all time."""
    out = {}
    for agv, spec in placements.items():
        rids = {spec.resource} | set(links.linked[spec.resource])
        rs = [Reservation(r, agv, Interval(0, INF)) for r in sorted(rids)]
        tg.reserve_all(rs)
        out[agv] = rs
    return out


def _commit(tg, links, init, agv, path):
    tg.remove_all(init[agv])
    tg.reserve_all(boundary_reservations(path.steps, links, agv))


def naive_anchorise(
    tg: TimeGraph,
    links: GeoLinks,
    placements: dict[AgvId, SourceSpec],
    *,
    seed: int = 0,
) -> AnchorResult:
    """Shuffled passes; anyone who can reach an anchor commits on the spot.

    A pass that parks nobody means the rest are mutually blocked for good.
    """
    g = tg.graph
    stages = [Stage(g.anchors, INF)]
    init = initialise_reservations(tg, links, placements)
    rng = random.Random(seed)
    pending = sorted(placements)
    paths: dict[AgvId, TimePath] = {}
    attempts = 0
    while pending:
        rng.shuffle(pending)
        progressed = False
        for agv in list(pending):
            attempts += 1
            p = time_path(tg, agv, placements[agv], stages)
            if p is None:
                continue
            _commit(tg, links, init, agv, p)
            paths[agv] = p
            progressed = True
        pending = [a for a in pending if a not in paths]
        if not progressed:
            return AnchorResult(paths, frozenset(pending), attempts)
    return AnchorResult(paths, frozenset(), attempts)


def greedy_anchorise(
    tg: TimeGraph,
    links: GeoLinks,
    placements: dict[AgvId, SourceSpec],
) -> AnchorResult:
    """Race all unparked AGVs at once; the soonest finisher commits each round."""
    g = tg.graph
    stages = [Stage(g.anchors, INF)]
    init = initialise_reservations(tg, links, placements)
    pending = set(placements)
    paths: dict[AgvId, TimePath] = {}
    attempts = 0
    while pending:
        attempts += 1
        sources = [(a, placements[a]) for a in sorted(pending)]
        p = multi_source_time_path(tg, sources, stages)
        if p is None:
            return AnchorResult(paths, frozenset(pending), attempts)
        _commit(tg, links, init, p.agv, p)
        paths[p.agv] = p
        pending.discard(p.agv)
    return AnchorResult(paths, frozenset(), attempts)
