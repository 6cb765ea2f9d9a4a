"""Reservations across a whole graph: one gap tree per resource.

The audit re-derives safety from scratch: every occupation an AGV claims must
come back as a single covering gap when that AGV queries the resource, which
is exactly the condition its path search relied on. Footprint overlaps
between different AGVs are legal; only someone else's reservation crossing a
base occupation is a conflict.
"""

import io
from dataclasses import dataclass

from .graph import ResourceGraph
from .intervals import INF, AgvId, GapTree, Interval, fmt_tick


@dataclass(frozen=True, slots=True)
class Reservation:
    resource: int
    agv: AgvId
    ivl: Interval


@dataclass(frozen=True, slots=True)
class SafetyViolation:
    resource: int
    agv: AgvId
    ivl: Interval
    others: frozenset[AgvId]

    def __str__(self):
        who = ",".join(str(a) for a in sorted(self.others))
        return f"agv {self.agv} occupation {self.ivl} on resource {self.resource} conflicts with agv(s) {who}"


class TimeGraph:
    """Mutable reservation state for every resource of one graph."""

    def __init__(self, g: ResourceGraph):
        self.graph = g
        self.trees = [GapTree() for _ in range(g.num_resources)]
        self._gap_cache = {}

    def tree(self, rid: int) -> GapTree:
        return self.trees[rid]

    def reserve(self, resource: int, agv: AgvId, ivl: Interval) -> None:
        self.trees[resource].insert(agv, ivl)

    def release(self, resource: int, agv: AgvId, ivl: Interval) -> None:
        self.trees[resource].remove(agv, ivl)

    def reserve_all(self, reservations) -> None:
        for r in reservations:
            self.trees[r.resource].insert(r.agv, r.ivl)

    def remove_all(self, reservations) -> None:
        for r in reservations:
            self.trees[r.resource].remove(r.agv, r.ivl)

    def gap_query(self, resource: int, agv: AgvId, window: Interval):
        return self.trees[resource].gap_query(agv, window)

    def gaps_full(self, resource: int, agv: AgvId):
        """All gaps for agv over [0, INF), cached until the tree changes."""
        tree = self.trees[resource]
        key = (resource, agv)
        hit = self._gap_cache.get(key)
        if hit is not None and hit[0] == tree.version:
            return hit[1]
        gaps = tuple((g.start, g.end) for g in tree.gap_query(agv, _EVERYTHING))
        self._gap_cache[key] = (tree.version, gaps)
        return gaps

    def holders_to_infinity(self, resource: int) -> frozenset[AgvId]:
        return self.trees[resource].holders_to_infinity()

    def dump_csv(self) -> str:
        """Stable ``resource,agv,start,end`` listing of every held interval."""
        out = io.StringIO()
        out.write("resource,agv,start,end\n")
        for rid, tree in enumerate(self.trees):
            for s, e, ids in tree.intervals():
                for agv in sorted(ids):
                    out.write(f"{self.graph.describe(rid)},{agv},{s},{fmt_tick(e)}\n")
        return out.getvalue()

    def snapshot_before(self, horizon: int):
        """Stored intervals clipped to [0, horizon), for immutability checks."""
        if horizon <= 0:
            return []
        clip = []
        for rid, tree in enumerate(self.trees):
            for s, e, ids in tree.intervals():
                if s >= horizon:
                    break
                clip.append((rid, s, min(e, horizon), ids))
        return clip


_EVERYTHING = Interval(0, INF)


def audit_safety(tg: TimeGraph, occupations) -> SafetyViolation | None:
    """First base-occupation conflict in ``occupations``, or None when clean.

    ``occupations`` yields (agv, resource, start, end) claims. Zero-length
    claims are vacuous. A claim is safe when the AGV's own gap query on that
    resource returns one interval covering it.
    """
    for agv, rid, start, end in occupations:
        if start == end:
            continue
        ivl = Interval(start, end)
        gaps = tg.gap_query(rid, agv, ivl)
        if len(gaps) == 1 and gaps[0].covers(ivl):
            continue
        others = set()
        for s, e, ids in tg.trees[rid].intervals():
            if s < ivl.end and ivl.start < e:
                others |= ids - {agv}
        return SafetyViolation(rid, agv, ivl, frozenset(others))
    return None
