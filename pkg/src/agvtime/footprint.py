"""Expanding a time-path into geographic reservations.

While an AGV occupies a resource it must also hold everything within the
safety radius, so each path step fans out over the step resource's linked
set. The naive expansion emits one reservation per linked resource per step,
which duplicates heavily since consecutive steps share most of their
surroundings. The boundary expansion walks the path once, keeping a running
frontier: resources can only enter or leave the moving footprint through the
boundary shell, so per-step work scales with the shell size instead of the
whole linked set. Both produce the same coverage; ``normalise`` puts either
output into the canonical merged form.

Link sets are treated reflexively throughout: a resource is always part of
its own footprint, so base occupations come out of the expansion too.
"""

from dataclasses import dataclass, field

from .graph import GeoLinks
from .intervals import AgvId, Interval
from .timegraph import Reservation


class PathShapeError(ValueError):
    pass


@dataclass(slots=True)
class WorkCounter:
    """Counts resources handled per step, for work-scaling assertions."""

    per_step: list = field(default_factory=list)

    def note(self, n: int):
        self.per_step.append(n)


def _checked_steps(steps):
    """Validate the chain is contiguous and non-inverted; empties stay in.

    Zero-length steps reserve nothing, but they carry the spatial adjacency
    of the walk: the boundary sweep relies on consecutive path resources
    being neighbours, which an elided pass-through node would break.
    """
    out = []
    prev_end = None
    for step in steps:
        rid, start, end = step
        if start > end:
            raise PathShapeError(f"inverted step [{start}, {end}) on resource {rid}")
        if prev_end is not None and prev_end != start:
            raise PathShapeError(
                f"path not contiguous: step on {rid} starts at {start}, previous ended at {prev_end}"
            )
        prev_end = end
        out.append(step)
    return out


def naive_reservations(steps, links: GeoLinks, agv: AgvId, counter: WorkCounter | None = None):
    """One reservation per step for the resource and each of its links."""
    out = []
    append = out.append
    linked = links.linked
    ivl_of = Interval
    res_of = Reservation
    for rid, start, end in _checked_steps(steps):
        if start == end:
            continue
        ivl = ivl_of(start, end)
        append(res_of(rid, agv, ivl))
        for p in linked[rid]:
            append(res_of(p, agv, ivl))
        if counter is not None:
            counter.note(1 + len(linked[rid]))
    return out


def _pair_sets(linked, bound, a, b):
    """Exact exit and entry sets for a transition between linked resources.

    An exit is anything covered around ``a`` but not around ``b``; coverage
    loss can only happen across a's boundary shell, so filtering that shell
    captures every exit. Entries mirror it on b's shell.
    """
    La, Lb = linked[a], linked[b]
    if b not in La:
        raise PathShapeError(f"path steps between unlinked resources {a} and {b}")
    exits = tuple(p for p in bound[a] if p != b and p not in Lb)
    entries = tuple(q for q in bound[b] if q != a and q not in La)
    return exits, entries


def _fused_sets(linked, bound, a, mid, b):
    """Exact exit and entry sets for a -> mid -> b with an instantaneous mid.

    A resource leaving a's footprint straight into b's never loses coverage,
    so it is neither an exit nor an entry here, and one only brushed by mid's
    footprint for the instant contributes nothing at all.
    """
    La, Lmid, Lb = linked[a], linked[mid], linked[b]
    if mid not in La or b not in Lmid:
        raise PathShapeError(f"path steps between unlinked resources near {mid}")
    exits = tuple(
        p for p in bound[a] if p != mid and p not in Lmid and p != b and p not in Lb
    ) + tuple(
        p for p in bound[mid] if (p == a or p in La) and p != b and p not in Lb
    )
    entries = tuple(
        q for q in bound[mid] if (q == b or q in Lb) and q != a and q not in La
    ) + tuple(
        q for q in bound[b] if q != mid and q not in Lmid and q != a and q not in La
    )
    return exits, entries


def boundary_reservations(steps, links: GeoLinks, agv: AgvId, counter: WorkCounter | None = None):
    """Single-sweep expansion tracking footprint entries and exits.

    Covers exactly what the naive expansion covers, already merged per
    resource. The open set always equals the current footprint of the walk,
    and each transition touches only the exact entry and exit sets, looked up
    from a cache on ``links`` keyed by the resource pair: the sets are static
    link geometry, so they amortise across paths. A zero-length pass-through
    step fuses with the step after it into a single transition, which is what
    keeps a resource that exits one footprint and immediately re-enters the
    next one covered by one unbroken span.
    """
    chain = _checked_steps(steps)
    if not chain:
        return []
    out = []
    append = out.append
    linked = links.linked
    bound = links.boundary
    trans = links.transitions

    # Touching re-entries can still arise when consecutive zero-length steps
    # defeat fusion; last_at remembers each resource's latest span so the
    # touch extends it in place and the output stays exactly merged. On
    # fully fused walks it stays empty.
    last_at = {}

    # Every open interval shares the same right end (the current step's
    # end), so open_start maps resource -> start and v_end carries the end.
    rid0, s0, e0 = chain[0]
    open_start = dict.fromkeys(linked[rid0], s0)
    open_start[rid0] = s0
    v_end = e0
    prev = rid0
    pop = open_start.pop
    ivl_of = Interval
    res_of = Reservation
    if counter is not None:
        counter.note(len(open_start))

    def step_zero(rid, s1):
        # Unfused transition onto a zero-length step. Spans closed while the
        # clock stands still can be touched by a later re-entry, so every
        # one gets recorded in last_at.
        nonlocal prev, v_end
        row = trans.get(prev)
        if row is None:
            row = trans[prev] = {}
        pair = row.get(rid)
        if pair is None:
            pair = row[rid] = _pair_sets(linked, bound, prev, rid)
        exits, entries = pair
        for p in exits:
            s2 = pop(p)
            if s2 != v_end:
                if last_at and (j := last_at.get(p)) is not None and (r0 := out[j]).ivl.end == s2:
                    out[j] = res_of(p, agv, ivl_of(r0.ivl.start, v_end))
                else:
                    last_at[p] = len(out)
                    append(res_of(p, agv, ivl_of(s2, v_end)))
        for b in entries:
            open_start[b] = s1
        prev = rid
        v_end = s1
        if counter is not None:
            counter.note(len(exits) + len(entries) + 2)

    it = iter(chain)
    next(it)
    for rid, s1, e1 in it:
        row = trans.get(prev)
        if row is None:
            row = trans[prev] = {}
        if e1 != s1:
            pair = row.get(rid)
            if pair is None:
                pair = row[rid] = _pair_sets(linked, bound, prev, rid)
            nrid = rid
            nv_end = e1
        else:
            nxt = next(it, None)
            if nxt is None or nxt[2] == nxt[1]:
                step_zero(rid, s1)
                if nxt is not None:
                    step_zero(nxt[0], nxt[1])
                continue
            # Fuse the instant with the following dwell. Int keys for plain
            # transitions and tuple keys for fused ones share the row safely.
            nrid = nxt[0]
            key = (rid, nrid)
            pair = row.get(key)
            if pair is None:
                pair = row[key] = _fused_sets(linked, bound, prev, rid, nrid)
            nv_end = nxt[2]
        exits, entries = pair
        for p in exits:
            s2 = pop(p)
            if s2 != v_end:
                # Spans closed here end before the clock next advances, so
                # no later entry can touch them; skip the last_at store.
                if last_at and (j := last_at.get(p)) is not None and (r0 := out[j]).ivl.end == s2:
                    out[j] = res_of(p, agv, ivl_of(r0.ivl.start, v_end))
                else:
                    append(res_of(p, agv, ivl_of(s2, v_end)))
        for b in entries:
            open_start[b] = s1
        prev = nrid
        v_end = nv_end
        if counter is not None:
            counter.note(len(exits) + len(entries) + 2)
    for p, s in open_start.items():
        if s != v_end:
            if last_at and (j := last_at.get(p)) is not None and (r0 := out[j]).ivl.end == s:
                out[j] = Reservation(p, agv, Interval(r0.ivl.start, v_end))
            else:
                append(Reservation(p, agv, Interval(s, v_end)))
    return out


def normalise(reservations):
    """Canonical form: per (resource, agv), sorted maximal merged intervals."""
    by_key = {}
    for r in reservations:
        by_key.setdefault((r.resource, r.agv), []).append((r.ivl.start, r.ivl.end))
    out = []
    for (rid, agv) in sorted(by_key):
        spans = sorted(by_key[(rid, agv)])
        merged = [list(spans[0])]
        for s, e in spans[1:]:
            if s <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], e)
            else:
                merged.append([s, e])
        for s, e in merged:
            out.append(Reservation(rid, agv, Interval(s, e)))
    return out
