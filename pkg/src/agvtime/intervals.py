"""Half-open time intervals and per-resource reservation trees with gap queries.

Time is measured in unsigned integer ticks. A single distinguished value INF
(positive infinity) marks reservations that never expire; every interval start
is finite. Intervals are half-open, so [3, 7) and [7, 9) touch but do not
overlap.

A GapTree holds the reservations of one resource as a sorted sequence of
disjoint intervals, each tagged with the non-empty set of AGV ids holding it.
The core query asks, from one AGV's point of view, where the free windows are:
stretches holding no reservation at all, or only that AGV's own, count as gaps.
"""

from sortedcontainers import SortedDict

INF = float("inf")

AgvId = int


def is_finite(t) -> bool:
    return t != INF


def fmt_tick(t) -> str:
    return "inf" if t == INF else str(t)


def parse_tick(s: str):
    return INF if s == "inf" else int(s)


class Interval:
    """Half-open tick interval [start, end). start is finite, start < end.

    Value semantics: equality and hashing go by (start, end). Instances are
    treated as immutable. Hand-rolled rather than a dataclass because interval
    construction sits on the hot path of gap queries and reservation
    expansion.
    """

    __slots__ = ("start", "end")

    def __init__(self, start, end):
        if 0 <= start < end:
            self.start = start
            self.end = end
            return
        if start < 0 or not is_finite(start):
            raise ValueError(f"interval start must be a finite tick >= 0, got {start}")
        raise ValueError(f"empty or inverted interval [{start}, {end})")

    def __eq__(self, other):
        if other.__class__ is Interval:
            return self.start == other.start and self.end == other.end
        return NotImplemented

    def __hash__(self):
        return hash((self.start, self.end))

    def __repr__(self):
        return f"Interval(start={self.start!r}, end={self.end!r})"

    def overlaps(self, other: "Interval") -> bool:
        return self.start < other.end and other.start < self.end

    def contains_tick(self, t) -> bool:
        return self.start <= t < self.end

    def covers(self, other: "Interval") -> bool:
        return self.start <= other.start and other.end <= self.end

    @property
    def length(self):
        return self.end - self.start

    def __str__(self):
        return f"[{self.start}, {fmt_tick(self.end)})"


class GapTree:
    """Reservation intervals of a single resource, ordered by start tick.

    Stored intervals are pairwise disjoint and each carries a frozenset of AGV
    ids. The structure is kept fragmentation-free: two stored intervals that
    touch never carry equal id sets. Backing store is an ordered map keyed by
    interval start, so mutations and queries touch only the intervals that
    intersect the affected window plus its two neighbours.

    ``last_touched`` exposes how many stored intervals the most recent
    operation examined, for locality assertions.
    """

    __slots__ = ("_ivals", "last_touched", "version")

    def __init__(self):
        self._ivals = SortedDict()  # start -> (end, frozenset of AgvId)
        self.last_touched = 0
        self.version = 0

    def __len__(self):
        return len(self._ivals)

    def __bool__(self):
        return True

    def intervals(self):
        """All stored (start, end, ids) triples in start order."""
        return [(s, e, ids) for s, (e, ids) in self._ivals.items()]

    def _affected(self, start, end):
        """Stored intervals intersecting [start, end), as (key, end, ids)."""
        sd = self._ivals
        idx = sd.bisect_right(start) - 1
        if idx >= 0:
            k, (ke, _) = sd.peekitem(idx)
            if ke <= start:
                idx += 1
        else:
            idx = 0
        out = []
        keys = sd.keys()
        n = len(sd)
        while idx < n:
            k = keys[idx]
            if k >= end:
                break
            ke, ids = sd[k]
            out.append((k, ke, ids))
            idx += 1
        return out

    def _splice(self, lo, hi, pieces):
        """Replace stored intervals keyed in [lo, hi) with ``pieces``.

        Pulls in the touching predecessor and successor, coalesces runs of
        touching pieces with equal id sets, and writes the result back.
        """
        sd = self._ivals
        for k in [k for k in sd.irange(lo, hi, inclusive=(True, False))]:
            del sd[k]
        if pieces:
            idx = sd.bisect_left(pieces[0][0]) - 1
            if idx >= 0:
                k, (ke, ids) = sd.peekitem(idx)
                if ke == pieces[0][0]:
                    pieces.insert(0, (k, ke, ids))
                    del sd[k]
                    self.last_touched += 1
            # successor that the last piece touches
            nxt = sd.bisect_left(pieces[-1][0])
            if nxt < len(sd):
                k, (ke, ids) = sd.peekitem(nxt)
                if k == pieces[-1][1]:
                    pieces.append((k, ke, ids))
                    del sd[k]
                    self.last_touched += 1
            merged = [list(pieces[0])]
            for s, e, ids in pieces[1:]:
                last = merged[-1]
                if last[1] == s and last[2] == ids:
                    last[1] = e
                else:
                    merged.append([s, e, ids])
            for s, e, ids in merged:
                sd[s] = (e, ids)
        self.version += 1

    def insert(self, agv: AgvId, ivl: Interval) -> None:
        """Reserve ivl for agv, splitting partial overlaps and merging equals.

        Re-inserting over the AGV's own reservations is idempotent.
        """
        start, end = ivl.start, ivl.end
        affected = self._affected(start, end)
        self.last_touched = len(affected)
        own = frozenset((agv,))
        pieces = []
        cur = start
        for k, ke, ids in affected:
            if k < start:
                pieces.append((k, start, ids))
            lo = max(k, start)
            if lo > cur:
                pieces.append((cur, lo, own))
            hi = min(ke, end)
            if hi > lo:
                pieces.append((lo, hi, ids | own))
            if ke > end:
                pieces.append((end, ke, ids))
            cur = max(cur, hi)
        if cur < end:
            pieces.append((cur, end, own))
        lo_key = min(affected[0][0], start) if affected else start
        self._splice(lo_key, end, pieces)

    def remove(self, agv: AgvId, ivl: Interval) -> None:
        """Release agv's hold over ivl. Intervals left with no holder vanish."""
        start, end = ivl.start, ivl.end
        affected = self._affected(start, end)
        self.last_touched = len(affected)
        pieces = []
        for k, ke, ids in affected:
            if k < start:
                pieces.append((k, start, ids))
            lo = max(k, start)
            hi = min(ke, end)
            if hi > lo:
                rest = ids - {agv}
                if rest:
                    pieces.append((lo, hi, rest))
            if ke > end:
                pieces.append((end, ke, ids))
        lo_key = min(affected[0][0], start) if affected else start
        self._splice(lo_key, end, pieces)

    def gap_query(self, agv: AgvId, window: Interval) -> list[Interval]:
        """Maximal free windows for agv within ``window``, sorted.

        A tick is free when unreserved or reserved only by ``agv`` itself.
        Touching free stretches come back merged.
        """
        start, end = window.start, window.end
        affected = self._affected(start, end)
        self.last_touched = len(affected)
        gaps = []
        cur = start
        for k, ke, ids in affected:
            if len(ids) == 1 and agv in ids:
                continue
            lo = max(k, start)
            hi = min(ke, end)
            if lo > cur:
                gaps.append(Interval(cur, lo))
            cur = max(cur, hi)
        if cur < end:
            gaps.append(Interval(cur, end))
        return gaps

    def holders_to_infinity(self) -> frozenset[AgvId]:
        """Ids holding a reservation that extends to INF, if any."""
        if not self._ivals:
            return frozenset()
        _, (end, ids) = self._ivals.peekitem(-1)
        return ids if end == INF else frozenset()

    def dump(self) -> str:
        """Canonical text form: one ``start end id,id,...`` line per interval."""
        lines = []
        for s, (e, ids) in self._ivals.items():
            lines.append(f"{s} {fmt_tick(e)} {','.join(str(i) for i in sorted(ids))}")
        return "\n".join(lines)

    def check_invariants(self) -> None:
        prev_end = None
        prev_ids = None
        for s, (e, ids) in self._ivals.items():
            assert is_finite(s) and s >= 0, f"non-finite or negative start {s}"
            assert s < e, f"empty stored interval [{s}, {e})"
            assert ids, f"empty id set at [{s}, {e})"
            if prev_end is not None:
                assert prev_end <= s, "stored intervals overlap"
                assert not (prev_end == s and prev_ids == ids), (
                    f"fragmentation: touching equal-set intervals at {s}"
                )
            prev_end, prev_ids = e, ids
