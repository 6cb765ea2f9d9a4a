"""Benchmark suites producing one stable CSV schema.

Columns: suite,param,algorithm,runtime_ms,makespan,total_distance,note.
Empty cells stay empty; runtime_ms is wall clock and excluded from any
determinism promise. The reservers suite carries a correctness verdict in
``note`` because it times two algorithms that must emit identical coverage.
"""

from __future__ import annotations

import time

from .anchoring import greedy_anchorise, naive_anchorise
from .footprint import boundary_reservations, naive_reservations, normalise
from .graph import build_adjacency_links, build_grid, spatial_path, subdivide
from .intervals import INF
from .pathing import SourceSpec, Step
from .scenarios import generate, materialise
from .scheduling import build_timetable, metrics
from .timegraph import TimeGraph

CSV_HEADER = "suite,param,algorithm,runtime_ms,makespan,total_distance,note"


def _row(suite, param, algorithm, runtime_ms, makespan="", distance="", note=""):
    return f"{suite},{param},{algorithm},{runtime_ms},{makespan},{distance},{note}"


def _fmt_ms(seconds: float) -> str:
    return f"{seconds * 1000.0:.3f}"


def bench_anchorisers(*, grid=20, agv_counts=(5, 10, 20), seed=0, weight=10):
    rows = []
    for i, count in enumerate(agv_counts):
        sc = generate(grid=grid, agvs=count, demands=0, seed=seed + i, weight=weight)
        for name, run in (("naive", naive_anchorise), ("greedy", greedy_anchorise)):
            g, links, placements, _ = materialise(sc)
            tg = TimeGraph(g)
            kwargs = {"seed": sc.seed} if name == "naive" else {}
            t0 = time.perf_counter()
            res = run(tg, links, placements, **kwargs)
            elapsed = time.perf_counter() - t0
            makespan = max((p.arrival for p in res.paths.values()), default=0)
            distance = sum(
                s.end - s.start
                for p in res.paths.values()
                for s in p.steps
                if not g.is_node(s.resource)
            )
            note = "stalled" if res.stalled else ""
            rows.append(
                _row("anchorisers", count, name, _fmt_ms(elapsed), makespan, distance, note)
            )
    return rows


def bench_presets(*, sizes=(8, 12, 16, 20, 30), agvs=4, demands=40, seed=0, weight=10):
    rows = []
    for i, n in enumerate(sizes):
        sc = generate(grid=n, agvs=agvs, demands=demands, seed=seed + i, weight=weight)
        for preset in ("full-zero", "full-manhattan", "partial-dijkstras", "partial-manhattan"):
            g, links, placements, ds = materialise(sc)
            tt = build_timetable(
                g,
                links,
                placements,
                ds,
                preset=preset,
                anchoriser=sc.anchoriser,
                stop_pickup=sc.stop_pickup,
                stop_dropoff=sc.stop_dropoff,
                seed=sc.seed,
            )
            m = metrics(tt)
            rows.append(
                _row(
                    "presets",
                    n,
                    preset,
                    f"{m['runtime_ms']:.3f}",
                    m["makespan"],
                    m["total_distance"],
                )
            )
    return rows


def corner_route_steps(g, start, goal):
    """A timed walk along the shortest spatial route, pausing nowhere."""
    found = spatial_path(g, start, goal, forbidden=g.anchors - {start, goal})
    if found is None:
        raise ValueError("no corner route")
    resources, _ = found
    steps = []
    t = 0
    for rid in resources:
        if g.is_node(rid):
            steps.append(Step(rid, t, t))
        else:
            w = g.edge_at(rid).weight
            steps.append(Step(rid, t, t + w))
            t += w
    last = steps[-1]
    steps[-1] = Step(last.resource, last.start, INF)
    return steps


def bench_reservers(*, grid=40, subdivisions=(1, 2, 4, 6), weight=12, reps=20):
    rows = []
    base = build_grid(grid, weight)
    for s in subdivisions:
        g = subdivide(base, s)
        links = build_adjacency_links(g, s)
        start = g.coords.index((0, 1 * s))
        goal = g.coords.index(((grid - 1) * s, (grid - 2) * s))
        steps = corner_route_steps(g, start, goal)
        outputs = {}
        timings = {}
        for name, fn in (("naive", naive_reservations), ("boundary", boundary_reservations)):
            best = None
            for _ in range(reps):
                t0 = time.perf_counter()
                out = fn(steps, links, 1)
                dt = time.perf_counter() - t0
                best = dt if best is None else min(best, dt)
            outputs[name] = out
            timings[name] = best
        same = normalise(outputs["naive"]) == normalise(outputs["boundary"])
        note = "equal" if same else "UNEQUAL"
        span = sum(s2.end - s2.start for s2 in steps if not g.is_node(s2.resource))
        for name in ("naive", "boundary"):
            rows.append(
                _row("reservers", s, name, _fmt_ms(timings[name]), "", span, note)
            )
    return rows


def run_suite(suite: str, **kw):
    if suite == "anchorisers":
        return bench_anchorisers(**kw)
    if suite == "presets":
        return bench_presets(**kw)
    if suite == "reservers":
        return bench_reservers(**kw)
    raise ValueError(f"unknown suite {suite!r}")
