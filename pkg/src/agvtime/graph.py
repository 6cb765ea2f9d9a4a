"""Resource graphs: nodes and edges in one reservable id space.

Nodes take resource ids 0..N-1 and edges N..N+E-1. An undirected edge is a
single resource, so two AGVs can never hold it at once and head-on conflicts
are impossible by construction. Anchor nodes are the designated long-term
parking spots; the validity rules keep them out of the way of through
traffic.

Geographic links tie each resource to its spatial surroundings via
resource-adjacency distance (a node is adjacent to its incident edges and
vice versa). ``linked[r]`` holds everything within the radius, exclusive of
r itself; ``boundary[r]`` the shell at exactly the radius.
"""

import heapq
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra


class InvalidParameterError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Edge:
    a: int
    b: int
    weight: int
    directed: bool = False

    def __post_init__(self):
        if self.weight < 1:
            raise InvalidParameterError(f"edge weight must be >= 1, got {self.weight}")


@dataclass(frozen=True, slots=True)
class Violation:
    """First graph-validity rule a graph broke, with a human-readable detail."""

    assumption: int
    detail: str


class ResourceGraph:
    """Immutable node/edge structure with the shared resource id space."""

    def __init__(
        self,
        num_nodes: int,
        edges: list[Edge],
        anchors,
        coords=None,
        unit_weight: int | None = None,
        subdivision_nodes=(),
    ):
        self.num_nodes = num_nodes
        self.edges = tuple(edges)
        self.anchors = frozenset(anchors)
        self.coords = tuple(coords) if coords is not None else None
        self.unit_weight = unit_weight
        self.subdivision_nodes = frozenset(subdivision_nodes)
        if self.coords is not None and len(self.coords) != num_nodes:
            raise InvalidParameterError("coords length does not match node count")
        for n in self.anchors:
            if not 0 <= n < num_nodes:
                raise InvalidParameterError(f"anchor {n} is not a node")
        incident = [[] for _ in range(num_nodes)]
        moves = [[] for _ in range(num_nodes)]
        for i, e in enumerate(self.edges):
            rid = num_nodes + i
            if not (0 <= e.a < num_nodes and 0 <= e.b < num_nodes):
                raise InvalidParameterError(f"edge {i} endpoint out of range")
            incident[e.a].append(rid)
            incident[e.b].append(rid)
            moves[e.a].append((rid, e.b, e.weight))
            if not e.directed:
                moves[e.b].append((rid, e.a, e.weight))
        self.incident = tuple(tuple(x) for x in incident)
        self.moves = tuple(tuple(x) for x in moves)

    @property
    def num_resources(self) -> int:
        return self.num_nodes + len(self.edges)

    def is_node(self, rid: int) -> bool:
        return rid < self.num_nodes

    def edge_at(self, rid: int) -> Edge:
        return self.edges[rid - self.num_nodes]

    def describe(self, rid: int) -> str:
        if self.is_node(rid):
            return f"n{rid}"
        return f"e{rid - self.num_nodes}"

    def resource_id(self, token: str) -> int:
        """Inverse of describe: 'n12' or 'e7' back to the unified id."""
        if token.startswith("n"):
            return int(token[1:])
        if token.startswith("e"):
            return self.num_nodes + int(token[1:])
        raise InvalidParameterError(f"bad resource token {token!r}")


def build_grid(n: int, weight: int) -> ResourceGraph:
    """n-by-n grid with corners cut, perimeter anchors, and isolated approaches.

    The four corner nodes are removed, every remaining perimeter node becomes
    an anchor, and edges between two anchors are dropped, which leaves each
    anchor hanging off the interior by a single approach edge.
    """
    if n < 4:
        raise InvalidParameterError(f"grid side must be >= 4, got {n}")
    if weight < 1:
        raise InvalidParameterError("edge weight must be >= 1")
    corners = {(0, 0), (0, n - 1), (n - 1, 0), (n - 1, n - 1)}
    ids = {}
    coords = []
    for y in range(n):
        for x in range(n):
            if (x, y) in corners:
                continue
            ids[(x, y)] = len(coords)
            coords.append((x, y))

    def perimeter(x, y):
        return x == 0 or y == 0 or x == n - 1 or y == n - 1

    anchors = {ids[p] for p in ids if perimeter(*p)}
    edges = []
    for (x, y), u in ids.items():
        for dx, dy in ((1, 0), (0, 1)):
            q = (x + dx, y + dy)
            if q not in ids:
                continue
            v = ids[q]
            if u in anchors and v in anchors:
                continue
            edges.append(Edge(u, v, weight))
    return ResourceGraph(len(coords), edges, anchors, coords, unit_weight=weight)


def _strongly_connected(num_nodes, moves, keep) -> bool:
    nodes = [v for v in range(num_nodes) if keep(v)]
    if len(nodes) <= 1:
        return True
    fwd = {v: [] for v in nodes}
    rev = {v: [] for v in nodes}
    for v in nodes:
        for _, u, _ in moves[v]:
            if keep(u):
                fwd[v].append(u)
                rev[u].append(v)

    def reaches_all(adj):
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(nodes)

    return reaches_all(fwd) and reaches_all(rev)


def validate(g: ResourceGraph, num_agvs: int) -> Violation | None:
    """Check the standing graph rules; None when everything holds.

    1: graph strongly connected. 2: at least as many anchors as AGVs.
    3: graph minus anchors strongly connected. 4: no anchor-anchor edge.
    """
    if not _strongly_connected(g.num_nodes, g.moves, lambda v: True):
        return Violation(1, "graph is not strongly connected")
    if len(g.anchors) < num_agvs:
        return Violation(2, f"{num_agvs} AGVs but only {len(g.anchors)} anchors")
    anchors = g.anchors
    if not _strongly_connected(g.num_nodes, g.moves, lambda v: v not in anchors):
        return Violation(3, "graph minus anchors is not strongly connected")
    for i, e in enumerate(g.edges):
        if e.a in anchors and e.b in anchors:
            return Violation(4, f"edge e{i} joins two anchors")
    return None


def subdivide(g: ResourceGraph, s: int) -> ResourceGraph:
    """Split every edge into s equal sub-edges joined by fresh plain nodes.

    Every edge weight must be divisible by s. Original node ids are
    preserved; the inserted nodes are flagged as subdivision nodes and are
    never anchors. With coordinates present, all coordinates scale by s so
    they stay integral.
    """
    if s < 1:
        raise InvalidParameterError(f"subdivision count must be >= 1, got {s}")
    if s == 1:
        return g
    for i, e in enumerate(g.edges):
        if e.weight % s:
            raise InvalidParameterError(f"edge e{i} weight {e.weight} not divisible by {s}")
    coords = [(x * s, y * s) for x, y in g.coords] if g.coords is not None else None
    next_node = g.num_nodes
    new_edges = []
    sub_nodes = []
    for e in g.edges:
        w = e.weight // s
        chain = [e.a]
        for k in range(1, s):
            chain.append(next_node)
            sub_nodes.append(next_node)
            if coords is not None:
                ax, ay = coords[e.a]
                bx, by = g.coords[e.b][0] * s, g.coords[e.b][1] * s
                coords.append((ax + (bx - ax) * k // s, ay + (by - ay) * k // s))
            next_node += 1
        chain.append(e.b)
        for u, v in zip(chain, chain[1:]):
            new_edges.append(Edge(u, v, w, e.directed))
    uw = g.unit_weight // s if g.unit_weight is not None else None
    return ResourceGraph(next_node, new_edges, g.anchors, coords, uw, sub_nodes)


@dataclass(frozen=True, slots=True)
class GeoLinks:
    """Radius-limited spatial surroundings of every resource."""

    radius: int
    linked: tuple  # rid -> frozenset of rids within 1..radius, self excluded
    boundary: tuple  # rid -> frozenset of rids at exactly radius
    # Lazily filled cache of exact per-transition entry/exit sets, keyed by
    # the resource stepped from. Derived from linked/boundary, so it is
    # excluded from comparisons.
    transitions: dict = field(default_factory=dict, compare=False, repr=False)


def build_adjacency_links(g: ResourceGraph, s: int) -> GeoLinks:
    """Breadth-first resource-adjacency balls of radius s around each resource."""
    if s < 1:
        raise InvalidParameterError(f"link radius must be >= 1, got {s}")
    nn = g.num_nodes
    adj = [None] * g.num_resources
    for v in range(nn):
        adj[v] = g.incident[v]
    for i, e in enumerate(g.edges):
        adj[nn + i] = (e.a, e.b)
    linked = []
    boundary = []
    for r in range(g.num_resources):
        dist = {r: 0}
        frontier = [r]
        for d in range(1, s + 1):
            nxt = []
            for p in frontier:
                for q in adj[p]:
                    if q not in dist:
                        dist[q] = d
                        nxt.append(q)
            frontier = nxt
        del dist[r]
        linked.append(frozenset(dist))
        boundary.append(frozenset(p for p, d in dist.items() if d == s))
    return GeoLinks(s, tuple(linked), tuple(boundary))


def manhattan_bound(g: ResourceGraph, u: int, v: int) -> int:
    """Admissible travel-tick bound between nodes of a uniform embedded graph."""
    if g.coords is None or g.unit_weight is None:
        raise InvalidParameterError("manhattan guide needs an embedded uniform-weight graph")
    (x1, y1), (x2, y2) = g.coords[u], g.coords[v]
    return g.unit_weight * (abs(x1 - x2) + abs(y1 - y2))


def spatial_path(g, frm, to, forbidden=frozenset(), guide="none", table=None):
    """Cheapest node/edge path from ``frm`` to ``to`` avoiding forbidden nodes.

    Returns (resources, cost) where resources alternate node, edge, node and
    both endpoints are nodes, or None when no path exists. ``guide`` picks the
    search heuristic: "none" (uniform), "manhattan", or "table" (pass the
    matrix from distance_table).
    """
    if frm == to:
        return [frm], 0
    if to in forbidden or frm in forbidden:
        return None

    if guide == "manhattan":
        h = lambda v: manhattan_bound(g, v, to)
    elif guide == "table":
        if table is None:
            raise InvalidParameterError("table guide needs a distance table")
        h = lambda v: table[v][to]
    elif guide == "none":
        h = lambda v: 0
    else:
        raise InvalidParameterError(f"unknown guide {guide!r}")

    best = {frm: 0}
    parent = {}
    heap = [(h(frm), 0, frm)]
    while heap:
        f, cost, v = heapq.heappop(heap)
        if v == to:
            path = [to]
            while path[-1] != frm:
                erid, prev = parent[path[-1]]
                path.append(erid)
                path.append(prev)
            path.reverse()
            return path, cost
        if cost > best.get(v, -1):
            continue
        for erid, u, w in g.moves[v]:
            if u in forbidden:
                continue
            nc = cost + w
            if nc < best.get(u, float("inf")):
                best[u] = nc
                parent[u] = (erid, v)
                heapq.heappush(heap, (nc + h(u), nc, u))
    return None


def distance_table(g: ResourceGraph) -> np.ndarray:
    """All-pairs least travel ticks between nodes; inf when unreachable."""
    rows, cols, vals = [], [], []
    seen = {}
    for e in g.edges:
        pairs = [(e.a, e.b)] if e.directed else [(e.a, e.b), (e.b, e.a)]
        for a, b in pairs:
            if (a, b) not in seen or e.weight < seen[(a, b)]:
                seen[(a, b)] = e.weight
    for (a, b), w in seen.items():
        rows.append(a)
        cols.append(b)
        vals.append(w)
    m = coo_matrix((vals, (rows, cols)), shape=(g.num_nodes, g.num_nodes))
    return _sp_dijkstra(m.tocsr(), directed=True)
