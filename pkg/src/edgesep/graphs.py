"""Core immutable graph type and the primitive operations everything consumes.

Vertices are dense integers 0..n-1.  Edges are unordered pairs stored with
u < v and sorted lexicographically; the id of an edge is its index in that
order, so ids are stable across runs and platforms.  Subgraph views are
expressed as vertex masks (``within``) and banned edge sets instead of
re-indexed copies: every certificate produced downstream refers to host ids.
All operations are pure and deterministic.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

# Sorted tuples of ids; plain tuples keep the values hashable and canonical.
VertexSet = tuple
EdgeSet = tuple


class Graph:
    """Simple undirected graph, immutable after construction."""

    __slots__ = ("n", "edges", "adj", "adj_eids", "_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        canon = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            canon.append((u, v) if u < v else (v, u))
        canon.sort()
        for i in range(1, len(canon)):
            if canon[i] == canon[i - 1]:
                raise ValueError(f"duplicate edge {canon[i]}")
        self.n = n
        self.edges = tuple(canon)
        adj = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(self.edges):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        for lst in adj:
            lst.sort()
        self.adj = tuple(tuple(x for x, _ in lst) for lst in adj)
        self.adj_eids = tuple(tuple(e for _, e in lst) for lst in adj)
        self._index = {e: i for i, e in enumerate(self.edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple:
        return self.adj[v]

    def incident(self, v: int) -> EdgeSet:
        """Ids of edges incident to v, sorted ascending."""
        return tuple(sorted(self.adj_eids[v]))

    def edge_id(self, u: int, v: int) -> int:
        return self._index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self.edges[eid]

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def max_degree(g: Graph) -> int:
    """Maximum vertex degree; 0 for edgeless graphs."""
    return max((len(a) for a in g.adj), default=0) if g.n else 0


def components(g: Graph, within: Optional[Iterable[int]] = None,
               banned_edges: Iterable[int] = ()) -> list[VertexSet]:
    """Connected components of the induced subgraph on ``within``.

    ``banned_edges`` removes individual edges from the view.  Each component
    is a sorted vertex tuple; the list is ordered by smallest contained id.
    """
    verts = sorted(set(within)) if within is not None else range(g.n)
    inset = set(verts)
    banned = set(banned_edges)
    seen: set[int] = set()
    out = []
    for s in verts:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        dq = deque((s,))
        while dq:
            v = dq.popleft()
            for u, eid in zip(g.adj[v], g.adj_eids[v]):
                if u in inset and u not in seen and eid not in banned:
                    seen.add(u)
                    comp.append(u)
                    dq.append(u)
        out.append(tuple(sorted(comp)))
    return out


def neighborhood(g: Graph, xs: Iterable[int]) -> VertexSet:
    """Open neighborhood: vertices outside xs adjacent to at least one of xs."""
    xset = set(xs)
    out: set[int] = set()
    for v in xset:
        out.update(g.adj[v])
    return tuple(sorted(out - xset))


def edges_between(g: Graph, xs: Iterable[int], ys: Iterable[int]) -> EdgeSet:
    """Ids of edges with one end in xs and the other in ys."""
    xset, yset = set(xs), set(ys)
    out = []
    for eid, (u, v) in enumerate(g.edges):
        if (u in xset and v in yset) or (u in yset and v in xset):
            out.append(eid)
    return tuple(out)


def bfs_layers(g: Graph, sources: Iterable[int],
               within: Optional[Iterable[int]] = None) -> list[VertexSet]:
    """BFS distance layers from ``sources`` inside the induced subgraph.

    Layer j holds the vertices of ``within`` at induced distance exactly j;
    unreachable vertices are omitted.  Layer 0 is the source set itself.
    """
    inset = set(within) if within is not None else set(range(g.n))
    srcs = sorted(set(sources))
    if any(s not in inset for s in srcs):
        raise ValueError("sources must lie inside the working vertex set")
    if not srcs:
        return []
    dist = {s: 0 for s in srcs}
    frontier = srcs
    layers = [tuple(srcs)]
    while frontier:
        nxt: set[int] = set()
        for v in frontier:
            for u in g.adj[v]:
                if u in inset and u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.add(u)
        if nxt:
            layers.append(tuple(sorted(nxt)))
        frontier = sorted(nxt)
    return layers


def induced_edge_ids(g: Graph, within: Iterable[int]) -> EdgeSet:
    """Ids of edges with both endpoints in ``within``."""
    inset = set(within)
    out = []
    for v in sorted(inset):
        for u, eid in zip(g.adj[v], g.adj_eids[v]):
            if v < u and u in inset:
                out.append(eid)
    out.sort()
    return tuple(out)


def line_graph(g: Graph) -> tuple[Graph, tuple]:
    """Line graph of g plus the edge-id -> line-vertex-id bijection.

    Line vertices are the edge ids of g in their canonical order, so the
    bijection is the identity; it is returned explicitly so callers never
    have to assume that.
    """
    pairs = []
    for v in range(g.n):
        eids = g.adj_eids[v]
        for i in range(len(eids)):
            for j in range(i + 1, len(eids)):
                a, b = eids[i], eids[j]
                pairs.append((a, b) if a < b else (b, a))
    return Graph(g.m, pairs), tuple(range(g.m))


def is_connected_set(g: Graph, xs: Iterable[int]) -> bool:
    """True iff the induced subgraph on xs is connected (empty sets are not)."""
    xs = set(xs)
    if not xs:
        return False
    start = min(xs)
    seen = {start}
    dq = deque((start,))
    while dq:
        v = dq.popleft()
        for u in g.adj[v]:
            if u in xs and u not in seen:
                seen.add(u)
                dq.append(u)
    return seen == xs


def validate_model(g: Graph, branch_sets) -> tuple[bool, Optional[str]]:
    """Check the minor-model invariants; returns (ok, first violated clause)."""
    sets = [tuple(sorted(s)) for s in branch_sets]
    seen: set[int] = set()
    for i, s in enumerate(sets):
        if not s:
            return False, f"nonempty: branch set {i} is empty"
        for v in s:
            if not (0 <= v < g.n):
                return False, f"range: vertex {v} of branch set {i} out of range"
        if seen.intersection(s):
            return False, f"disjointness: branch set {i} overlaps an earlier one"
        seen.update(s)
    for i, s in enumerate(sets):
        if not is_connected_set(g, s):
            return False, f"connectivity: branch set {i} is not connected"
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not edges_between(g, sets[i], sets[j]):
                return False, f"pairwise adjacency: no edge between branch sets {i} and {j}"
    return True, None
