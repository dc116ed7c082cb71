"""Tree-or-separator subroutines.

Given target vertex sets A_1..A_h and a radius budget r, the vertex routine
returns either a tree on at most r vertices meeting every target, or a vertex
set Z with |Z| <= cSep*(h-1)*n/r such that no component of the working graph
minus Z meets all targets.  The edge routine lifts this through the line
graph: it yields a tree with at most r edges, or an edge set F with
|F| <= cSep*(h-1)*m/r separating the targets.

The layered-BFS scheme implemented here promises the factor cSep(h) = h for
h >= 2 (1 for h = 1); the factor is recorded on every result and the full
contract is re-verified exactly before anything is returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ParameterError
from .exact import SqrtExpr, as_exact
from .graphs import (EdgeSet, Graph, VertexSet, bfs_layers, components,
                     induced_edge_ids, line_graph)

#: running count of contract re-verifications, by flavor; tests read this
CONTRACT_STATS = {"vertex": 0, "edge": 0}


def guarantee_factor(h: int) -> int:
    """Separator-size guarantee factor of the layered scheme for h targets."""
    return 1 if h <= 1 else h


@dataclass(frozen=True)
class TreeOrSeparator:
    """Either/or result; exactly one of the two outcomes is populated.

    ``flavor`` says whether the separator field holds vertex ids ("vertex")
    or edge ids ("edge"); tree edges are vertex pairs for the vertex flavor
    and edge ids for the edge flavor.
    """

    flavor: str                      # "vertex" | "edge"
    kind: str                        # "tree" | "separator"
    h: int
    r: float                         # budget, as a float for reporting
    c_sep: int                       # promised guarantee factor for this call
    achieved: Fraction               # measured size of the returned object
    tree_vertices: Optional[VertexSet] = None
    tree_edges: Optional[tuple] = None
    separator: Optional[tuple] = None

    def is_tree(self) -> bool:
        return self.kind == "tree"


def vertex_tree_or_separator(g: Graph, targets: Sequence[Iterable[int]], r,
                             within: Optional[Iterable[int]] = None) -> TreeOrSeparator:
    """Vertex flavor of the lemma on the induced subgraph over ``within``."""
    work = frozenset(within) if within is not None else frozenset(range(g.n))
    tsets = [frozenset(t) for t in targets]
    h = len(tsets)
    if h == 0:
        raise ParameterError("at least one target set is required")
    for i, t in enumerate(tsets):
        if not t <= work:
            raise ParameterError(f"target {i} leaves the working vertex set")
    r_exact = as_exact(r)
    if h > 1 and r_exact < 1:
        raise ParameterError("radius budget r must be >= 1")
    kind, tv, te, sep = _vertex_scheme(g, tsets, r_exact, work)
    result = TreeOrSeparator(
        flavor="vertex", kind=kind, h=h, r=float(r_exact),
        c_sep=guarantee_factor(h),
        achieved=Fraction(len(tv) if kind == "tree" else len(sep)),
        tree_vertices=tv, tree_edges=te, separator=sep,
    )
    _verify_vertex(g, tsets, r_exact, work, result)
    return result


def _vertex_scheme(g, tsets, r_exact, work):
    """Recursive layered-BFS search; returns (kind, vertices, edges, separator)."""
    h = len(tsets)
    for t in tsets:
        if not t:
            # no tree can meet an empty target; the empty set separates vacuously
            return "separator", None, None, ()
    if h == 1:
        v = min(tsets[0])
        return "tree", (v,), (), None

    # Budget split: k candidate layers are scanned from the last target; a
    # found sub-tree costs at most r-k+1 vertices and the connecting path at
    # most k-1 more, so the total stays within r.
    if h == 2:
        k = r_exact.floor()
    else:
        k = (r_exact / (h - 1)).ceil()
    k = max(k, 1)
    sub_budget = r_exact - (k - 1)

    layers = bfs_layers(g, sorted(tsets[-1]), within=sorted(work))
    sizes = [len(layers[j]) if j < len(layers) else 0 for j in range(k + 1)]
    j_star = min(range(1, k + 1), key=lambda j: (sizes[j], j))
    layer = frozenset(layers[j_star]) if j_star < len(layers) else frozenset()

    z_parts = [sorted(layer)]
    remaining = work - layer
    for comp in components(g, within=remaining):
        cset = frozenset(comp)
        if not all(cset & t for t in tsets):
            continue
        sub_targets = [t & cset for t in tsets[:-1]]
        kind, tv, te, sep = _vertex_scheme(g, sub_targets, sub_budget, cset)
        if kind == "tree":
            verts, edges = _extend_to(g, cset, tsets[-1], set(tv), list(te))
            return "tree", verts, edges, None
        z_parts.append(sep)
    z = tuple(sorted(set(v for part in z_parts for v in part)))
    return "separator", None, None, z


def _extend_to(g, comp, target, tree_verts, tree_edges):
    """Grow the tree toward ``target`` along a shortest path inside ``comp``.

    Every vertex of ``comp`` sits within the scanned layers of the target, so
    the path is short; BFS stops at the first vertex already in the tree,
    which keeps the union acyclic.
    """
    sources = sorted(target & comp)
    if set(sources) & tree_verts:
        verts = tuple(sorted(tree_verts))
        return verts, tuple(tree_edges)
    parent = {s: None for s in sources}
    dq = deque(sources)
    hit = None
    while dq:
        v = dq.popleft()
        if v in tree_verts:
            hit = v
            break
        for u in g.adj[v]:
            if u in comp and u not in parent:
                parent[u] = v
                dq.append(u)
    assert hit is not None, "extension target unreachable inside its component"
    v = hit
    while parent[v] is not None:
        u = parent[v]
        tree_edges.append((u, v) if u < v else (v, u))
        tree_verts.add(u)
        v = u
    tree_verts.add(hit)
    return tuple(sorted(tree_verts)), tuple(sorted(tree_edges))


def _verify_vertex(g, tsets, r_exact, work, res: TreeOrSeparator) -> None:
    """Exact re-check of the vertex contract; AssertionError means a bug."""
    CONTRACT_STATS["vertex"] += 1
    h = len(tsets)
    if res.kind == "tree":
        verts = set(res.tree_vertices)
        assert verts <= work, "tree leaves the working set"
        assert len(res.tree_edges) == len(verts) - 1, "tree edge count"
        seen = _span(res.tree_edges, min(verts))
        assert seen == verts, "tree is not connected"
        for u, v in res.tree_edges:
            assert g.has_edge(u, v), "tree uses a non-edge"
        assert SqrtExpr(len(verts)) <= r_exact, "tree exceeds the radius budget"
        for i, t in enumerate(tsets):
            assert verts & t, f"tree misses target {i}"
    else:
        z = set(res.separator)
        assert z <= work, "separator leaves the working set"
        cap = res.c_sep * (h - 1) * len(work)
        assert r_exact * len(z) <= cap, "separator exceeds its size bound"
        for comp in components(g, within=work - z):
            assert not all(set(comp) & t for t in tsets), \
                "a component still meets every target"


def _span(edges, start):
    adj = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen = {start}
    dq = deque((start,))
    while dq:
        x = dq.popleft()
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                dq.append(y)
    return seen


def edge_tree_or_separator(g: Graph, targets: Sequence[Iterable[int]], r,
                           within: Optional[Iterable[int]] = None,
                           line: Optional[Graph] = None) -> TreeOrSeparator:
    """Edge flavor, via the vertex flavor on the line graph.

    Incidence edge sets of the targets play the target role in the line
    graph.  A line tree translates back as a spanning tree of the subgraph
    its vertices form; a line separator Z becomes F := Z unless some
    component of the working graph minus F still meets all targets, in which
    case that component is a single common-target vertex returned as a
    zero-edge tree.
    """
    work = frozenset(within) if within is not None else frozenset(range(g.n))
    tsets = [frozenset(t) for t in targets]
    h = len(tsets)
    if h == 0:
        raise ParameterError("at least one target set is required")
    for i, t in enumerate(tsets):
        if not t <= work:
            raise ParameterError(f"target {i} leaves the working vertex set")

    if h == 1:
        # tiny budgets make the reduction illegal; a single target vertex is
        # already a zero-edge tree
        if not tsets[0]:
            return _finish_edge(g, tsets, as_exact(r), work, "separator", None, None, ())
        v = min(tsets[0])
        return _finish_edge(g, tsets, as_exact(r), work, "tree", (v,), (), None)

    r_exact = as_exact(r)
    if r_exact < 1:
        raise ParameterError("radius budget r must be >= 1")
    work_eids = induced_edge_ids(g, work)
    eid_set = set(work_eids)
    for v in sorted(work):
        if not any(e in eid_set for e in g.adj_eids[v]):
            raise ParameterError(f"vertex {v} is isolated inside the working set")
    if any(not t for t in tsets):
        return _finish_edge(g, tsets, r_exact, work, "separator", None, None, ())

    lg = line if line is not None else line_graph(g)[0]
    line_targets = [_incidence_edges(g, t, eid_set) for t in tsets]
    sub = vertex_tree_or_separator(lg, line_targets, r_exact, within=work_eids)

    if sub.is_tree():
        verts, eids = _spanning_tree_of_edges(g, sub.tree_vertices)
        return _finish_edge(g, tsets, r_exact, work, "tree", verts, eids, None)

    f = tuple(sorted(sub.separator))
    for comp in components(g, within=work, banned_edges=f):
        cset = set(comp)
        if all(cset & t for t in tsets):
            # such a component has no surviving incident target edge, hence
            # is a single vertex common to every target
            assert len(comp) == 1, "multi-vertex component survived the line separator"
            return _finish_edge(g, tsets, r_exact, work, "tree", (comp[0],), (), None)
    return _finish_edge(g, tsets, r_exact, work, "separator", None, None, f)


def _incidence_edges(g, tset, eid_set):
    out = set()
    for v in tset:
        for e in g.adj_eids[v]:
            if e in eid_set:
                out.add(e)
    return tuple(sorted(out))


def _spanning_tree_of_edges(g: Graph, eids: Iterable[int]):
    """Spanning tree (as vertex set + edge ids) of the subgraph these edges form.

    The edge set of a line-graph tree can contain a cycle of the base graph;
    a spanning tree keeps the same vertex set and at most as many edges.
    """
    eids = sorted(eids)
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in eids:
        u, v = g.endpoints(e)
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    start = min(adj)
    seen = {start}
    picked = []
    dq = deque((start,))
    while dq:
        v = dq.popleft()
        for u, e in sorted(adj[v]):
            if u not in seen:
                seen.add(u)
                picked.append(e)
                dq.append(u)
    return tuple(sorted(seen)), tuple(sorted(picked))


def _finish_edge(g, tsets, r_exact, work, kind, tv, te, sep) -> TreeOrSeparator:
    res = TreeOrSeparator(
        flavor="edge", kind=kind, h=len(tsets), r=float(r_exact),
        c_sep=guarantee_factor(len(tsets)),
        achieved=Fraction(len(te) if kind == "tree" else len(sep)),
        tree_vertices=tv, tree_edges=te, separator=sep,
    )
    _verify_edge(g, tsets, r_exact, work, res)
    return res


def _verify_edge(g, tsets, r_exact, work, res: TreeOrSeparator) -> None:
    """Exact re-check of the edge contract; AssertionError means a bug."""
    CONTRACT_STATS["edge"] += 1
    h = len(tsets)
    m_work = len(induced_edge_ids(g, work))
    if res.kind == "tree":
        verts = set(res.tree_vertices)
        assert verts <= work, "tree leaves the working set"
        assert len(verts) == len(res.tree_edges) + 1, "tree vertex/edge count"
        if res.tree_edges:
            pairs = [g.endpoints(e) for e in res.tree_edges]
            seen = _span(pairs, min(verts))
            assert seen == verts, "edge tree is not connected"
            assert SqrtExpr(len(res.tree_edges)) <= r_exact, "edge tree exceeds the budget"
        for i, t in enumerate(tsets):
            assert verts & t, f"edge tree misses target {i}"
    else:
        f = set(res.separator)
        assert f <= set(induced_edge_ids(g, work)), "separator uses edges outside the view"
        cap = res.c_sep * (h - 1) * m_work
        if f:
            assert r_exact * len(f) <= cap, "edge separator exceeds its size bound"
        for comp in components(g, within=work, banned_edges=f):
            assert not all(set(comp) & t for t in tsets), \
                "a component still meets every target"


def minimalize_edge_separator(g: Graph, f_edges: Iterable[int],
                              targets: Sequence[Iterable[int]],
                              within: Optional[Iterable[int]] = None) -> EdgeSet:
    """Shrink a separating edge set to an inclusion-minimal one.

    Edges are considered in ascending id order; an edge is dropped when the
    two fragments it joins would still miss at least one target after the
    merge.  The result separates and no proper subset of it does.
    """
    work = sorted(within) if within is not None else list(range(g.n))
    work_set = set(work)
    tsets = [frozenset(t) for t in targets]
    f = sorted(set(f_edges))

    comps = components(g, within=work_set, banned_edges=f)
    full = (1 << len(tsets)) - 1
    if any(_hits(c, tsets) == full for c in comps):
        raise ParameterError("input edge set does not separate the targets")

    parent = {}
    hits = {}
    for comp in comps:
        root = comp[0]
        for v in comp:
            parent[v] = root
        hits[root] = _hits(comp, tsets)

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    kept = []
    for e in f:
        u, v = g.endpoints(e)
        if u not in work_set or v not in work_set:
            continue  # edges outside the view separate nothing
        ru, rv = find(u), find(v)
        if ru == rv:
            continue  # both ends already in one fragment: e is redundant
        merged = hits[ru] | hits[rv]
        if merged == full:
            kept.append(e)  # dropping e would reunite all targets
        else:
            parent[ru] = rv
            hits[rv] = merged
    return tuple(kept)


def _hits(comp, tsets) -> int:
    mask = 0
    cset = set(comp)
    for i, t in enumerate(tsets):
        if cset & t:
            mask |= 1 << i
    return mask
