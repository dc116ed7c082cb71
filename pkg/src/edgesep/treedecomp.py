"""Tree-decompositions as certified values plus the constructive algebra on them.

A decomposition carries an optional *designated* node whose bag is known to
contain the currently tracked root clique; the recursion in the partition
engine only ever glues and attaches along root cliques, so keeping that node
explicit turns clique lookups into O(1) accesses.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .graphs import Graph, VertexSet


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by the nodes 0..k-1 of a tree.

    ``bags[i]`` is a sorted vertex tuple over the decomposed graph's universe.
    ``designated``, when set, points at a node whose bag contains
    ``root_clique``.
    """

    bags: tuple
    tree_edges: tuple
    designated: Optional[int] = None
    root_clique: Optional[VertexSet] = None

    @property
    def n_nodes(self) -> int:
        return len(self.bags)


EMPTY = TreeDecomposition(bags=(), tree_edges=())


def width(d: TreeDecomposition) -> int:
    """Max bag size minus one; -1 for the empty decomposition."""
    return max((len(b) for b in d.bags), default=0) - 1


def singleton(clique: Iterable[int]) -> TreeDecomposition:
    """One-node decomposition whose bag is the given clique."""
    bag = tuple(sorted(set(clique)))
    return TreeDecomposition(bags=(bag,), tree_edges=(), designated=0, root_clique=bag)


def validate_decomposition(g: Graph, d: TreeDecomposition) -> tuple[bool, Optional[str]]:
    """Check the three decomposition axioms plus structural sanity.

    Returns (ok, first violated clause).  ``g`` is the decomposed graph; an
    empty decomposition is valid exactly for the graph with no vertices.
    """
    k = d.n_nodes
    for a, b in d.tree_edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            return False, "tree structure: bad tree edge"
    if len(set(tuple(sorted(e)) for e in d.tree_edges)) != len(d.tree_edges):
        return False, "tree structure: duplicate tree edge"
    if k > 0:
        if len(d.tree_edges) != k - 1:
            return False, "tree structure: edge count is not nodes-1"
        nbrs = [[] for _ in range(k)]
        for a, b in d.tree_edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        seen = {0}
        dq = deque((0,))
        while dq:
            v = dq.popleft()
            for u in nbrs[v]:
                if u not in seen:
                    seen.add(u)
                    dq.append(u)
        if len(seen) != k:
            return False, "tree structure: tree is disconnected"

    covered: set[int] = set()
    for bag in d.bags:
        for v in bag:
            if not (0 <= v < g.n):
                return False, f"vertex coverage: bag element {v} out of range"
        covered.update(bag)
    if covered != set(range(g.n)):
        return False, "vertex coverage: some vertex appears in no bag"

    bag_sets = [set(b) for b in d.bags]
    nodes_of: dict[int, list[int]] = {}
    for i, bag in enumerate(d.bags):
        for v in bag:
            nodes_of.setdefault(v, []).append(i)
    for u, v in g.edges:
        if not any(v in bag_sets[i] for i in nodes_of.get(u, ())):
            return False, f"edge coverage: edge ({u},{v}) in no bag"

    if k > 0:
        nbrs = [[] for _ in range(k)]
        for a, b in d.tree_edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        for v, nodes in nodes_of.items():
            node_set = set(nodes)
            start = nodes[0]
            seen = {start}
            dq = deque((start,))
            while dq:
                x = dq.popleft()
                for y in nbrs[x]:
                    if y in node_set and y not in seen:
                        seen.add(y)
                        dq.append(y)
            if seen != node_set:
                return False, f"subtree connectivity: vertex {v} spans a disconnected node set"

    if d.designated is not None:
        if not (0 <= d.designated < k):
            return False, "designated bag: designated node out of range"
        if d.root_clique is not None and not set(d.root_clique) <= bag_sets[d.designated]:
            return False, "designated bag: designated bag misses the root clique"
    return True, None


def glue(d1: TreeDecomposition, d2: TreeDecomposition,
         shared: Iterable[int]) -> TreeDecomposition:
    """Join two decompositions whose graphs intersect in the clique ``shared``.

    A fresh connector node with bag = shared is wired to both designated
    nodes.  Width of the result is max(width(d1), width(d2), |shared| - 1).
    """
    shared = tuple(sorted(set(shared)))
    for side, d in (("first", d1), ("second", d2)):
        if d.designated is None:
            raise ValueError(f"glue: {side} decomposition has no designated node")
        if not set(shared) <= set(d.bags[d.designated]):
            raise ValueError(f"glue: {side} designated bag does not contain the shared clique")
    off = d1.n_nodes
    conn = off + d2.n_nodes
    bags = d1.bags + d2.bags + (shared,)
    edges = (d1.tree_edges
             + tuple((a + off, b + off) for a, b in d2.tree_edges)
             + ((conn, d1.designated), (conn, d2.designated + off)))
    return TreeDecomposition(bags=bags, tree_edges=edges, designated=conn, root_clique=shared)


def attach_vertex(d: TreeDecomposition, v: int, clique: Iterable[int]) -> TreeDecomposition:
    """Add a new vertex adjacent to an existing clique (Fact-style extension).

    A leaf bag clique + {v} is hung off a node whose bag contains the clique
    (the designated node when it qualifies, else the first matching node).
    The leaf becomes the designated node and clique + {v} the root clique.
    """
    cl = tuple(sorted(set(clique)))
    host = None
    if (d.designated is not None and set(cl) <= set(d.bags[d.designated])):
        host = d.designated
    else:
        for i, bag in enumerate(d.bags):
            if set(cl) <= set(bag):
                host = i
                break
    new_bag = tuple(sorted(set(cl) | {v}))
    if host is None:
        if cl:
            raise ValueError("attach_vertex: no bag contains the clique")
        # attaching to the empty clique in an empty decomposition
        if d.n_nodes == 0:
            return TreeDecomposition(bags=(new_bag,), tree_edges=(),
                                     designated=0, root_clique=new_bag)
        host = 0
    new = d.n_nodes
    return TreeDecomposition(
        bags=d.bags + (new_bag,),
        tree_edges=d.tree_edges + ((host, new),),
        designated=new,
        root_clique=new_bag,
    )


def product_blowup(d: TreeDecomposition,
                   part_members: Sequence) -> TreeDecomposition:
    """Replace every part id in every bag by that part's member ids.

    Used to turn a decomposition of the partition graph H into one of the
    line graph: bag B becomes the union of the edge sets of its parts.  Width
    is at most (max bag size of d) * (max part size) - 1.
    """
    bags = []
    for bag in d.bags:
        merged: set[int] = set()
        for pid in bag:
            merged.update(part_members[pid])
        bags.append(tuple(sorted(merged)))
    return TreeDecomposition(bags=tuple(bags), tree_edges=d.tree_edges,
                             designated=d.designated, root_clique=None)


def relabel(d: TreeDecomposition, mapping: Mapping[int, int]) -> TreeDecomposition:
    """Rewrite bag contents through ``mapping`` (tree shape unchanged)."""
    bags = tuple(tuple(sorted(mapping[v] for v in bag)) for bag in d.bags)
    rc = None
    if d.root_clique is not None:
        rc = tuple(sorted(mapping[v] for v in d.root_clique))
    return TreeDecomposition(bags=bags, tree_edges=d.tree_edges,
                             designated=d.designated, root_clique=rc)
