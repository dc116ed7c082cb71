"""Weighted balanced edge separators and isoperimetric witnesses.

One bag of the line graph's tree-decomposition, chosen by orienting the
decomposition tree toward heavy weight and walking to a sink, is a balanced
edge separator: every component of G minus that bag carries weight at most
one half.  All weight arithmetic is exact rational; the 1/2 threshold is
never compared through floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import IncidentError, ParameterError
from .graphs import EdgeSet, Graph, VertexSet, components, edges_between
from .partition import KtCertificate, PartitionResult, partition_line_graph
from .treedecomp import TreeDecomposition, product_blowup

HALF = Fraction(1, 2)


def uniform_weights(n: int) -> tuple:
    if n < 2:
        raise ParameterError("uniform weights need at least 2 vertices")
    return tuple(Fraction(1, n) for _ in range(n))


def check_weights(g: Graph, w) -> None:
    if len(w) != g.n:
        raise ParameterError("weight function must cover every vertex")
    total = Fraction(0)
    for i, x in enumerate(w):
        if not isinstance(x, Fraction):
            raise ParameterError("weights must be exact rationals")
        if x < 0 or x > HALF:
            raise ParameterError(f"weight of vertex {i} outside [0, 1/2]")
        total += x
    if total != 1:
        raise ParameterError("weights must sum to exactly 1")


@dataclass(frozen=True)
class EdgeSeparatorResult:
    edges: EdgeSet
    components: tuple                 # ((vertices, weight), ...)
    bound_used: int                   # (t-1) * floor(p_impl)
    reference_bound: int                  # same bound at c_sep = 1
    sink_node: Optional[int]          # decomposition node whose bag is F
    anchors: tuple                    # per vertex: decomposition node id


@dataclass(frozen=True)
class IsoperimetricWitness:
    s: VertexSet
    cut_size: int
    ratio: Fraction


def balanced_edge_separator(g: Graph, w, t: int
                            ) -> Union[EdgeSeparatorResult, KtCertificate]:
    """Edge set F with every component of G - F of weight at most 1/2."""
    check_weights(g, w)
    res = partition_line_graph(g, t)
    if isinstance(res, KtCertificate):
        return res
    return separator_from_partition(g, res, w)


def separator_from_partition(g: Graph, res: PartitionResult, w
                             ) -> EdgeSeparatorResult:
    """Extract the separator from an already-computed partition result."""
    check_weights(g, w)
    params = res.params
    part = res.partition
    bound_used = (params.t - 1) * params.p_floor()
    reference_bound = (params.t - 1) * params.reference_p_floor()

    if part.decomp.n_nodes == 0:
        comps = tuple((c, sum((w[v] for v in c), Fraction(0)))
                      for c in components(g))
        for c, weight in comps:
            assert weight <= HALF
        return EdgeSeparatorResult(edges=(), components=comps,
                                   bound_used=bound_used, reference_bound=reference_bound,
                                   sink_node=None, anchors=(None,) * g.n)

    anchors = _anchor_vertices(g, part)
    node_weights: dict[int, Fraction] = {}
    for v, node in enumerate(anchors):
        node_weights[node] = node_weights.get(node, Fraction(0)) + w[v]

    blowup = product_blowup(part.decomp, part.parts)
    sink = orient_and_find_sink(blowup, node_weights)
    f = blowup.bags[sink]

    comps = []
    for c in components(g, banned_edges=f):
        weight = sum((w[v] for v in c), Fraction(0))
        assert weight <= HALF, "a component of G - F exceeds weight 1/2"
        comps.append((c, weight))
    assert len(f) <= bound_used, "separator exceeds the size bound"
    return EdgeSeparatorResult(edges=tuple(f), components=tuple(comps),
                               bound_used=bound_used, reference_bound=reference_bound,
                               sink_node=sink, anchors=anchors)


def _anchor_vertices(g: Graph, part) -> tuple:
    """u(x): smallest node whose bag holds every edge at x.

    The edges at a vertex form a clique of the line graph, so their parts
    form a clique of H and some bag of H's decomposition contains them all;
    searching the part-level bags is equivalent to searching the blown-up
    ones and much cheaper.  Isolated vertices anchor at the designated node.
    """
    part_of = {}
    for pid, edge_set in enumerate(part.parts):
        for e in edge_set:
            part_of[e] = pid
    nodes_of_part: dict[int, set] = {}
    for node, bag in enumerate(part.decomp.bags):
        for pid in bag:
            nodes_of_part.setdefault(pid, set()).add(node)
    fallback = part.decomp.designated if part.decomp.designated is not None else 0
    anchors = []
    for v in range(g.n):
        pids = sorted({part_of[e] for e in g.adj_eids[v]})
        if not pids:
            anchors.append(fallback)
            continue
        candidates = set(nodes_of_part[pids[0]])
        for pid in pids[1:]:
            candidates &= nodes_of_part[pid]
        assert candidates, f"no bag holds the edge clique of vertex {v}"
        anchors.append(min(candidates))
    return tuple(anchors)


def orient_and_find_sink(d: TreeDecomposition, node_weights) -> int:
    """Node of the decomposition tree with no incident edge oriented away.

    A tree edge points toward the side of weight > 1/2; edges balanced at
    exactly 1/2 stay unoriented.  Such a sink always exists; the smallest id
    is returned.
    """
    k = d.n_nodes
    if k == 0:
        raise ParameterError("empty decomposition has no sink")
    total = sum(node_weights.values(), Fraction(0))
    if total != 1:
        raise ParameterError("node weights must sum to exactly 1")
    wts = [node_weights.get(i, Fraction(0)) for i in range(k)]
    nbrs = [[] for _ in range(k)]
    for a, b in d.tree_edges:
        nbrs[a].append(b)
        nbrs[b].append(a)

    # subtree sums via an iterative rooted pass
    parent = [-1] * k
    order = [0]
    parent[0] = 0
    for v in order:
        for u in nbrs[v]:
            if parent[u] == -1:
                parent[u] = v
                order.append(u)
    if len(order) != k:
        raise ParameterError("decomposition tree is disconnected")
    sub = list(wts)
    for v in reversed(order[1:]):
        sub[parent[v]] += sub[v]

    for v in range(k):
        ok = True
        for u in nbrs[v]:
            far = sub[u] if parent[u] == v else 1 - sub[v]
            if far > HALF:
                ok = False
                break
        if ok:
            return v
    raise AssertionError("orientation of a finite tree always has a sink")


def isoperimetric_witness(g: Graph, t: int
                          ) -> Union[IsoperimetricWitness, KtCertificate]:
    """Vertex set S with |S| in [n/3, n/2] certifying an expansion upper bound.

    Runs the balanced separator under uniform weights and assembles S from
    components of G - F by exact subset-sum over their sizes; a greedy
    largest-first pass is tried first and validated against the window.
    """
    if g.n < 2:
        raise ParameterError("isoperimetric witness needs at least 2 vertices")
    sep = balanced_edge_separator(g, uniform_weights(g.n), t)
    if isinstance(sep, KtCertificate):
        return sep
    n = g.n
    lo = -(-n // 3)          # ceil(n/3)
    hi = n // 2
    comps = [c for c, _ in sep.components]
    sizes = [len(c) for c in comps]

    chosen = _greedy_window(sizes, lo, hi)
    if chosen is None:
        chosen = _subset_sum_window(sizes, lo, hi)
    if chosen is None:
        raise IncidentError(
            f"no component subset reaches the window [{lo},{hi}]; sizes={sizes}")

    s: list[int] = []
    for idx in chosen:
        s.extend(comps[idx])
    s_tuple = tuple(sorted(s))
    s_set = set(s_tuple)
    rest = tuple(v for v in range(n) if v not in s_set)
    cut = len(edges_between(g, s_tuple, rest))
    ratio = Fraction(cut, len(s_tuple))
    assert lo <= len(s_tuple) <= hi
    assert ratio <= Fraction(3 * len(sep.edges), n), "ratio exceeds |F|/(n/3)"
    return IsoperimetricWitness(s=s_tuple, cut_size=cut, ratio=ratio)


def _greedy_window(sizes, lo, hi):
    order = sorted(range(len(sizes)), key=lambda i: (-sizes[i], i))
    acc = 0
    chosen = []
    for i in order:
        if acc >= lo:
            break
        acc += sizes[i]
        chosen.append(i)
    return sorted(chosen) if lo <= acc <= hi else None


def _subset_sum_window(sizes, lo, hi):
    """First achievable sum in [lo, hi], reconstructed deterministically."""
    reach = {0: ()}
    for i, s in enumerate(sizes):
        additions = {}
        for total, picks in reach.items():
            t2 = total + s
            if t2 <= hi and t2 not in reach and t2 not in additions:
                additions[t2] = picks + (i,)
        reach.update(additions)
    for total in range(lo, hi + 1):
        if total in reach:
            return list(reach[total])
    return None
