"""The core recursion: clique-rooted partitions of the line graph.

For a K_t-minor-free bounded-degree graph the engine produces a partition of
the line graph's vertices (= edge sets of the host graph) into parts of size
at most p_impl, organised as a graph H of treewidth at most t-2, rooted at a
clique of parts, together with a width-certified tree-decomposition of H.
When the K_t-minor-freeness assumption fails along the way, the recursion has
found an explicit K_t-model and returns it as a certificate instead.

The recursion state is kept as host-id sets throughout; nothing is ever
re-indexed, so parts, models and certificates all refer to the input graph.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ParameterError
from .exact import SqrtExpr
from .graphs import (Graph, VertexSet, components, edges_between,
                     induced_edge_ids, line_graph, max_degree, neighborhood,
                     validate_model)
from .tree_or_sep import edge_tree_or_separator, minimalize_edge_separator
from .treedecomp import (EMPTY, TreeDecomposition, attach_vertex, glue,
                         product_blowup, relabel, singleton,
                         validate_decomposition, width)


@dataclass(frozen=True)
class Params:
    """Run parameters; all bound comparisons against p_impl are exact.

    p_impl = sqrt(c_sep*(t-3)*delta*m) + delta.  With c_sep = 1 this is the
    source bound p; the implementation's tree-or-separator scheme promises
    c_sep = t - 2, and every downstream formula consumes c_sep symbolically.
    """

    t: int
    delta: int
    m: int
    c_sep: int

    @classmethod
    def for_graph(cls, g: Graph, t: int, c_sep: Optional[int] = None) -> "Params":
        if t < 3:
            raise ParameterError("t must be at least 3")
        return cls(t=t, delta=max_degree(g), m=g.m,
                   c_sep=(t - 2) if c_sep is None else c_sep)

    @property
    def p_inner(self) -> int:
        return self.c_sep * (self.t - 3) * self.delta * self.m

    def p_floor(self) -> int:
        return self.delta + math.isqrt(self.p_inner)

    def reference_p_floor(self) -> int:
        """floor of p at c_sep = 1, the best-possible subroutine constant."""
        return self.delta + math.isqrt((self.t - 3) * self.delta * self.m)

    def p_value(self) -> float:
        return math.sqrt(self.p_inner) + self.delta

    def allows_part_size(self, size: int) -> bool:
        """Exact test size <= p_impl."""
        if size <= self.delta:
            return True
        return (size - self.delta) ** 2 <= self.p_inner

    def r_of(self, h: int) -> SqrtExpr:
        """Radius budget sqrt(c_sep*(h-1)*m/delta) used by the recursion."""
        if self.delta == 0:
            raise ParameterError("radius budget undefined for an edgeless graph")
        return SqrtExpr.sqrt(Fraction(self.c_sep * (h - 1) * self.m, self.delta))


def p_value(params: Params) -> float:
    """sqrt(c_sep*(t-3)*delta*m) + delta."""
    return params.p_value()


@dataclass(frozen=True)
class KtCertificate:
    """Explicit K_t-model witnessing that the input had a K_t minor."""

    branch_sets: tuple
    t: int


@dataclass(frozen=True)
class RootedPartition:
    """Partition graph H over edge sets of the host graph.

    ``parts[i]`` is a sorted edge-id tuple; ``h_edges`` the adjacency among
    part ids; ``root`` the part ids of the tracked root clique in caller
    order; ``decomp`` a tree-decomposition of H over part ids whose
    designated bag contains the root.
    """

    parts: tuple
    h_edges: tuple
    root: tuple
    decomp: TreeDecomposition


@dataclass(frozen=True)
class RootedInstance:
    """Public description of one recursion instance (host ids throughout)."""

    c: VertexSet
    roots: tuple      # tuple of edge-id tuples E_1..E_h
    model: tuple      # tuple of vertex tuples U_1..U_h


@dataclass(frozen=True)
class PartitionResult:
    partition: RootedPartition
    embedding: tuple   # per edge id: (part id, slot index >= 1)
    params: Params


EngineOutcome = Union[RootedPartition, KtCertificate]


# ---------------------------------------------------------------- recursion

def _edges_touching(g: Graph, verts, c_set) -> frozenset:
    """C-edges with at least one end in ``verts`` (both ends inside C)."""
    out = set()
    for v in verts:
        for u, eid in zip(g.adj[v], g.adj_eids[v]):
            if u in c_set:
                out.add(eid)
    return frozenset(out)


def _complete_on(root_sets: Sequence[frozenset]) -> RootedPartition:
    """Complete partition graph on the given parts, all of them rooted."""
    parts = tuple(tuple(sorted(s)) for s in root_sets)
    ids = tuple(range(len(parts)))
    h_edges = tuple((i, j) for i in ids for j in ids if i < j)
    return RootedPartition(parts=parts, h_edges=h_edges, root=ids,
                           decomp=singleton(ids))


def _attach_part(base: RootedPartition, part_edges: frozenset):
    """Append a new part adjacent to every root part of ``base``."""
    new_pid = len(base.parts)
    clique = tuple(sorted(base.root))
    h_edges = set(base.h_edges)
    for pid in base.root:
        h_edges.add((pid, new_pid) if pid < new_pid else (new_pid, pid))
    out = RootedPartition(
        parts=base.parts + (tuple(sorted(part_edges)),),
        h_edges=tuple(sorted(h_edges)),
        root=base.root,
        decomp=attach_vertex(base.decomp, new_pid, clique),
    )
    return out, new_pid


def _merge_at_root(acc: RootedPartition, nxt: RootedPartition) -> RootedPartition:
    """Union of two partitions rooted at the same parts, glued at the root."""
    mapping = {}
    for i, pid in enumerate(nxt.root):
        target = acc.root[i]
        assert acc.parts[target] == nxt.parts[pid], "root parts disagree across a merge"
        mapping[pid] = target
    new_parts = list(acc.parts)
    for pid, part in enumerate(nxt.parts):
        if pid not in mapping:
            mapping[pid] = len(new_parts)
            new_parts.append(part)
    h_edges = set(acc.h_edges)
    for a, b in nxt.h_edges:
        x, y = mapping[a], mapping[b]
        if x != y:
            h_edges.add((x, y) if x < y else (y, x))
    merged = glue(acc.decomp, relabel(nxt.decomp, mapping), tuple(sorted(acc.root)))
    return RootedPartition(parts=tuple(new_parts), h_edges=tuple(sorted(h_edges)),
                           root=acc.root, decomp=merged)


def _merge_disjoint(acc: RootedPartition, nxt: RootedPartition) -> RootedPartition:
    """Disjoint union of partitions of separate components (empty shared clique)."""
    off = len(acc.parts)
    mapping = {pid: pid + off for pid in range(len(nxt.parts))}
    h_edges = set(acc.h_edges)
    h_edges.update((a + off, b + off) for a, b in nxt.h_edges)
    merged = glue(acc.decomp, relabel(nxt.decomp, mapping), ())
    return RootedPartition(parts=acc.parts + nxt.parts,
                           h_edges=tuple(sorted(h_edges)), root=(), decomp=merged)


def _step(g, line, params, c_set, roots, models, nbrs, parent_measure):
    h = len(roots)
    measure = 2 * len(c_set) + h
    if parent_measure is not None:
        assert measure < parent_measure, "recursion measure failed to decrease"
    t = params.t

    # an oversized root model is already a K_t-model on its own
    if h >= t:
        return KtCertificate(tuple(tuple(sorted(u)) for u in models[:t]), t)

    comps = components(g, within=c_set)
    if len(comps) > 1:
        acc = None
        for comp in comps:
            sub = _step(g, line, params, frozenset(comp), roots, models, nbrs, measure)
            if isinstance(sub, KtCertificate):
                return sub
            acc = sub if acc is None else _merge_at_root(acc, sub)
        return acc

    targets = [c_set & nb for nb in nbrs]       # A_i = V(C) ∩ N(U_i)
    empties = [i for i, a in enumerate(targets) if not a]
    assert len(empties) < h, "a proper C inside a connected component neighbors some U_i"
    if empties:
        k = empties[0]
        sub = _step(g, line, params, c_set,
                    roots[:k] + roots[k + 1:],
                    models[:k] + models[k + 1:],
                    nbrs[:k] + nbrs[k + 1:], measure)
        if isinstance(sub, KtCertificate):
            return sub
        attached, new_pid = _attach_part(sub, roots[k])
        return replace(attached, root=sub.root[:k] + (new_pid,) + sub.root[k:])

    # C connected and every A_i nonempty: (U_1..U_h, V(C)) is a K_{h+1}-model
    if h >= t - 1:
        sets = tuple(tuple(sorted(u)) for u in models) + (tuple(sorted(c_set)),)
        return KtCertificate(sets, t)

    if len(c_set) == 1:
        return _complete_on(roots)

    tos = edge_tree_or_separator(g, targets, params.r_of(h), within=c_set, line=line)

    if tos.is_tree():
        tv = frozenset(tos.tree_vertices)
        e_new = _edges_touching(g, tv, c_set)
        assert e_new, "C is connected with |C| > 1, so the tree touches an edge"
        assert params.allows_part_size(len(e_new)), "tree part exceeds the size budget"
        roots2 = roots + (e_new,)
        models2 = models + (tv,)
        nbrs2 = nbrs + (frozenset(neighborhood(g, tv)),)
        if tv == c_set:
            return replace(_complete_on(roots2), root=tuple(range(h)))
        sub = _step(g, line, params, c_set - tv, roots2, models2, nbrs2, measure)
        if isinstance(sub, KtCertificate):
            return sub
        return replace(sub, root=sub.root[:h])

    f = frozenset(minimalize_edge_separator(g, tos.separator, targets, within=c_set))
    assert f, "connected C with nonempty targets forces a nonempty separator"
    assert params.allows_part_size(len(f)), "separator part exceeds the size budget"
    comps = components(g, within=c_set, banned_edges=f)
    assert len(comps) >= 2, "an inclusion-minimal separator splits C"
    x_cache: dict[int, frozenset] = {}
    acc = None
    for comp in comps:
        cset = frozenset(comp)
        missing = next(i for i, a in enumerate(targets) if not (cset & a))
        if missing not in x_cache:
            x_cache[missing] = frozenset(
                v for other in comps if set(other) & targets[missing] for v in other)
        x = x_cache[missing]
        u2 = models[missing] | x
        nb2 = (nbrs[missing] | frozenset(neighborhood(g, x))) - u2
        sub = _step(g, line, params, cset,
                    roots[:missing] + (f,) + roots[missing + 1:],
                    models[:missing] + (u2,) + models[missing + 1:],
                    nbrs[:missing] + (nb2,) + nbrs[missing + 1:], measure)
        if isinstance(sub, KtCertificate):
            return sub
        attached, new_pid = _attach_part(sub, roots[missing])
        root_j = (sub.root[missing],) + tuple(
            new_pid if i == missing else sub.root[i] for i in range(h))
        child = replace(attached, root=root_j)
        acc = child if acc is None else _merge_at_root(acc, child)
    return replace(acc, root=acc.root[1:])


# ---------------------------------------------------------------- public ops

def check_instance(g: Graph, inst: RootedInstance, params: Params) -> None:
    """Raise ParameterError naming the first violated instance invariant."""
    c = set(inst.c)
    if not c:
        raise ParameterError("instance: C is empty")
    if any(not (0 <= v < g.n) for v in c):
        raise ParameterError("instance: C contains out-of-range vertices")
    comp = next((set(k) for k in components(g) if c & set(k)), set())
    if not c <= comp:
        raise ParameterError("instance: C spans several components")
    if c == comp:
        raise ParameterError("instance: C must be a proper subset of its component")
    h = len(inst.roots)
    if h == 0 or h != len(inst.model):
        raise ParameterError("instance: roots and model must be nonempty and aligned")
    c_edges = set(induced_edge_ids(g, c))
    seen: set[int] = set()
    for i, e_i in enumerate(inst.roots):
        es = set(e_i)
        if not es:
            raise ParameterError(f"instance: root edge set {i} is empty")
        if es & c_edges:
            raise ParameterError(f"instance: root edge set {i} meets E(C)")
        if es & seen:
            raise ParameterError(f"instance: root edge set {i} overlaps another")
        if not params.allows_part_size(len(es)):
            raise ParameterError(f"instance: root edge set {i} exceeds the size budget")
        seen |= es
    ok, why = validate_model(g, inst.model)
    if not ok:
        raise ParameterError(f"instance: model invalid ({why})")
    union_u: set[int] = set()
    for i, u in enumerate(inst.model):
        if set(u) & c:
            raise ParameterError(f"instance: model set {i} meets C")
        union_u |= set(u)
    if not set(neighborhood(g, c)) <= union_u:
        raise ParameterError("instance: N(C) is not covered by the model")
    for i, (u, e_i) in enumerate(zip(inst.model, inst.roots)):
        if not set(edges_between(g, c, u)) <= set(e_i):
            raise ParameterError(f"instance: E(C, U_{i + 1}) not contained in root set {i}")


def induction_step(g: Graph, inst: RootedInstance, params: Params) -> EngineOutcome:
    """One certified run of the recursion on an explicit rooted instance."""
    check_instance(g, inst, params)
    lg, _ = line_graph(g)
    _ensure_recursion_room(g.n)
    return _step(g, lg, params,
                 frozenset(inst.c),
                 tuple(frozenset(e) for e in inst.roots),
                 tuple(frozenset(u) for u in inst.model),
                 tuple(frozenset(neighborhood(g, u)) for u in inst.model),
                 None)


def partition_line_graph(g: Graph, t: int) -> Union[PartitionResult, KtCertificate]:
    """Partition L(G) component by component, or return a K_t certificate.

    Isolated vertices contribute nothing.  In every other component the
    smallest vertex seeds the recursion: its edge set is the first root part
    and the vertex itself the first model set.
    """
    params = Params.for_graph(g, t)
    lg, _ = line_graph(g)
    _ensure_recursion_room(g.n)
    acc = None
    for comp in components(g):
        if len(comp) == 1:
            continue
        x = comp[0]
        c_set = frozenset(comp) - {x}
        res = _step(g, lg, params, c_set,
                    (frozenset(g.adj_eids[x]),),
                    (frozenset((x,)),),
                    (frozenset(g.adj[x]),), None)
        if isinstance(res, KtCertificate):
            return res
        acc = res if acc is None else _merge_disjoint(acc, res)
    if acc is None:
        acc = RootedPartition(parts=(), h_edges=(), root=(), decomp=EMPTY)
    return PartitionResult(partition=acc, embedding=_build_embedding(g, acc),
                           params=params)


def line_graph_tree_decomposition(g: Graph, t: int
                                  ) -> Union[TreeDecomposition, KtCertificate]:
    """Tree-decomposition of L(G) with width <= (t-1)*floor(p_impl) - 1."""
    res = partition_line_graph(g, t)
    if isinstance(res, KtCertificate):
        return res
    return product_blowup(res.partition.decomp, res.partition.parts)


def _build_embedding(g: Graph, p: RootedPartition) -> tuple:
    slots: list = [None] * g.m
    for pid, part in enumerate(p.parts):
        for rank, eid in enumerate(part):
            slots[eid] = (pid, rank + 1)
    assert all(s is not None for s in slots), "every edge must land in a part"
    return tuple(slots)


def _ensure_recursion_room(n: int) -> None:
    need = 12 * n + 2000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


# ---------------------------------------------------------------- validators

def validate_partition(g: Graph, p: RootedPartition, params: Params,
                       universe=None) -> tuple[bool, Optional[str]]:
    """All RootedPartition invariants; returns (ok, first violated clause)."""
    uni = set(universe) if universe is not None else set(range(g.m))
    seen: set[int] = set()
    for i, part in enumerate(p.parts):
        if not part:
            return False, f"parts: part {i} is empty"
        ps = set(part)
        if not ps <= uni:
            return False, f"parts: part {i} leaves the edge universe"
        if ps & seen:
            return False, f"parts: part {i} overlaps an earlier part"
        if not params.allows_part_size(len(part)):
            return False, f"part size: part {i} has {len(part)} > p_impl edges"
        seen |= ps
    if seen != uni:
        return False, "coverage: parts do not cover the edge universe"

    part_of = {}
    for i, part in enumerate(p.parts):
        for e in part:
            part_of[e] = i
    h_set = set()
    for a, b in p.h_edges:
        if a == b or not (0 <= a < len(p.parts) and 0 <= b < len(p.parts)):
            return False, "h-edges: malformed part adjacency"
        h_set.add((a, b) if a < b else (b, a))
    for v in range(g.n):
        eids = [e for e in g.adj_eids[v] if e in part_of]
        for i in range(len(eids)):
            for j in range(i + 1, len(eids)):
                pa, pb = part_of[eids[i]], part_of[eids[j]]
                if pa != pb and ((pa, pb) if pa < pb else (pb, pa)) not in h_set:
                    return False, ("partition property: adjacent edges "
                                   f"{eids[i]},{eids[j]} in non-adjacent parts")
    for i, a in enumerate(p.root):
        for b in p.root[i + 1:]:
            if ((a, b) if a < b else (b, a)) not in h_set:
                return False, "root clique: root parts not pairwise adjacent"
    hg = Graph(len(p.parts), h_set)
    ok, why = validate_decomposition(hg, p.decomp)
    if not ok:
        return False, f"decomposition: {why}"
    if len(p.parts) and width(p.decomp) > params.t - 2:
        return False, f"width: decomposition width {width(p.decomp)} > t-2"
    if p.root:
        if p.decomp.designated is None:
            return False, "designated: no designated node tracks the root clique"
        if not set(p.root) <= set(p.decomp.bags[p.decomp.designated]):
            return False, "designated: designated bag misses the root clique"
    return True, None


def validate_embedding(g: Graph, p: RootedPartition, embedding,
                       params: Params) -> tuple[bool, Optional[str]]:
    """Embedding realizes L(G) inside H boxtimes K_{floor(p)}."""
    if len(embedding) != g.m:
        return False, "embedding: one entry per edge required"
    part_of = {}
    for i, part in enumerate(p.parts):
        for e in part:
            part_of[e] = i
    p_floor = params.p_floor()
    used = set()
    for eid, entry in enumerate(embedding):
        pid, slot = entry
        if part_of.get(eid) != pid:
            return False, f"embedding: edge {eid} mapped to the wrong part"
        if not (1 <= slot <= max(p_floor, 1)):
            return False, f"embedding: slot {slot} outside 1..floor(p)"
        if (pid, slot) in used:
            return False, "embedding: slot reused within a part"
        used.add((pid, slot))
    h_set = {(a, b) if a < b else (b, a) for a, b in p.h_edges}
    for v in range(g.n):
        eids = g.adj_eids[v]
        for i in range(len(eids)):
            for j in range(i + 1, len(eids)):
                pa, sa = embedding[eids[i]]
                pb, sb = embedding[eids[j]]
                if pa == pb:
                    if sa == sb:
                        return False, "embedding: adjacent edges share part and slot"
                elif ((pa, pb) if pa < pb else (pb, pa)) not in h_set:
                    return False, "embedding: adjacent edges in non-adjacent parts"
    return True, None


def validate_certificate(g: Graph, cert: KtCertificate) -> tuple[bool, Optional[str]]:
    if len(cert.branch_sets) != cert.t:
        return False, f"certificate: expected {cert.t} branch sets"
    return validate_model(g, cert.branch_sets)
