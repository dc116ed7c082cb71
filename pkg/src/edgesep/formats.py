"""Text formats: PACE-style graphs (.gr), decompositions (.td), weights (.w).

All ids are 1-indexed on disk and 0-indexed in memory.  Emission is
canonical, so parse(emit(x)) round-trips bit-exactly.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

from .errors import FormatError
from .graphs import Graph
from .treedecomp import TreeDecomposition


def parse_graph(text: str) -> Graph:
    n = m = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "tw":
                raise FormatError(f"line {lineno}: malformed header {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer header fields") from None
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: negative header fields")
            continue
        if n is None:
            raise FormatError(f"line {lineno}: edge before header")
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: malformed edge line {line!r}")
        try:
            u, v = int(parts[0]) - 1, int(parts[1]) - 1
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer edge endpoints") from None
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {lineno}: endpoint out of range")
        if u == v:
            raise FormatError(f"line {lineno}: self-loop")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise FormatError(f"line {lineno}: duplicate edge")
        seen.add(key)
        edges.append(key)
    if n is None:
        raise FormatError("missing header line 'p tw <n> <m>'")
    if m != len(edges):
        raise FormatError(f"header announced {m} edges, found {len(edges)}")
    return Graph(n, edges)


def emit_graph(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_digest(g: Graph) -> str:
    return hashlib.sha256(emit_graph(g).encode()).hexdigest()


def emit_decomposition(d: TreeDecomposition, n_decomposed: int) -> str:
    if d.n_nodes == 0:
        return "s td 0 0 0\n"
    width_plus = max(len(b) for b in d.bags)
    lines = [f"s td {d.n_nodes} {width_plus} {n_decomposed}"]
    for i, bag in enumerate(d.bags):
        lines.append(" ".join(["b", str(i + 1), *[str(v + 1) for v in bag]]))
    for a, b in d.tree_edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> tuple[TreeDecomposition, int]:
    """Returns the decomposition and the declared vertex count of the graph."""
    header = None
    bags: dict[int, tuple] = {}
    tree_edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate solution line")
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"line {lineno}: malformed solution line")
            try:
                header = tuple(int(x) for x in parts[2:])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer solution fields") from None
            continue
        if header is None:
            raise FormatError(f"line {lineno}: content before the solution line")
        if parts[0] == "b":
            try:
                bag_id = int(parts[1]) - 1
                verts = tuple(sorted(int(x) - 1 for x in parts[2:]))
            except (ValueError, IndexError):
                raise FormatError(f"line {lineno}: malformed bag line") from None
            if bag_id in bags:
                raise FormatError(f"line {lineno}: duplicate bag id")
            bags[bag_id] = verts
            continue
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: malformed tree edge")
        try:
            tree_edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer tree edge") from None
    if header is None:
        raise FormatError("missing solution line 's td ...'")
    n_bags, _, n_graph = header
    if set(bags) != set(range(n_bags)):
        raise FormatError("bag ids do not cover 1..#bags")
    d = TreeDecomposition(bags=tuple(bags[i] for i in range(n_bags)),
                          tree_edges=tuple(tree_edges))
    return d, n_graph


def parse_weights(text: str, n: int) -> tuple:
    """Two-column '<vertexId> <num>/<den>' lines; omitted vertices weigh 0."""
    weights = [Fraction(0)] * n
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<vertex> <weight>'")
        try:
            v = int(parts[0]) - 1
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex id") from None
        if not (0 <= v < n):
            raise FormatError(f"line {lineno}: vertex id out of range")
        if v in seen:
            raise FormatError(f"line {lineno}: duplicate vertex id")
        seen.add(v)
        try:
            if "/" in parts[1]:
                num, den = parts[1].split("/", 1)
                weights[v] = Fraction(int(num), int(den))
            else:
                weights[v] = Fraction(int(parts[1]))
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"line {lineno}: malformed weight {parts[1]!r}") from None
    return tuple(weights)


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def tree_or_separator_json(tos) -> dict:
    """JSON-ready trace of a tree-or-separator invocation, for debugging."""
    return {
        "flavor": tos.flavor,
        "kind": tos.kind,
        "h": tos.h,
        "r": tos.r,
        "c_sep": tos.c_sep,
        "achieved": format_fraction(tos.achieved),
        "tree_vertices": list(tos.tree_vertices) if tos.tree_vertices else None,
        "tree_edges": [list(e) if isinstance(e, tuple) else e
                       for e in tos.tree_edges] if tos.tree_edges else None,
        "separator": list(tos.separator) if tos.separator is not None else None,
    }
