"""Text formats and instance generators."""

from fractions import Fraction

import pytest

from edgesep import Graph, has_kt_minor, max_degree, validate_decomposition
from edgesep.errors import FormatError, ParameterError
from edgesep.formats import (emit_decomposition, emit_graph, graph_digest,
                             parse_decomposition, parse_graph, parse_weights)
from edgesep.generators import (complete, cycle, generate, grid, outerplanar,
                                path, random_tree, star, toroidal_grid)
from edgesep.treedecomp import TreeDecomposition, singleton


class TestGraphFormat:
    def test_parse_k2(self):
        g = parse_graph("p tw 2 1\n1 2\n")
        assert g.n == 2 and g.edges == ((0, 1),)

    def test_round_trip_canonicalizes(self):
        text = "c a comment\np tw 4 3\n3 1\n2 1\n4 3\n"
        g = parse_graph(text)
        assert emit_graph(g) == "p tw 4 3\n1 2\n1 3\n3 4\n"
        assert parse_graph(emit_graph(g)) == g

    def test_duplicate_edge_rejected(self):
        with pytest.raises(FormatError, match="duplicate"):
            parse_graph("p tw 3 2\n1 2\n2 1\n")

    def test_malformed_header(self):
        with pytest.raises(FormatError, match="header"):
            parse_graph("p cep 3 2\n1 2\n")

    def test_out_of_range(self):
        with pytest.raises(FormatError, match="range"):
            parse_graph("p tw 2 1\n1 5\n")

    def test_count_mismatch(self):
        with pytest.raises(FormatError, match="announced"):
            parse_graph("p tw 3 2\n1 2\n")

    def test_digest_is_stable(self):
        assert graph_digest(grid(2, 2)) == graph_digest(grid(2, 2))


class TestDecompositionFormat:
    def test_single_bag(self):
        text = emit_decomposition(singleton((0, 1, 2)), 3)
        assert text == "s td 1 3 3\nb 1 1 2 3\n"

    def test_round_trip(self):
        d = TreeDecomposition(bags=((0, 1), (1, 2)), tree_edges=((0, 1),))
        text = emit_decomposition(d, 3)
        parsed, n = parse_decomposition(text)
        assert n == 3
        assert parsed.bags == d.bags and parsed.tree_edges == d.tree_edges
        ok, why = validate_decomposition(Graph(3, [(0, 1), (1, 2)]), parsed)
        assert ok, why

    def test_empty(self):
        assert emit_decomposition(TreeDecomposition((), ()), 0) == "s td 0 0 0\n"
        parsed, n = parse_decomposition("s td 0 0 0\n")
        assert parsed.n_nodes == 0 and n == 0

    def test_missing_solution_line(self):
        with pytest.raises(FormatError, match="solution"):
            parse_decomposition("b 1 1 2\n")


class TestWeightsFormat:
    def test_fractions_and_defaults(self):
        w = parse_weights("1 1/4\n3 3/4\n", 3)
        assert w == (Fraction(1, 4), Fraction(0), Fraction(3, 4))

    def test_integer_weights(self):
        assert parse_weights("1 1\n", 2) == (Fraction(1), Fraction(0))

    def test_duplicate_vertex(self):
        with pytest.raises(FormatError, match="duplicate"):
            parse_weights("1 1/2\n1 1/2\n", 2)

    def test_bad_fraction(self):
        with pytest.raises(FormatError, match="malformed weight"):
            parse_weights("1 x/y\n", 2)


class TestLemmaTrace:
    def test_tree_and_separator_traces_serialize(self):
        import json

        from edgesep import edge_tree_or_separator
        from edgesep.formats import tree_or_separator_json
        tree = edge_tree_or_separator(path(5), [(0,), (4,)], 4)
        sep = edge_tree_or_separator(path(5), [(0,), (4,)], 1)
        for tos in (tree, sep):
            blob = json.dumps(tree_or_separator_json(tos), sort_keys=True)
            assert json.loads(blob)["kind"] == tos.kind


class TestGenerators:
    def test_grid_3x3_shape(self):
        g = grid(3, 3)
        assert g.n == 9 and g.m == 12 and max_degree(g) == 4

    def test_star_is_k1_9(self):
        g = star(10)
        assert g.n == 10 and g.m == 9 and max_degree(g) == 9

    def test_random_tree_is_deterministic(self):
        assert random_tree(20, 7).edges == random_tree(20, 7).edges
        assert random_tree(20, 7).edges != random_tree(20, 8).edges

    def test_random_tree_is_a_tree(self):
        from edgesep import components
        for seed in range(5):
            g = random_tree(12, seed)
            assert g.m == g.n - 1 and len(components(g)) == 1

    def test_outerplanar_is_k4_minor_free(self):
        for seed in range(3):
            g = outerplanar(9, seed)
            found, _ = has_kt_minor(g, 4)
            assert not found

    def test_outerplanar_is_maximal(self):
        g = outerplanar(10, 4)
        assert g.m == 2 * g.n - 3   # cycle plus full triangulation

    def test_toroidal_wraps(self):
        g = toroidal_grid(3, 3)
        assert g.n == 9 and g.m == 18
        assert all(g.degree(v) == 4 for v in range(9))

    def test_toroidal_degenerate_sizes_stay_simple(self):
        g = toroidal_grid(2, 2)
        assert g.m == 4   # wrap edges collapse onto the grid edges

    def test_cycle_path_complete(self):
        assert cycle(5).m == 5
        assert path(6).m == 5
        assert complete(5).m == 10

    def test_generate_dispatch(self):
        assert generate("grid", [2, 3]) == grid(2, 3)
        assert generate("random-tree", [9], seed=3) == random_tree(9, 3)
        with pytest.raises(ParameterError, match="unknown family"):
            generate("hypercube", [3])
        with pytest.raises(ParameterError, match="parameter"):
            generate("grid", [3])
