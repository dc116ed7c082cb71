"""Brute-force oracles: pinned values and second-strategy double checks."""

from fractions import Fraction

import pytest

from edgesep import (Graph, exact_isoperimetric, exact_treewidth, has_kt_minor,
                     min_balanced_edge_separator, uniform_weights,
                     validate_model)
from edgesep.errors import OracleLimitError
from edgesep.generators import complete, cycle, grid, path, random_tree, star
from edgesep.oracles import (OracleLimits, edge_lemma_contract_check,
                             kt_minor_by_assignment, treewidth_by_orderings)

PETERSEN = Graph(10, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (1, 6),
                      (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8),
                      (8, 5)])


class TestExactTreewidth:
    def test_trees_have_width_one(self):
        for seed in (0, 3, 9):
            assert exact_treewidth(random_tree(8, seed)) == 1

    def test_k4(self):
        assert exact_treewidth(complete(4)) == 3

    def test_grid_3x3(self):
        assert exact_treewidth(grid(3, 3)) == 3

    def test_limit_guard(self):
        with pytest.raises(OracleLimitError):
            exact_treewidth(grid(4, 4))
        assert exact_treewidth(grid(4, 4), OracleLimits(max_vertices_tw=16)) == 4

    def test_double_check_against_ordering_search(self):
        for g in (grid(2, 3), complete(4), cycle(5), path(6),
                  Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4)])):
            assert exact_treewidth(g) == treewidth_by_orderings(g)
        assert exact_treewidth(grid(3, 3)) == treewidth_by_orderings(grid(3, 3), limit=9) == 3


class TestMinBalancedEdgeSeparator:
    def test_star_needs_half_the_leaves(self):
        f = min_balanced_edge_separator(star(10), uniform_weights(10))
        assert len(f) == 5

    def test_k2(self):
        f = min_balanced_edge_separator(Graph(2, [(0, 1)]), uniform_weights(2))
        assert f == (0,)

    def test_p4_middle_edge(self):
        f = min_balanced_edge_separator(path(4), uniform_weights(4))
        assert f == (1,)

    def test_double_check_full_scan(self):
        # independent enumeration: scan all edge subsets, take the smallest
        for g in (path(5), star(6), cycle(6)):
            w = uniform_weights(g.n)
            primary = min_balanced_edge_separator(g, w)
            best = None
            from edgesep import components
            for mask in range(1 << g.m):
                f = tuple(e for e in range(g.m) if mask >> e & 1)
                if all(sum((w[v] for v in c), Fraction(0)) <= Fraction(1, 2)
                       for c in components(g, banned_edges=f)):
                    if best is None or len(f) < best:
                        best = len(f)
            assert len(primary) == best

    def test_limit_guard(self):
        with pytest.raises(OracleLimitError):
            min_balanced_edge_separator(grid(4, 4), uniform_weights(16))


class TestExactIsoperimetric:
    def test_k2(self):
        assert exact_isoperimetric(Graph(2, [(0, 1)])) == 1

    def test_c10(self):
        assert exact_isoperimetric(cycle(10)) == Fraction(2, 5)

    def test_star_k15_is_one_not_a_third(self):
        # every candidate S has cut >= |S| here; exhaustive search settles it
        assert exact_isoperimetric(star(6)) == 1

    def test_double_check_by_combinations(self):
        from itertools import combinations
        for g in (cycle(7), grid(2, 4)):
            best = None
            for size in range(1, g.n // 2 + 1):
                for s in combinations(range(g.n), size):
                    rest = tuple(v for v in range(g.n) if v not in s)
                    from edgesep import edges_between
                    ratio = Fraction(len(edges_between(g, s, rest)), size)
                    if best is None or ratio < best:
                        best = ratio
            assert exact_isoperimetric(g) == best

    def test_limit_guard(self):
        with pytest.raises(OracleLimitError):
            exact_isoperimetric(grid(5, 4))


class TestHasKtMinor:
    def test_k5_is_its_own_model(self):
        found, model = has_kt_minor(complete(5), 5)
        assert found and model == ((0,), (1,), (2,), (3,), (4,))

    def test_trees_are_k3_minor_free(self):
        for seed in range(4):
            found, _ = has_kt_minor(random_tree(9, seed), 3)
            assert not found

    def test_petersen_has_k5(self):
        found, model = has_kt_minor(PETERSEN, 5)
        assert found
        ok, why = validate_model(PETERSEN, model)
        assert ok, why
        assert len(model) == 5

    def test_cycles_have_k3_but_not_k4(self):
        assert has_kt_minor(cycle(6), 3)[0]
        assert not has_kt_minor(cycle(6), 4)[0]

    def test_double_check_by_assignment(self):
        for g, t in ((cycle(5), 3), (complete(4), 4), (path(5), 3),
                     (grid(2, 3), 3), (star(6), 3)):
            assert has_kt_minor(g, t)[0] == kt_minor_by_assignment(g, t)

    def test_limit_guard(self):
        with pytest.raises(OracleLimitError):
            has_kt_minor(grid(4, 4), 5)


class TestEdgeLemmaCheck:
    def test_p5_generous_budget_has_tree(self):
        report = edge_lemma_contract_check(path(5), [(0,), (4,)], 4)
        assert report.tree_exists and report.outcome == "tree"
        assert report.contract_ok

    def test_p5_tight_budget_has_no_tree(self):
        report = edge_lemma_contract_check(path(5), [(0,), (4,)], 1)
        assert not report.tree_exists
        assert report.outcome == "separator"
        assert report.contract_ok

    def test_single_target_always_has_a_tree(self):
        report = edge_lemma_contract_check(path(5), [(3,)], 1)
        assert report.tree_exists and report.outcome == "tree"
