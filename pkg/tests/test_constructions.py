from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from tighttrees.constructions import (
    complete_hypergraph,
    cyclic_tournament,
    disjoint_cliques,
    ekr_family,
    format_tournament,
    grid_lines,
    parse_tournament,
    shadow_disjoint_packing,
    sink_blocks,
    tournament_family,
)
from tighttrees.embedding import P4, contains
from tighttrees.hypergraph import HypergraphError, complete, shadow
from tighttrees.trees import enumerate_tight_trees

from conftest import hg


class TestComplete:
    @pytest.mark.parametrize("n,r,e", [(5, 3, 10), (8, 3, 56), (3, 3, 1)])
    def test_edge_counts(self, n, r, e):
        assert complete_hypergraph(n, r).num_edges == e

    def test_k8_ratio(self):
        G = complete_hypergraph(8, 3)
        assert Fraction(G.num_edges, len(shadow(G))) == Fraction(3 * 3 - 3, 3)

    def test_too_small(self):
        with pytest.raises(HypergraphError):
            complete_hypergraph(2, 3)


class TestEKR:
    def test_n5(self):
        G = ekr_family(5, 3)
        assert (G.num_edges, len(shadow(G))) == (6, 10)

    def test_n7(self):
        G = ekr_family(7, 3)
        assert (G.num_edges, len(shadow(G))) == (15, 21)

    @pytest.mark.parametrize("n", range(5, 31))
    def test_identity(self, n):
        G = ekr_family(n, 3)
        assert len(shadow(G)) == comb(n, 2) == Fraction(n, n - 2) * G.num_edges

    @pytest.mark.parametrize("n", range(6, 13))
    def test_path_free(self, n, p43):
        assert not contains(ekr_family(n, 3), p43)


class TestTournament:
    def test_cyclic_n9(self):
        G = tournament_family(9, cyclic_tournament(3))
        assert (G.num_edges, len(shadow(G))) == (27, 36)
        assert Fraction(36, 27) == Fraction(9 - 1, 9 - 3)

    @pytest.mark.parametrize("n", [9, 15, 21])
    def test_regular_ratio(self, n):
        k = n // 3
        arcs = cyclic_tournament(k)
        outdeg = [sum(1 for i, _ in arcs if i == v) for v in range(k)]
        assert set(outdeg) == {(k - 1) // 2}
        G = tournament_family(n, arcs)
        assert G.num_edges == 9 * comb(k, 2)
        assert Fraction(len(shadow(G)), G.num_edges) == Fraction(n - 1, n - 3)

    def test_single_arc_has_sink(self):
        G = tournament_family(6, [(0, 1)])
        assert G.num_edges == 9 == 9 * comb(2, 2)
        assert len(shadow(G)) == 12
        assert sink_blocks(2, [(0, 1)]) == [1]

    @pytest.mark.parametrize("n", [9, 12])
    def test_path_free(self, n, p43):
        k = n // 3
        arcs = cyclic_tournament(k)
        assert not contains(tournament_family(n, arcs), p43)

    def test_transitive_n12_free(self, p43):
        arcs = [(i, j) for i, j in combinations(range(4), 2)]
        assert not contains(tournament_family(12, arcs), p43)

    @pytest.mark.parametrize("n,arcs", [(7, [(0, 1)]), (6, [(0, 1), (1, 0)]), (9, [(0, 1)]),
                                        (6, [(0, 0)])])
    def test_invalid(self, n, arcs):
        with pytest.raises(HypergraphError):
            tournament_family(n, arcs)

    def test_round_trip(self):
        arcs = cyclic_tournament(5)
        assert parse_tournament(format_tournament(5, arcs)) == (5, arcs)


class TestCliques:
    def test_n8(self):
        G = disjoint_cliques(8, 4)
        assert G.num_edges == 12 == 8 * 3 // 2
        assert not contains(G, P4)

    def test_n4(self):
        assert disjoint_cliques(4, 4) == complete(4, 2)

    def test_not_divisible(self):
        with pytest.raises(HypergraphError):
            disjoint_cliques(7, 4)

    @pytest.mark.parametrize("n,t", [(6, 3), (10, 5), (9, 3)])
    def test_free_of_every_t_edge_tree(self, n, t):
        G = disjoint_cliques(n, t)
        assert G.num_edges == n * (t - 1) // 2
        for T in enumerate_tight_trees(2, t):
            assert not contains(G, T)
        for T in enumerate_tight_trees(2, t - 1):
            assert contains(G, T)


def pairwise_shadow_disjoint(res):
    shadows = [shadow(H) for H in res.copies]
    return all(not (a & b) for a, b in combinations(shadows, 2))


class TestPacking:
    def test_grid_k5(self, p43):
        res = shadow_disjoint_packing(complete(5, 3), 25, candidates=grid_lines(5))
        F = res.union
        assert res.m == 10
        assert F.num_edges == len(shadow(F)) == 100
        assert pairwise_shadow_disjoint(res)
        assert not contains(F, p43)

    def test_grid_lines_meet_once(self):
        for a, b in combinations(grid_lines(6), 2):
            assert len(set(a) & set(b)) <= 1

    def test_single_edge(self):
        # triples may share one vertex, so first fit finds a partial Steiner triple system
        res = shadow_disjoint_packing(hg((0, 1, 2)), 9)
        assert res.m == 8
        assert all(len(set(a) & set(b)) <= 1 for a, b in combinations(res.vertex_sets, 2))
        assert pairwise_shadow_disjoint(res)

    def test_single_edge_disjoint_candidates(self):
        res = shadow_disjoint_packing(hg((0, 1, 2)), 9, candidates=[(0, 1, 2), (3, 4, 5), (6, 7, 8)])
        assert res.m == 3

    def test_too_small(self):
        res = shadow_disjoint_packing(complete(5, 3), 4)
        assert res.m == 0 and res.union.num_edges == 0

    def test_budget(self):
        res = shadow_disjoint_packing(complete(5, 3), 25, budget=1)
        assert res.m == 1

    @pytest.mark.parametrize("n", [12, 16, 20])
    def test_union_stays_free(self, n):
        # every tight tree the base graph avoids is avoided by the packed union
        base = complete(5, 3)
        res = shadow_disjoint_packing(base, n)
        assert pairwise_shadow_disjoint(res)
        assert res.union.num_edges == 10 * res.m
        for t in (4,):
            for T in enumerate_tight_trees(3, t):
                if not contains(base, T):
                    assert not contains(res.union, T)

    def test_first_fit_n25(self):
        assert shadow_disjoint_packing(complete(5, 3), 25).m == 22

    def test_pairs_from_intersecting_family(self, p43):
        G = ekr_family(6, 3)
        res = shadow_disjoint_packing(G, 18)
        assert pairwise_shadow_disjoint(res)
        assert not contains(res.union, p43)
