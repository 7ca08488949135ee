from fractions import Fraction

import pytest

from tighttrees.constructions import disjoint_cliques
from tighttrees.embedding import P4, contains
from tighttrees.hypergraph import complete, shadow
from tighttrees.search import (
    beta_exact,
    colex_edges,
    copy_masks,
    kalai_bound,
    turan_exact,
    verify_kalai,
    verify_shadow_bound,
)
from tighttrees.trees import enumerate_tight_trees

from conftest import hg
from oracles import brute_beta, brute_turan, copies_as_masks

# exhaustive search results frozen as regression constants
EX_P43 = {5: 10, 6: 11, 7: 17}
EX_P43_8 = 26

TREES_3 = [T for t in (1, 2, 3, 4) for T in enumerate_tight_trees(3, t)]


def tree_id(T):
    return "_".join("".join(map(str, e)) for e in T.edges)


def assert_maximal_free(res, T):
    W = res.witness
    assert W.num_edges == res.max_edges
    assert not contains(W, T)
    for e in colex_edges(W.n, W.r):
        if e not in W.edge_set:
            assert contains(W.with_edges(W.edges + (e,)), T)


class TestTuranExamples:
    def test_host_smaller_than_tree(self, p43):
        res = turan_exact(5, p43)
        assert res.max_edges == 10 and res.exhaustive

    def test_graph_path(self):
        assert turan_exact(4, P4).max_edges == 6

    def test_p43_regression(self, p43):
        for n, ex in EX_P43.items():
            res = turan_exact(n, p43)
            assert res.exhaustive and res.max_edges == ex
            assert ex <= kalai_bound(p43, n)

    @pytest.mark.slow
    def test_p43_n8(self, p43):
        res = turan_exact(8, p43)
        assert res.exhaustive and res.max_edges == EX_P43_8


class TestCopyMasks:
    @pytest.mark.parametrize("T", TREES_3, ids=tree_id)
    def test_copy_count_matches_brute_force(self, T):
        _, masks = copy_masks(T, 6)
        _, brute = copies_as_masks(T, 6)
        assert len(masks) == len(brute)


class TestAgainstBruteForce:
    @pytest.mark.parametrize("T", TREES_3, ids=tree_id)
    def test_n6(self, T):
        res = turan_exact(6, T)
        assert res.exhaustive
        assert res.max_edges == brute_turan(T, 6)
        assert_maximal_free(res, T)

    @pytest.mark.parametrize("T", TREES_3[1:5], ids=tree_id)
    def test_beta_n5(self, T):
        assert beta_exact(5, T).best_ratio == brute_beta(T, 5)


class TestSearchProperties:
    @pytest.mark.parametrize("T", TREES_3, ids=tree_id)
    def test_kalai_bound_n7(self, T):
        res = turan_exact(7, T)
        assert res.exhaustive
        assert res.max_edges <= kalai_bound(T, 7)
        assert_maximal_free(res, T)

    def test_worker_count_invariance(self, p43):
        a = turan_exact(7, p43, workers=1)
        b = turan_exact(7, p43, workers=4)
        assert a == b

    def test_symmetry_changes_only_node_count(self):
        for T in TREES_3[2:6]:
            a = turan_exact(6, T, symmetry=True)
            b = turan_exact(6, T, symmetry=False)
            assert a.max_edges == b.max_edges
            assert a.nodes_explored <= b.nodes_explored

    def test_budget_exhaustion(self, p43):
        res = turan_exact(8, p43, budget=50)
        assert not res.exhaustive
        assert not contains(res.witness, p43)
        assert res.max_edges <= EX_P43_8

    def test_single_edge_tree(self):
        res = turan_exact(6, hg((0, 1, 2)))
        assert res.max_edges == 0 and res.exhaustive and res.witness.edges == ()

    def test_tree_without_copies(self, p43):
        res = turan_exact(4, p43)
        assert res.max_edges == 4 and res.witness == complete(4, 3)


class TestBeta:
    def test_p43_n5(self, p43):
        res = beta_exact(5, p43)
        assert res.best_ratio == 1 and res.witness == complete(5, 3)

    def test_single_edge_is_undefined(self):
        from tighttrees.embedding import EmbeddingError

        with pytest.raises(EmbeddingError):
            beta_exact(5, hg((0, 1, 2)))

    def test_ratio_matches_witness(self, p43):
        res = beta_exact(6, p43)
        W = res.witness
        assert res.best_ratio == Fraction(W.num_edges, len(shadow(W)))
        assert not contains(W, p43)

    def test_monotone_in_n(self, p43):
        vals = [beta_exact(n, p43).best_ratio for n in (5, 6, 7)]
        assert vals == sorted(vals)

    def test_linear_path_k8(self):
        T = hg((0, 1, 2), (2, 3, 4), (4, 5, 6), (6, 7, 8))
        res = beta_exact(8, T)
        assert res.best_ratio >= 2 and res.exhaustive
        assert Fraction(56, 28) == 2 == Fraction(3 * 3 - 3, 3)


class TestVerifyKalai:
    def test_p43_n5(self, p43):
        rep = verify_kalai(5, p43)
        assert rep["ex"] == 10 and rep["bound"] == [10, 1] and rep["slack"] == [0, 1]
        assert rep["verdict"] == "pass"

    def test_graph_path(self):
        rep = verify_kalai(4, P4)
        assert rep["ex"] == 6 and rep["verdict"] == "pass"

    @pytest.mark.parametrize("T", TREES_3, ids=tree_id)
    def test_all_small_trees_n6(self, T):
        rep = verify_kalai(6, T)
        assert rep["verdict"] == "pass"
        assert Fraction(*rep["bound"]) == 5 * (T.num_edges - 1)

    def test_inconclusive(self, p43):
        rep = verify_kalai(8, p43, budget=20)
        assert rep["verdict"] == "inconclusive" and not rep["exhaustive"]


class TestVerifyShadow:
    def test_ekr(self, p43):
        from tighttrees.constructions import ekr_family

        rep = verify_shadow_bound(ekr_family(7, 3), p43, 1)
        assert (rep["e"], rep["shadow"], rep["verdict"]) == (15, 21, "pass")

    def test_equality(self, p43):
        rep = verify_shadow_bound(complete(5, 3), p43, 1)
        assert rep["t_free"] and rep["slack"] == [0, 1] and rep["verdict"] == "pass"

    def test_not_free(self, p43):
        rep = verify_shadow_bound(complete(6, 3), p43, 1)
        assert rep["verdict"] == "not-T-free" and rep["bound_holds"] is None

    def test_fail(self):
        rep = verify_shadow_bound(complete(5, 3), hg((0, 1, 2), (3, 4, 5)), Fraction(1, 2))
        assert rep["verdict"] == "fail"

    def test_cliques_free_of_path(self):
        rep = verify_shadow_bound(disjoint_cliques(8, 4), P4, Fraction(3, 2))
        assert rep["t_free"] and rep["verdict"] == "pass"
