"""Tests for the packing certificate, sparse families and the complete-graph corollary."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperrig.forms import parse_model
from hyperrig.hypergraph import Hypergraph, complete_hypergraph, edge_minus
from hyperrig.packing import (
    corollary_check,
    greedy_sparse_family,
    packing_number_lower_bound,
    power_pair_hypergraph,
    verify_packing,
)
from hyperrig.rigidity import is_locally_rigid

H_PROD3 = parse_model("h_prod:k=3")


class TestPowerPairHypergraph:
    def test_edge_count_is_n_squared(self):
        # one edge v^(k-1) w per ordered pair, loops v^k included
        for n, k in [(3, 3), (5, 3), (4, 4)]:
            G = power_pair_hypergraph(n, k)
            assert len(G.edges) == n * n

    def test_every_edge_has_a_dominant_vertex(self):
        G = power_pair_hypergraph(4, 3)
        for e in G.edges:
            assert max(e.count(v) for v in set(e)) >= G.k - 1

    def test_small_instance_listed(self):
        G = power_pair_hypergraph(2, 3)
        assert G.edges == ((1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2))

    def test_rejects_degenerate_parameters(self):
        with pytest.raises(ValueError, match="n >= 1"):
            power_pair_hypergraph(0, 3)
        with pytest.raises(ValueError, match="k >= 2"):
            power_pair_hypergraph(3, 1)


class TestVerifyPacking:
    def test_singleton_family_accepted(self):
        G = power_pair_hypergraph(5, 3)
        model = parse_model("sym_tensor:d=3,k=3")
        report = verify_packing(G, model, [(v,) for v in (1, 2, 3)])
        assert report.accepted
        assert report.failing_condition is None
        assert report.witness is None
        assert len(report.per_set) == 3
        for entry in report.per_set:
            assert entry["cover_verdict"] == "locally_rigid"
            assert entry["induced_verdict"] == "locally_rigid"
            # the closure of {v^k} is {v^(k-1) w : w in V}
            assert entry["closure_size"] == 5

    def test_accepted_instance_is_directly_rigid(self):
        G = power_pair_hypergraph(4, 3)
        model = parse_model("sym_tensor:d=2,k=3")
        report = verify_packing(G, model, [(1,), (2,)])
        assert report.accepted
        direct = is_locally_rigid(G, model, probes=2)
        assert direct.rigid

    def test_duplicate_sets_rejected_at_p3(self):
        G = power_pair_hypergraph(5, 3)
        model = parse_model("sym_tensor:d=2,k=3")
        report = verify_packing(G, model, [(1,), (1,)])
        assert not report.accepted
        assert report.failing_condition == "P3"
        w = report.witness
        assert set(w) == {"set_index", "other_index", "edge", "vertex"}

    def test_p3_witness_rechecks_from_definitions(self):
        G = power_pair_hypergraph(5, 3)
        model = parse_model("sym_tensor:d=2,k=3")
        family = [(1,), (1,)]
        report = verify_packing(G, model, family)
        w = report.witness
        reduced = edge_minus(w["edge"], w["vertex"])
        assert set(reduced) <= set(family[w["other_index"]])
        assert w["edge"] in G.edges

    def test_weak_induced_graph_rejected_at_p2(self):
        # the closure spans all three vertices and is rigid, but the
        # induced graph on {1, 2} has a single edge and rank 1 < 2
        G = Hypergraph(3, (1, 2, 3), ((1, 1, 2), (1, 1, 3), (1, 2, 3)))
        model = parse_model("sym_tensor:d=1,k=3")
        report = verify_packing(G, model, [(1, 2)])
        assert not report.accepted
        assert report.failing_condition == "P2"
        assert report.witness == {"set_index": 0, "verdict": "flexible"}
        assert report.per_set[0]["cover_verdict"] == "locally_rigid"

    def test_small_closure_rejected_at_p1(self):
        G = Hypergraph(3, (1, 2, 3), ((1, 1, 1),))
        model = parse_model("sym_tensor:d=1,k=3")
        report = verify_packing(G, model, [(1,)])
        assert not report.accepted
        assert report.failing_condition == "P1"
        assert report.per_set[0]["closure_size"] == 1

    def test_family_size_must_match_copy_count(self):
        G = power_pair_hypergraph(4, 3)
        model = parse_model("sym_tensor:d=3,k=3")
        with pytest.raises(ValueError, match="3 copies"):
            verify_packing(G, model, [(1,), (2,)])

    def test_model_without_copies_rejected(self):
        G = complete_hypergraph(4, 2, simple=True)
        with pytest.raises(ValueError, match="not a sum of copies"):
            verify_packing(G, parse_model("euclidean:d=2"), [(1, 2)])

    def test_unknown_family_vertex_rejected(self):
        G = power_pair_hypergraph(3, 3)
        model = parse_model("sym_tensor:d=1,k=3")
        with pytest.raises(ValueError, match="not in the hypergraph"):
            verify_packing(G, model, [(9,)])

    def test_family_set_below_stabiliser_floor_rejected(self):
        G = complete_hypergraph(4, 2, simple=True)
        model = parse_model("skew_tensor:r=2,k=2")
        with pytest.raises(ValueError, match="n_gamma=2"):
            verify_packing(G, model, [(1,), (2, 3)])


class TestGreedySparseFamily:
    def test_disjoint_pairs_form_a_matching(self):
        assert greedy_sparse_family(4, 2, 1) == ((1, 2), (3, 4))

    def test_full_set_when_size_equals_n(self):
        assert greedy_sparse_family(3, 3, 3) == ((1, 2, 3),)

    def test_scan_order_is_lexicographic(self):
        fam = greedy_sparse_family(5, 2, 1)
        assert fam == ((1, 2), (3, 4))

    def test_lower_bound_is_family_size(self):
        for n, a, b in [(6, 3, 1), (7, 3, 2), (5, 2, 2)]:
            assert packing_number_lower_bound(n, a, b) == len(
                greedy_sparse_family(n, a, b)
            )

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError, match="1..4"):
            greedy_sparse_family(4, 0, 1)
        with pytest.raises(ValueError, match="1..4"):
            greedy_sparse_family(4, 5, 1)
        with pytest.raises(ValueError, match="nonnegative"):
            greedy_sparse_family(4, 2, -1)

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_family_is_sparse_and_greedily_maximal(self, data):
        n = data.draw(st.integers(min_value=1, max_value=8))
        size = data.draw(st.integers(min_value=1, max_value=n))
        overlap = data.draw(st.integers(min_value=1, max_value=size))
        fam = greedy_sparse_family(n, size, overlap)
        for X, Y in combinations(fam, 2):
            assert len(set(X) & set(Y)) < overlap
        chosen = set(fam)
        for cand in combinations(range(1, n + 1), size):
            if cand in chosen:
                continue
            assert any(len(set(cand) & set(X)) >= overlap for X in fam)


class TestCorollaryCheck:
    def test_small_base_graph_not_rigid(self):
        # the simple complete 3-graph on 3 vertices is one edge: rank 1 < 3
        report = corollary_check(6, 3, H_PROD3, 3)
        assert not report.applies
        assert report.base_rigid is False
        assert "not locally rigid" in report.reason

    def test_base_graph_without_edges(self):
        report = corollary_check(6, 3, H_PROD3, 1)
        assert not report.applies
        assert "no 3-edges" in report.reason

    def test_positive_certificate_matches_direct_rank(self):
        report = corollary_check(8, 3, H_PROD3, 4)
        assert report.applies
        assert report.base_rigid
        assert report.t_max == 2
        assert report.family == ((1, 2, 3, 4), (5, 6, 7, 8))
        # cross-check: the certified sum of two copies really is rigid
        model = parse_model("sym_tensor:d=2,k=3")
        direct = is_locally_rigid(
            complete_hypergraph(8, 3, simple=True), model, probes=2
        )
        assert direct.rigid
        assert direct.rank == 16

    def test_copies_model_with_small_base_graph(self):
        report = corollary_check(6, 3, parse_model("sym_tensor:d=2,k=3"), 3)
        assert not report.applies
        assert report.base_rigid is False

    def test_copies_model_within_packing_bound(self):
        report = corollary_check(8, 3, parse_model("sym_tensor:d=2,k=3"), 4)
        assert report.applies
        assert report.t_max == 2

    def test_copies_model_beyond_packing_bound(self):
        report = corollary_check(8, 3, parse_model("sym_tensor:d=3,k=3"), 4)
        assert not report.applies
        assert report.base_rigid
        assert report.t_max == 2
        assert "could not be constructed" in report.reason

    def test_family_is_pairwise_sparse(self):
        report = corollary_check(9, 3, H_PROD3, 4)
        assert report.applies
        for X, Y in combinations(report.family, 2):
            assert len(set(X) & set(Y)) < 1

    def test_subset_size_below_stabiliser_floor(self):
        det3 = parse_model("det:k=3")
        report = corollary_check(6, 3, det3, 3)
        assert not report.applies
        assert "a >= n_gamma + 1 = 4" in report.reason

    def test_subset_size_above_n(self):
        report = corollary_check(6, 3, H_PROD3, 7)
        assert not report.applies
        assert "exceeds" in report.reason

    def test_small_n_reports_rather_than_raises(self):
        report = corollary_check(2, 3, H_PROD3, 1)
        assert not report.applies
        assert "n >= 3" in report.reason

    def test_arity_two_is_an_error(self):
        with pytest.raises(ValueError, match="k >= 3"):
            corollary_check(6, 2, parse_model("euclidean:d=2"), 3)

    def test_base_arity_must_match(self):
        with pytest.raises(ValueError, match="does not match"):
            corollary_check(6, 3, parse_model("euclidean:d=2"), 3)
