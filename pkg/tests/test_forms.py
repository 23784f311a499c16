"""Tests for measurement models: catalog, evaluation, gradients."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperrig.forms import (
    builtin_model,
    estimate_stabilizer_dim,
    evaluate,
    gradient,
    parse_model,
    sum_of_copies,
)


class TestCatalog:
    def test_euclidean_dims(self):
        m = builtin_model("euclidean", d=3)
        assert (m.d, m.k) == (3, 2)
        assert m.stabilizer.d_gamma == 6
        assert m.stabilizer.n_gamma == 3

    def test_pseudo_euclidean_needs_signature(self):
        m = builtin_model("pseudo_euclidean", d=2, signature="+-")
        assert m.stabilizer.d_gamma == 3
        with pytest.raises(ValueError):
            builtin_model("pseudo_euclidean", d=2)

    def test_lp_dims(self):
        m = builtin_model("lp", d=2, p=4)
        assert m.stabilizer.d_gamma == 2
        assert m.stabilizer.n_gamma == 1

    def test_lp_rejects_odd_exponent(self):
        with pytest.raises(ValueError):
            builtin_model("lp", d=2, p=3)

    def test_lp_rejects_exponent_two(self):
        with pytest.raises(ValueError, match="euclidean"):
            builtin_model("lp", d=2, p=2)

    def test_inner_product_dims(self):
        m = builtin_model("inner_product", d=3)
        assert m.stabilizer.d_gamma == 3
        assert m.stabilizer.n_gamma == 2
        assert builtin_model("inner", d=3) == m

    def test_volume_dims(self):
        m = builtin_model("volume", d=2)
        assert m.k == 3
        assert m.antisymmetric
        assert m.multiaffine and not m.multilinear
        assert m.stabilizer.d_gamma == 5
        assert m.stabilizer.n_gamma == 3

    def test_tensor_dims(self):
        m = builtin_model("sym_tensor", d=2, k=3)
        assert m.stabilizer.d_gamma == 0
        assert m.stabilizer.d_gamma_partite == 4
        assert m.stabilizer.n_gamma_partite == 1
        s = builtin_model("skew_tensor", r=2, k=2)
        assert s.d == 4
        assert s.stabilizer.d_gamma == 6
        assert s.stabilizer.n_gamma == 2

    def test_determinant_dims(self):
        m = builtin_model("det", k=3)
        assert (m.d, m.k) == (3, 3)
        assert m.stabilizer.d_gamma == 8

    def test_heuristic_models_have_unknown_dims(self):
        for m in (builtin_model("perm", k=3), builtin_model("chow", r=2, k=3)):
            assert m.stabilizer.d_gamma is None
            assert m.stabilizer.heuristic

    def test_unknown_model(self):
        with pytest.raises(ValueError, match="unknown model name"):
            builtin_model("frobnicate", d=2)


class TestParse:
    def test_round_trip_through_key(self):
        m = builtin_model("sym_tensor", d=2, k=3)
        assert parse_model(m.key) == m

    def test_no_params(self):
        assert parse_model("h_prod:k=3") == builtin_model("h_prod", k=3)

    def test_malformed_parameter(self):
        with pytest.raises(ValueError, match="malformed model parameter"):
            parse_model("euclidean:d2")

    def test_non_integer_value(self):
        with pytest.raises(ValueError, match="not an integer"):
            parse_model("euclidean:d=two")

    def test_wrong_parameters(self):
        with pytest.raises(ValueError, match="wrong parameters"):
            parse_model("euclidean:k=3")

    def test_signature_parses_as_string(self):
        m = parse_model("pseudo_euclidean:d=2,signature=+-")
        assert m == builtin_model("pseudo_euclidean", d=2, signature="+-")


class TestEvaluate:
    def test_product_form(self):
        m = builtin_model("h_prod", k=3)
        assert evaluate(m, [2, 3, 5]) == 30

    def test_euclidean_squared_distance(self):
        m = builtin_model("euclidean", d=2)
        assert evaluate(m, [(0, 0), (3, 4)]) == 25

    def test_pseudo_euclidean_signs(self):
        m = builtin_model("pseudo_euclidean", d=2, signature="+-")
        assert evaluate(m, [(0, 0), (3, 4)]) == 9 - 16

    def test_lp_distance(self):
        m = builtin_model("lp", d=2, p=4)
        assert evaluate(m, [(0, 0), (1, 2)]) == 1 + 16

    def test_inner_product(self):
        m = builtin_model("inner_product", d=3)
        assert evaluate(m, [(1, 2, 3), (4, 5, 6)]) == 32

    def test_determinant(self):
        m = builtin_model("det", k=2)
        assert evaluate(m, [(1, 2), (3, 4)]) == -2

    def test_permanent(self):
        m = builtin_model("perm", k=2)
        assert evaluate(m, [(1, 2), (3, 4)]) == 10

    def test_volume_is_signed_simplex_volume(self):
        # Twice the area of the triangle (0,0), (1,0), (0,1).
        m = builtin_model("volume", d=2)
        assert evaluate(m, [(0, 0), (1, 0), (0, 1)]) == 1

    def test_volume_translation_invariant(self):
        m = builtin_model("volume", d=2)
        pts = [(0, 0), (1, 0), (0, 1)]
        shifted = [(x + 7, y - 2) for x, y in pts]
        assert evaluate(m, pts) == evaluate(m, shifted)

    def test_sum_of_copies_splits_coordinates(self):
        m = builtin_model("sym_tensor", d=2, k=2)
        h = builtin_model("h_prod", k=2)
        x, y = (2, 3), (5, 7)
        assert evaluate(m, [x, y]) == evaluate(h, [2, 5]) + evaluate(h, [3, 7])

    def test_wrong_point_count(self):
        m = builtin_model("h_prod", k=3)
        with pytest.raises(ValueError):
            evaluate(m, [1, 2])


class TestSymmetry:
    def test_antisymmetric_transposition_flips_sign(self):
        m = builtin_model("det", k=3)
        pts = [(1, 2, 3), (4, 5, 6), (7, 8, 10)]
        swapped = [pts[1], pts[0], pts[2]]
        assert evaluate(m, swapped) == -evaluate(m, pts)

    def test_symmetric_permutation_invariant(self):
        m = builtin_model("perm", k=3)
        pts = [(1, 2, 3), (4, 5, 6), (7, 8, 10)]
        swapped = [pts[2], pts[0], pts[1]]
        assert evaluate(m, swapped) == evaluate(m, pts)

    def test_repeated_argument_kills_determinant(self):
        m = builtin_model("det", k=3)
        pts = [(1, 2, 3), (1, 2, 3), (7, 8, 10)]
        assert evaluate(m, pts) == 0


class TestGradient:
    def test_product_gradient(self):
        m = builtin_model("h_prod", k=3)
        assert gradient(m, [3, 5]) == (15,)

    def test_inner_product_gradient(self):
        m = builtin_model("inner_product", d=3)
        assert gradient(m, [(4, 5, 6)]) == (4, 5, 6)

    def test_gradient_needs_multiaffine(self):
        m = builtin_model("euclidean", d=2)
        with pytest.raises(ValueError, match="multiaffine"):
            gradient(m, [(1, 2)])

    def test_slot_identity(self):
        # For multiaffine g: g(x, rest) - g(y, rest) = <x - y, grad(rest)>.
        cases = [
            (builtin_model("det", k=3), [(1, 2, 3), (4, 5, 7)]),
            (builtin_model("perm", k=3), [(1, 2, 3), (4, 5, 7)]),
            (builtin_model("volume", d=2), [(2, 3), (5, 8)]),
            (builtin_model("sym_tensor", d=2, k=3), [(1, 2), (3, 4)]),
        ]
        for m, rest in cases:
            x = tuple(range(7, 7 + m.d))
            y = tuple(range(20, 20 + m.d))
            g = gradient(m, rest)
            lhs = evaluate(m, [x] + rest) - evaluate(m, [y] + rest)
            rhs = sum((a - b) * c for a, b, c in zip(x, y, g))
            assert lhs == rhs

    def test_gradient_with_repeated_rest_vanishes_for_det(self):
        m = builtin_model("det", k=3)
        assert gradient(m, [(1, 2, 3), (1, 2, 3)]) == (0, 0, 0)


class TestSumOfCopies:
    def test_product_copies_match_builtin(self):
        assert sum_of_copies(builtin_model("h_prod", k=3), 2) == builtin_model(
            "sym_tensor", d=2, k=3
        )

    def test_det_copies_match_builtin(self):
        assert sum_of_copies(builtin_model("det", k=2), 3) == builtin_model(
            "skew_tensor", r=3, k=2
        )

    def test_perm_copies_match_builtin(self):
        assert sum_of_copies(builtin_model("perm", k=3), 2) == builtin_model(
            "chow", r=2, k=3
        )

    def test_unsupported_base(self):
        with pytest.raises(ValueError):
            sum_of_copies(builtin_model("euclidean", d=2), 2)


class TestStabilizerEstimate:
    def test_euclidean_plane(self):
        info = estimate_stabilizer_dim(builtin_model("euclidean", d=2), n_max=5)
        assert info.d_gamma == 3
        assert info.heuristic

    def test_inner_product_plane(self):
        info = estimate_stabilizer_dim(builtin_model("inner_product", d=2), n_max=5)
        assert info.d_gamma == 1

    def test_no_stabilisation_reports_unknown(self):
        info = estimate_stabilizer_dim(builtin_model("euclidean", d=3), n_max=2)
        assert info.d_gamma is None

    def test_needs_at_least_two_sizes(self):
        with pytest.raises(ValueError):
            estimate_stabilizer_dim(builtin_model("euclidean", d=2), n_max=1)


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9),
       st.integers(-9, 9))
@settings(max_examples=40)
def test_det_2x2_formula(a, b, c, d):
    m = builtin_model("det", k=2)
    assert evaluate(m, [(a, c), (b, d)]) == a * d - b * c


@given(st.lists(st.integers(1, 20), min_size=3, max_size=3))
@settings(max_examples=40)
def test_h_prod_is_the_plain_product(xs):
    m = builtin_model("h_prod", k=3)
    assert evaluate(m, xs) == math.prod(xs)
