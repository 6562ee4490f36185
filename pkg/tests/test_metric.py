from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import metric_spaces
from oracles import hausdorff_by_threshold, invariants_by_enumeration

from ghlab.errors import (
    EmptySubset,
    NonpositiveOffDiagonal,
    NonpositiveScale,
    NonzeroDiagonal,
    NotSquare,
    NotSymmetric,
    TriangleViolation,
)
from ghlab.metric import (
    INF,
    diameter,
    hausdorff_distance,
    invariant_profile,
    is_general_position,
    one_point,
    scale,
    set_distances,
    validate,
)


class TestValidate:
    def test_two_points(self):
        X = validate([[0, 3], [3, 0]])
        assert X.n == 2 and X[0, 1] == 3

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric) as info:
            validate([[0, 1], [2, 0]])
        assert info.value.indices == (0, 1)

    def test_triangle_violation(self):
        with pytest.raises(TriangleViolation) as info:
            validate([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
        assert info.value.indices == (0, 1, 2)

    def test_nonzero_diagonal(self):
        with pytest.raises(NonzeroDiagonal) as info:
            validate([[0, 1], [1, 2]])
        assert info.value.indices == (1,)

    def test_nonpositive(self):
        with pytest.raises(NonpositiveOffDiagonal):
            validate([[0, 0], [0, 0]])
        with pytest.raises(NonpositiveOffDiagonal):
            validate([[0, -1], [-1, 0]])

    def test_not_square(self):
        with pytest.raises(NotSquare):
            validate([[0, 1]])
        with pytest.raises(NotSquare):
            validate([])

    def test_rational_strings(self):
        X = validate([["0", "3/4"], ["3/4", "0"]])
        assert X[1, 0] == Fraction(3, 4)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            validate([[0.0, 0.5], [0.5, 0.0]])

    @given(metric_spaces(max_n=6))
    def test_generated_spaces_satisfy_axioms(self, X):
        assert validate(X.to_lists()) == X
        for i in X.points():
            assert X[i, i] == 0
            for j in X.points():
                assert X[i, j] == X[j, i]
                assert i == j or X[i, j] > 0
                for k in X.points():
                    assert X[i, k] <= X[i, j] + X[j, k]


class TestInvariants:
    def test_pythagorean_triangle(self, pythagorean):
        # expected values frozen from invariants_by_enumeration
        assert invariants_by_enumeration(pythagorean.d) == (3, 1, 2, 1)
        assert tuple(invariant_profile(pythagorean)) == (3, 1, 2, 1)

    def test_one_point(self):
        assert tuple(invariant_profile(one_point())) == (INF, INF, INF, INF)

    def test_two_points(self):
        assert tuple(invariant_profile(validate([[0, 7], [7, 0]]))) == (7, INF, INF, 7)

    @settings(max_examples=150)
    @given(metric_spaces(max_n=6, denominator=3))
    def test_matches_enumeration(self, X):
        p = invariant_profile(X)
        assert tuple(p) == invariants_by_enumeration(X.d)
        assert p.delta == min(p.s, p.e, p.t)

    @settings(max_examples=150)
    @given(metric_spaces(max_n=6, max_weight=6, denominator=1))
    def test_general_position_iff_positive_delta(self, X):
        distinct = len(set(X.distances())) == len(X.distances())
        strict = all(
            X[i, k] < X[i, j] + X[j, k]
            for i in X.points() for j in X.points() for k in X.points()
            if len({i, j, k}) == 3
        )
        assert is_general_position(X) == (distinct and strict)
        assert is_general_position(X) == (invariants_by_enumeration(X.d)[3] > 0)

    def test_general_position_examples(self, pythagorean):
        assert is_general_position(pythagorean)
        assert not is_general_position(validate([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
        assert is_general_position(one_point())

    def test_profile_scaling_example(self, pythagorean):
        assert tuple(invariant_profile(scale(pythagorean, 2))) == (6, 2, 4, 2)

    @given(metric_spaces(max_n=5), st.fractions(min_value=Fraction(1, 10), max_value=10))
    def test_scale_homogeneity(self, X, lam):
        assert invariant_profile(scale(X, lam)) == invariant_profile(X).scaled(lam)


class TestScaleAndDiameter:
    def test_scale(self, pythagorean):
        assert scale(pythagorean, 2) == validate([[0, 6, 8], [6, 0, 10], [8, 10, 0]])
        assert scale(pythagorean, 1) == pythagorean

    def test_nonpositive_scale(self, pythagorean):
        with pytest.raises(NonpositiveScale):
            scale(pythagorean, 0)

    def test_diameter(self, pythagorean):
        assert diameter(pythagorean) == 5
        assert diameter(one_point()) == 0
        assert diameter(scale(pythagorean, Fraction(3, 7))) == Fraction(15, 7)


class TestSetDistances:
    def test_examples(self, pythagorean):
        assert set_distances(pythagorean, {0}, {1}) == (3, 3)
        assert set_distances(pythagorean, {0, 1}, {2}) == (4, 5)
        assert set_distances(pythagorean, {0, 1}, {0, 1}) == (0, 3)

    def test_empty(self, pythagorean):
        with pytest.raises(EmptySubset):
            set_distances(pythagorean, set(), {0})


class TestHausdorff:
    def test_examples(self, pythagorean):
        assert hausdorff_distance(pythagorean, {0, 1}, {0, 1}) == 0
        # threshold oracle: point 2 is 4 away from point 0
        assert hausdorff_by_threshold(pythagorean.d, [0], [1, 2]) == 4
        assert hausdorff_distance(pythagorean, {0}, {1, 2}) == 4
        assert hausdorff_distance(pythagorean, {0}, {0}) == 0

    def test_empty(self, pythagorean):
        with pytest.raises(EmptySubset):
            hausdorff_distance(pythagorean, {0}, [])

    @given(metric_spaces(min_n=2, max_n=6), st.data())
    def test_properties(self, X, data):
        subsets = st.sets(st.integers(0, X.n - 1), min_size=1)
        A, B = data.draw(subsets), data.draw(subsets)
        assert hausdorff_distance(X, A, A) == 0
        assert hausdorff_distance(X, A, B) == hausdorff_distance(X, B, A)
        assert hausdorff_distance(X, A, B) == hausdorff_by_threshold(X.d, sorted(A), sorted(B))
