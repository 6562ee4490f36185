import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import metric_spaces
from oracles import correspondences_by_subsets, gh_by_subsets

from ghlab.errors import GHLabError, SizeMismatch, SizeTooLargeForEnumeration
from ghlab.gh import (
    Correspondence,
    Relation,
    distortion,
    enumerate_correspondences,
    gh_distance,
    gh_distance_bruteforce,
    gh_distance_exact,
    gh_scaling_check,
    is_isometric,
)
from ghlab.isometry import permuted_space
from ghlab.metric import diameter, one_point, validate

TWO = validate([[0, 2], [2, 0]])
FIVE = validate([[0, 5], [5, 0]])


def small_pairs(max_cells=12):
    return st.tuples(metric_spaces(max_n=6), metric_spaces(max_n=6)).filter(
        lambda p: p[0].n * p[1].n <= max_cells
    )


class TestRelation:
    sigma = Relation(2, 2, {(0, 0), (0, 1), (1, 0)})

    def test_image(self):
        assert self.sigma.image({0}) == {0, 1}
        assert self.sigma.image(set()) == frozenset()
        assert self.sigma.preimage({0}) == {0, 1}

    def test_relation_must_be_nonempty(self):
        with pytest.raises(GHLabError):
            Relation(1, 1, set())

    def test_out_of_range(self):
        with pytest.raises(GHLabError):
            Relation(1, 1, {(0, 1)})

    def test_correspondence_needs_surjectivity(self):
        with pytest.raises(GHLabError):
            Correspondence(2, 2, {(0, 0), (1, 0)})
        assert Correspondence(2, 2, {(0, 0), (1, 1)}).is_correspondence()

    def test_mask_round_trip(self):
        assert Relation.from_mask(2, 2, self.sigma.mask) == self.sigma


class TestDistortion:
    def test_identity(self, pythagorean):
        ident = Correspondence(3, 3, {(i, i) for i in range(3)})
        assert distortion(ident, pythagorean, pythagorean) == 0

    def test_bijection(self):
        assert distortion(Correspondence(2, 2, {(0, 0), (1, 1)}), TWO, FIVE) == 3

    def test_full_relation(self):
        full = Correspondence(2, 2, set(itertools.product(range(2), range(2))))
        assert distortion(full, TWO, FIVE) == 5

    def test_size_mismatch(self, pythagorean):
        with pytest.raises(SizeMismatch):
            distortion(Relation(2, 2, {(0, 0)}), pythagorean, TWO)


class TestEnumeration:
    @pytest.mark.parametrize("shape, count", [((1, 1), 1), ((1, 2), 1), ((2, 2), 7)])
    def test_counts(self, shape, count):
        assert len(correspondences_by_subsets(*shape)) == count
        assert len(list(enumerate_correspondences(*shape))) == count

    @pytest.mark.parametrize("shape", [(2, 3), (3, 2), (3, 3), (1, 5), (2, 4)])
    def test_matches_subset_filter(self, shape):
        produced = [R.pairs for R in enumerate_correspondences(*shape)]
        assert len(produced) == len(set(produced))
        assert set(produced) == set(correspondences_by_subsets(*shape))

    def test_order_is_by_mask(self):
        masks = [R.mask for R in enumerate_correspondences(2, 3)]
        assert masks == sorted(masks)

    def test_cap(self):
        with pytest.raises(SizeTooLargeForEnumeration):
            next(enumerate_correspondences(3, 7))


class TestGhDistance:
    def test_self_distance(self, pythagorean):
        res = gh_distance_exact(pythagorean, pythagorean)
        assert res.distance == 0
        ident = Correspondence(3, 3, {(i, i) for i in range(3)})
        assert ident in res.optimal

    def test_two_point_spaces(self):
        # frozen from the subset oracle
        assert gh_by_subsets(TWO.d, FIVE.d) == Fraction(3, 2)
        res = gh_distance_exact(TWO, FIVE)
        assert res.distance == Fraction(3, 2)
        assert res.complete
        for R in res.optimal:
            assert distortion(R, TWO, FIVE) == 3

    def test_against_one_point(self, pythagorean):
        res = gh_distance_exact(pythagorean, one_point())
        assert res.distance == Fraction(5, 2)
        assert res.optimal == (Correspondence(3, 1, {(0, 0), (1, 0), (2, 0)}),)

    def test_bruteforce_matches_subset_oracle(self, pythagorean, blow_up):
        assert gh_distance_bruteforce(pythagorean, blow_up).distance == gh_by_subsets(pythagorean.d, blow_up.d)

    def test_witness_mode_on_large_grid(self, pythagorean, blow_up):
        res = gh_distance_exact(blow_up, blow_up)
        assert not res.complete and len(res.optimal) == 1
        assert res.distance == 0

    @settings(max_examples=200, deadline=None)
    @given(small_pairs())
    def test_branch_and_bound_matches_oracle(self, pair):
        X, Y = pair
        fast, slow = gh_distance_exact(X, Y), gh_distance_bruteforce(X, Y)
        assert fast.distance == slow.distance
        assert fast.optimal == slow.optimal

    @settings(max_examples=100, deadline=None)
    @given(metric_spaces(max_n=5, denominator=1), metric_spaces(max_n=5, denominator=1))
    def test_optimal_correspondences_are_optimal(self, X, Y):
        res = gh_distance_exact(X, Y, all_optimal=True)
        assert res.optimal
        for R in res.optimal:
            assert R.is_correspondence()
            assert distortion(R, X, Y) == 2 * res.distance

    @settings(max_examples=100, deadline=None)
    @given(metric_spaces(max_n=4), metric_spaces(max_n=4), metric_spaces(max_n=4))
    def test_pseudometric(self, X, Y, Z):
        assert gh_distance(X, X) == 0
        assert gh_distance(X, Y) == gh_distance(Y, X)
        assert gh_distance(X, Z) <= gh_distance(X, Y) + gh_distance(Y, Z)

    @given(metric_spaces(max_n=6))
    def test_distance_to_point_is_half_diameter(self, X):
        assert 2 * gh_distance(X, one_point()) == diameter(X)


class TestIsIsometric:
    def test_self(self, pythagorean):
        assert is_isometric(pythagorean, pythagorean) == (0, 1, 2)

    def test_relabelling(self, pythagorean):
        tau = (2, 0, 1)
        relabelled = permuted_space(pythagorean, tau)
        assert is_isometric(pythagorean, relabelled) == tau

    def test_different_distances(self):
        assert is_isometric(TWO, validate([[0, 3], [3, 0]])) is None

    def test_different_sizes(self, pythagorean):
        assert is_isometric(pythagorean, TWO) is None

    @settings(max_examples=100, deadline=None)
    @given(metric_spaces(max_n=5, max_weight=3, denominator=1), metric_spaces(max_n=5, max_weight=3, denominator=1), st.randoms())
    def test_zero_distance_iff_isometric(self, X, Y, rnd):
        perm = list(range(X.n))
        rnd.shuffle(perm)
        for A, B in ((X, Y), (X, permuted_space(X, perm))):
            iso = is_isometric(A, B)
            assert (gh_distance(A, B) == 0) == (iso is not None)
            if iso is not None:
                assert all(A[i, j] == B[iso[i], iso[j]] for i in A.points() for j in A.points())


class TestScaling:
    def test_examples(self, pythagorean):
        assert gh_scaling_check(TWO, FIVE, 1)
        assert gh_distance(validate([[0, 6], [6, 0]]), validate([[0, 15], [15, 0]])) == Fraction(9, 2)
        assert gh_scaling_check(TWO, FIVE, 3)
        assert gh_scaling_check(pythagorean, pythagorean, Fraction(7, 3))

    @settings(max_examples=50, deadline=None)
    @given(metric_spaces(max_n=4), metric_spaces(max_n=4), st.fractions(min_value=Fraction(1, 5), max_value=9))
    def test_random(self, X, Y, lam):
        assume(lam > 0)
        assert gh_scaling_check(X, Y, lam)


def test_solver_is_deterministic(blow_up, pythagorean):
    first = gh_distance_exact(pythagorean, blow_up, all_optimal=False)
    assert all(
        gh_distance_exact(pythagorean, blow_up, all_optimal=False).optimal == first.optimal
        for _ in range(3)
    )
