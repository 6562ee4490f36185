"""Canonical partition of a space sitting close to a general-position reference."""

from fractions import Fraction

from ghlab import canonical_partition, gen_in_ball, gh_distance, invariant_profile, validate
from ghlab.partition import all_canonical_labelings, verify_partition

M = validate([[0, 3, 4], [3, 0, 5], [4, 5, 0]])
p = invariant_profile(M)
eps = min(p.s, p.e) / 2
print("reference:", [[str(v) for v in row] for row in M.to_lists()])
print("epsilon =", eps)

# blow point 0 up into two points and point 2 into three
X, planted = gen_in_ball(17, M, eps, [2, 1, 3], return_labels=True)
print(f"X has {X.n} points, 2 d_GH(M, X) = {2 * gh_distance(M, X)}")

P = canonical_partition(M, X, eps)
print("canonical labels:", P.labels())
print("matches the planted clusters:", P == planted)
print("partition verifies:", verify_partition(M, X, eps, P))
print("labelings from all optimal correspondences:", len(all_canonical_labelings(M, X, eps)))

# a radius that is too small for this X
try:
    canonical_partition(M, X, Fraction(1, 10**6))
except ValueError as exc:
    print("tiny epsilon:", type(exc).__name__)
