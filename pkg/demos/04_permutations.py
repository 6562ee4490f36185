"""Six different self-isometries of a small ball, one per renumbering of the triangle.

Each permutation tau gives a map from the ball around M to the ball around
M renumbered by tau, which is the same ball.  A witness space with clusters of
sizes 1, 2 and 3 tells the maps apart.
"""

from ghlab import sn_isometries, validate

M = validate([[0, 3, 4], [3, 0, 5], [4, 5, 0]])
family = sn_isometries(M)

print("epsilon:", family.epsilon)
print("witness cluster sizes:", family.witness_partition.block_sizes())
for tau, image in family.images.items():
    row = sorted(v for v in image.d[0] if v)
    print(f"  tau={tau}: distances from point 0 of the image {[str(v) for v in row]}")
print(f"{family.checks} pairwise checks, all images distinct: {family.distinct}")
