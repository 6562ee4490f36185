"""Exact Gromov-Hausdorff distance between two small spaces.

Run with ``python3 demos/01_gh_distance.py``.
"""

from ghlab import gh_distance_exact, invariant_profile, one_point, validate
from ghlab.gh import distortion, enumerate_correspondences

triangle = validate([[0, 3, 4], [3, 0, 5], [4, 5, 0]])
segment = validate([[0, 2], [2, 0]])

print("3-4-5 triangle invariants:", {k: str(v) for k, v in invariant_profile(triangle)._asdict().items()})

# every correspondence between the triangle and the segment, with its distortion
dis = sorted(distortion(R, triangle, segment) for R in enumerate_correspondences(3, 2))
print(f"{len(dis)} correspondences, distortions from {dis[0]} to {dis[-1]}")

res = gh_distance_exact(triangle, segment, all_optimal=True)
print("d_GH(triangle, segment) =", res.distance)
for R in res.optimal:
    print("  optimal:", R.sorted_pairs())

# distance to a point is half the diameter
print("d_GH(triangle, point) =", gh_distance_exact(triangle, one_point()).distance)
