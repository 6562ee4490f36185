"""Scaling and the cone over a ball: the apex stays where it is."""

from fractions import Fraction

from ghlab import ball_map, gen_in_ball, gh_distance, scale, validate
from ghlab.isometry import APEX, ConePoint, cone_map

X = validate([[0, 1], [1, 0]])
Y = validate([[0, 2, 2], [2, 0, 3], [2, 3, 0]])
for lam in (Fraction(1, 2), 3, Fraction(7, 3)):
    print(f"lambda={lam}: d_GH(lam X, lam Y) = {gh_distance(scale(X, lam), scale(Y, lam))}, "
          f"lam d_GH(X, Y) = {lam * gh_distance(X, Y)}")

M = validate([[0, 3, 4], [3, 0, 5], [4, 5, 0]])
N = validate([[0, 10, 11], [10, 0, 12], [11, 12, 0]])
m = ball_map(M, N)
Z = gen_in_ball(5, M, m.epsilon, [1, 2, 1])

print("apex maps to apex:", cone_map(m, APEX) is APEX)
image = cone_map(m, ConePoint(4, Z))
print(f"(4, Z) maps to (4, V) with V near N: {image.lam == 4 and 2 * gh_distance(N, image.space) < m.epsilon}")
