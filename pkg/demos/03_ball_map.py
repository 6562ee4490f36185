"""Moving a whole ball around one triangle onto a ball around another."""

from ghlab import ball_map, gen_in_ball, gh_distance, validate
from ghlab.isometry import inverse_map

M = validate([[0, 3, 4], [3, 0, 5], [4, 5, 0]])
N = validate([[0, 10, 11], [10, 0, 12], [11, 12, 0]])
m = ball_map(M, N)
print("largest admissible epsilon:", m.epsilon)

X = gen_in_ball(1, M, m.epsilon, [2, 1, 1])
Y = gen_in_ball(2, M, m.epsilon, [1, 2, 2])
V, W = m(X), m(Y)

print("X near M:", 2 * gh_distance(M, X) < m.epsilon, "  V near N:", 2 * gh_distance(N, V) < m.epsilon)
print("d_GH(X, Y) =", gh_distance(X, Y))
print("d_GH(V, W) =", gh_distance(V, W))
print("X restored exactly:", inverse_map(m)(V) == X)
print("V =", [[str(v) for v in row] for row in V.to_lists()])
