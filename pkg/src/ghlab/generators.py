"""Seeded generators for general-position spaces and spaces inside GH balls.

All randomness comes from :class:`random.Random` (Mersenne Twister) and every
distance is drawn from a fixed-denominator grid, so outputs are exact and
reproducible for a given seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence, Union

from .errors import EpsilonOutOfRange, GenerationFailed, InvalidClusterSpec, MetricAxiomError
from .gh import Relation, distortion, gh_distance
from .metric import INF, FiniteMetricSpace, as_rational, invariant_profile, one_point, validate
from .partition import LabeledPartition, as_epsilon

RNG_ALGORITHM = "python-random-mt19937"
DENOMINATOR = 1000
MAX_RETRIES = 200
#: Largest generated space whose ball membership is certified by the exact solver.
CERTIFY_CAP = 8

Seed = Union[int, random.Random]


def make_rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _grid(rng: random.Random, low: Fraction, high: Fraction, denominator: int) -> Fraction:
    """Uniform grid point in the open interval ``(low, high)``."""
    k = rng.randint(1, denominator - 1)
    return low + (high - low) * Fraction(k, denominator)


def gen_general_position(seed: Seed, n: int, scale_hint=1, denominator: int = DENOMINATOR) -> FiniteMetricSpace:
    """Random space with ``delta > 0``.

    Distances lie in ``[h, 2h)`` for ``h = scale_hint``, which keeps every
    triangle inequality strict; draws are repeated until all distances are
    distinct.
    """
    if n < 1:
        raise GenerationFailed("n must be positive")
    if n == 1:
        return one_point()
    rng = make_rng(seed)
    h = as_rational(scale_hint)
    for _ in range(MAX_RETRIES):
        d = [[Fraction(0)] * n for _ in range(n)]
        for i, j in itertools.combinations(range(n), 2):
            d[i][j] = d[j][i] = h + h * Fraction(rng.randrange(denominator), denominator)
        X = validate(d)
        if invariant_profile(X).delta > 0:
            return X
    raise GenerationFailed(f"no general-position space after {MAX_RETRIES} draws")


def random_metric(seed: Seed, n: int, max_weight=10, denominator: int = 4) -> FiniteMetricSpace:
    """Arbitrary finite metric: shortest-path closure of random positive weights.

    Small denominators make repeated distances and degenerate triangles
    common, which is useful for stressing the solver.
    """
    rng = make_rng(seed)
    top = as_rational(max_weight) * denominator
    d = [[Fraction(0)] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        d[i][j] = d[j][i] = Fraction(rng.randint(1, int(top)), denominator)
    for k, i, j in itertools.product(range(n), repeat=3):
        if d[i][k] + d[k][j] < d[i][j]:
            d[i][j] = d[i][k] + d[k][j]
    return validate(d)


def gen_in_ball(
    seed: Seed,
    M: FiniteMetricSpace,
    epsilon,
    cluster_sizes: Sequence[int],
    perturb: bool = True,
    shuffle: bool = True,
    denominator: int = DENOMINATOR,
    return_labels: bool = False,
):
    """Blow up each point ``i`` of ``M`` into a cluster of ``cluster_sizes[i]`` points.

    With ``a = min(eps, t(M)) / 2``, intra-cluster distances lie in
    ``(a/2, a)`` and a cross distance between ``x`` in cluster ``i`` and ``x'``
    in cluster ``j`` is ``|ij|_M + q_ij + r_x + r_x'`` with offsets in
    ``[-a/8, a/8]``.  The point-to-cluster correspondence then has distortion
    below ``eps``, so ``2 d_GH(M, X) < eps``.  For spaces of at most
    :data:`CERTIFY_CAP` points that is re-checked with the exact solver.
    """
    n = M.n
    sizes = list(cluster_sizes)
    if len(sizes) != n or any(int(k) != k or k < 1 for k in sizes):
        raise InvalidClusterSpec(f"need {n} positive cluster sizes, got {sizes}")
    eps = as_epsilon(epsilon)
    profile = invariant_profile(M)
    if eps == INF or eps > profile.s / 2:
        raise EpsilonOutOfRange(f"epsilon {eps} must be finite and at most s(M)/2")
    rng = make_rng(seed)
    a = min(eps, profile.t) / 2

    labels = [i for i, k in enumerate(sizes) for _ in range(k)]
    if shuffle:
        rng.shuffle(labels)
    size = len(labels)

    def offset():
        return _grid(rng, -a / 8, a / 8, denominator) if perturb else Fraction(0)

    point_shift = [offset() for _ in range(size)]
    pair_shift = {}
    for i, j in itertools.combinations(range(n), 2):
        pair_shift[i, j] = pair_shift[j, i] = offset()

    d = [[Fraction(0)] * size for _ in range(size)]
    for x, y in itertools.combinations(range(size), 2):
        i, j = labels[x], labels[y]
        if i == j:
            v = _grid(rng, a / 2, a, denominator)
        else:
            v = M.d[i][j] + pair_shift[i, j] + point_shift[x] + point_shift[y]
        d[x][y] = d[y][x] = v
    try:
        X = validate(d)
    except MetricAxiomError as exc:
        raise GenerationFailed(f"construction broke the metric axioms: {exc}") from exc

    if size <= CERTIFY_CAP:
        inside = 2 * gh_distance(M, X) < eps
    else:
        blow_up = Relation(n, size, frozenset((labels[x], x) for x in range(size)))
        inside = distortion(blow_up, M, X) < eps
    if not inside:
        raise GenerationFailed("generated space is not inside the ball")
    if return_labels:
        return X, LabeledPartition.from_labels(labels, n)
    return X


def random_cluster_sizes(seed: Seed, n: int, max_points: int, cluster_size_max: int) -> list[int]:
    """Cluster sizes with ``n <= total <= max_points`` and each at most ``cluster_size_max``."""
    rng = make_rng(seed)
    sizes = [1] * n
    room = min(max_points, n * cluster_size_max) - n
    for _ in range(rng.randint(0, max(room, 0))):
        open_ = [i for i in range(n) if sizes[i] < cluster_size_max]
        sizes[rng.choice(open_)] += 1
    return sizes
