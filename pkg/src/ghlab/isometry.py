"""The ball map between neighbourhoods of two general-position spaces.

For reference spaces ``M`` and ``N`` on the same numbered point set, a space
``X`` close to ``M`` is sent to the space ``V`` with the same points where
every distance between canonical blocks ``X_i`` and ``X_j`` is shifted by
``|ij|_N - |ij|_M``.  Under :func:`epsilon_bound` this map is an isometry of
GH balls; renumbering ``M`` by permutations yields ``n!`` distinct
self-isometries, and scaling extends the map to cones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    EpsilonOutOfRange,
    GHLabError,
    MetricAxiomError,
    MetricViolation,
    NotAPermutation,
    NotGeneralPosition,
    NotInBall,
    NotInCone,
    PropertyCheckFailed,
    SizeMismatch,
    WitnessConstructionFailed,
)
from .gh import Relation, distortion, gh_distance, is_isometric
from .metric import (
    INF,
    FiniteMetricSpace,
    as_rational,
    invariant_profile,
    is_general_position,
    one_point,
    scale,
    validate,
)
from .partition import LabeledPartition, as_epsilon, canonical_partition_with_result

__all__ = [
    "BallMap",
    "ConePoint",
    "APEX",
    "SnFamily",
    "epsilon_bound",
    "metric_change_bound",
    "remap_metric",
    "ball_map",
    "apply_ball_map",
    "inverse_map",
    "scaled_map",
    "permuted_space",
    "compose",
    "invert",
    "sn_witness",
    "sn_isometries",
    "cone_map",
]


def _same_size(M: FiniteMetricSpace, N: FiniteMetricSpace):
    if M.n != N.n:
        raise SizeMismatch(f"reference spaces have {M.n} and {N.n} points")


def epsilon_bound(M: FiniteMetricSpace, N: FiniteMetricSpace):
    """Largest radius for which the ball map is an isometry.

    ``min{s(M)/4, e(M)/4, t(M)/3, s(N)/4, e(N)/4, t(N)/3}``; ``INF`` for two
    one-point spaces.
    """
    _same_size(M, N)
    for S in (M, N):
        if not is_general_position(S):
            raise NotGeneralPosition(repr(S))
    pm, pn = invariant_profile(M), invariant_profile(N)
    return min(pm.s / 4, pm.e / 4, pm.t / 3, pn.s / 4, pn.e / 4, pn.t / 3)


def metric_change_bound(M: FiniteMetricSpace, N: FiniteMetricSpace):
    """``min{s(M)/2, 2 s(N)/3, t(N)/3}``: radius for which the remapped metric is valid."""
    _same_size(M, N)
    pm, pn = invariant_profile(M), invariant_profile(N)
    if not pn.t > 0:
        raise NotGeneralPosition("N has a degenerate triangle")
    return min(pm.s / 2, 2 * pn.s / 3, pn.t / 3)


def _isometric_regime(M, N, eps) -> bool:
    try:
        return eps <= epsilon_bound(M, N)
    except NotGeneralPosition:
        return False


def shift_metric(
    M: FiniteMetricSpace, N: FiniteMetricSpace, X: FiniteMetricSpace, P: LabeledPartition
) -> list[list[Fraction]]:
    """Distance matrix of ``X`` with cross-block distances moved from ``M`` to ``N``."""
    label = P.labels()
    return [
        [X.d[x][y] - M.d[label[x]][label[y]] + N.d[label[x]][label[y]] for y in X.points()]
        for x in X.points()
    ]


def remap_metric(
    M: FiniteMetricSpace,
    N: FiniteMetricSpace,
    X: FiniteMetricSpace,
    epsilon,
    check: bool = True,
) -> FiniteMetricSpace:
    """Send ``X`` (with ``2 d_GH(M, X) < epsilon``) to the remapped space ``V``.

    ``epsilon`` must not exceed :func:`metric_change_bound`.  With ``check``
    the exact solver confirms ``d_GH(N, V) <= d_GH(M, X)``, and equality when
    ``epsilon`` is within :func:`epsilon_bound`.
    """
    eps = as_epsilon(epsilon)
    if eps > metric_change_bound(M, N):
        raise EpsilonOutOfRange(f"epsilon {eps} exceeds {metric_change_bound(M, N)}")
    P, result = canonical_partition_with_result(M, X, eps)
    try:
        V = validate(shift_metric(M, N, X, P))
    except MetricAxiomError as exc:
        raise MetricViolation(f"remapped distances are not a metric: {exc}") from exc
    if check:
        before, after = result.distance, gh_distance(N, V)
        if after > before:
            raise PropertyCheckFailed(f"d_GH(N, V) = {after} exceeds d_GH(M, X) = {before}")
        if _isometric_regime(M, N, eps) and after != before:
            raise PropertyCheckFailed(f"d_GH(N, V) = {after} differs from d_GH(M, X) = {before}")
    return V


@dataclass(frozen=True)
class BallMap:
    """The ball map ``X -> V`` from the ``epsilon``-ball of ``M`` to that of ``N``."""

    M: FiniteMetricSpace
    N: FiniteMetricSpace
    epsilon: object

    def __post_init__(self):
        eps = as_epsilon(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        bound = epsilon_bound(self.M, self.N)
        if eps > bound:
            raise EpsilonOutOfRange(f"epsilon {eps} exceeds the admissible bound {bound}")

    @property
    def n(self) -> int:
        return self.M.n

    def __call__(self, X: FiniteMetricSpace, check: bool = True) -> FiniteMetricSpace:
        return apply_ball_map(self, X, check=check)


def ball_map(M: FiniteMetricSpace, N: FiniteMetricSpace, epsilon=None) -> BallMap:
    """Build a :class:`BallMap`; ``epsilon`` defaults to :func:`epsilon_bound`."""
    if epsilon is None:
        epsilon = epsilon_bound(M, N)
    return BallMap(M, N, epsilon)


def in_ball(M: FiniteMetricSpace, X: FiniteMetricSpace, epsilon) -> bool:
    """``2 d_GH(M, X) < epsilon``, decided exactly."""
    return 2 * gh_distance(M, X) < epsilon


def apply_ball_map(m: BallMap, X: FiniteMetricSpace, check: bool = True) -> FiniteMetricSpace:
    V = remap_metric(m.M, m.N, X, m.epsilon, check=check)
    if check and not in_ball(m.N, V, m.epsilon):
        raise PropertyCheckFailed("image left the target ball")
    return V


def inverse_map(m: BallMap) -> BallMap:
    return BallMap(m.N, m.M, m.epsilon)


def scaled_map(m: BallMap, lam) -> BallMap:
    """The map between the balls of ``lam M`` and ``lam N`` with radius ``lam eps``."""
    lam = as_rational(lam)
    return BallMap(scale(m.M, lam), scale(m.N, lam), m.epsilon * lam)


def _check_permutation(tau: Sequence[int], n: int) -> tuple[int, ...]:
    tau = tuple(tau)
    if sorted(tau) != list(range(n)):
        raise NotAPermutation(f"{tau} is not a permutation of 0..{n - 1}")
    return tau


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """``sigma o tau``: ``i -> sigma[tau[i]]``."""
    return tuple(sigma[t] for t in tau)


def invert(tau: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(tau)
    for i, t in enumerate(tau):
        out[t] = i
    return tuple(out)


def permuted_space(M: FiniteMetricSpace, tau: Sequence[int]) -> FiniteMetricSpace:
    """Renumber the points of ``M``: point ``i`` becomes point ``tau[i]``."""
    tau = _check_permutation(tau, M.n)
    back = invert(tau)
    return FiniteMetricSpace(
        tuple(tuple(M.d[back[a]][back[b]] for b in range(M.n)) for a in range(M.n))
    )


def sn_witness(M: FiniteMetricSpace, epsilon) -> tuple[FiniteMetricSpace, LabeledPartition]:
    """A space in the ``epsilon``-ball of ``M`` whose block ``i`` has ``i + 1`` points.

    Blocks sit exactly at the points of ``M``; intra-block distances are
    distinct rationals in ``(eps/8, eps/4)`` so no isometry can swap blocks.
    """
    eps = as_epsilon(epsilon)
    if eps == INF:
        raise WitnessConstructionFailed("needs a finite radius")
    n = M.n
    labels = [i for i in range(n) for _ in range(i + 1)]
    size = len(labels)
    intra = [(x, y) for x, y in itertools.combinations(range(size), 2) if labels[x] == labels[y]]
    d = [[Fraction(0)] * size for _ in range(size)]
    for x, y in itertools.combinations(range(size), 2):
        d[x][y] = d[y][x] = M.d[labels[x]][labels[y]]
    for k, (x, y) in enumerate(intra):
        d[x][y] = d[y][x] = eps / 8 + eps / 8 * Fraction(k + 1, len(intra) + 1)
    try:
        X = validate(d)
    except MetricAxiomError as exc:
        raise WitnessConstructionFailed(str(exc)) from exc
    P = LabeledPartition.from_labels(labels, n)
    blow_up = Relation(n, size, frozenset((labels[x], x) for x in range(size)))
    if not distortion(blow_up, M, X) < eps:
        raise WitnessConstructionFailed("witness does not fit in the ball")
    return X, P


@dataclass(frozen=True)
class SnFamily:
    """The maps ``D_{M, M^tau, eps}`` for every permutation ``tau``."""

    epsilon: object
    maps: dict
    witness: FiniteMetricSpace
    witness_partition: LabeledPartition
    images: dict
    isometric_pairs: tuple = field(default=())

    @property
    def distinct(self) -> bool:
        """All images of the witness are pairwise non-isometric."""
        return not self.isometric_pairs

    @property
    def checks(self) -> int:
        k = len(self.images)
        return k * (k - 1) // 2


def sn_isometries(M: FiniteMetricSpace, epsilon=None, check: bool = True) -> SnFamily:
    """Self-isometries of the ``epsilon``-ball of ``M`` indexed by permutations.

    The default radius is the minimum of :func:`epsilon_bound` over all
    renumberings of ``M``.  The witness images are compared pairwise with
    :func:`is_isometric`.
    """
    n = M.n
    if n < 3:
        raise GHLabError("the permutation family needs at least three points")
    if not is_general_position(M):
        raise NotGeneralPosition(repr(M))
    perms = list(itertools.permutations(range(n)))
    bound = min(epsilon_bound(M, permuted_space(M, tau)) for tau in perms)
    eps = bound if epsilon is None else as_epsilon(epsilon)
    if eps > bound:
        raise EpsilonOutOfRange(f"epsilon {eps} exceeds {bound}")
    maps = {tau: BallMap(M, permuted_space(M, tau), eps) for tau in perms}
    X, P = sn_witness(M, eps)
    images = {tau: apply_ball_map(m, X, check=check) for tau, m in maps.items()}
    clashes = tuple(
        (a, b)
        for a, b in itertools.combinations(perms, 2)
        if is_isometric(images[a], images[b]) is not None
    )
    return SnFamily(eps, maps, X, P, images, clashes)


@dataclass(frozen=True)
class ConePoint:
    """A point ``lam * X`` of a cone, or the apex (the one-point space)."""

    lam: Optional[Fraction] = None
    space: Optional[FiniteMetricSpace] = None

    def __post_init__(self):
        if (self.lam is None) != (self.space is None):
            raise NotInCone("a cone point needs both a factor and a space, or neither")
        if self.lam is not None:
            lam = as_rational(self.lam)
            if lam <= 0:
                raise NotInCone(f"scale factor {lam} is not positive")
            object.__setattr__(self, "lam", lam)

    @property
    def is_apex(self) -> bool:
        return self.lam is None

    def realize(self) -> FiniteMetricSpace:
        return one_point() if self.is_apex else scale(self.space, self.lam)


APEX = ConePoint()


def cone_map(m: BallMap, p: ConePoint, check: bool = True) -> ConePoint:
    """Extend the ball map to the cone over the ball: ``lam X -> lam D(X)``, apex fixed."""
    if p.is_apex:
        return APEX
    if not in_ball(m.M, p.space, m.epsilon):
        raise NotInCone("the space is not in the ball under the cone")
    try:
        return ConePoint(p.lam, apply_ball_map(m, p.space, check=check))
    except NotInBall as exc:
        raise NotInCone(str(exc)) from exc
