"""Canonical partitions of spaces lying close to a reference space ``M``.

If ``2 d_GH(M, X) < eps <= s(M)/2`` then any optimal correspondence ``R``
between ``M`` and ``X`` cuts ``X`` into blocks ``X_i = R(i)``, one per point of
``M``.  Blocks are small and cross-block distances track ``M``:

1. ``diam X_i < eps``;
2. ``| |xx'| - |ij|_M | < eps`` for ``x in X_i``, ``x' in X_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    EpsilonOutOfRange,
    GHLabError,
    NotBlockStructured,
    NotInBall,
    PropertyCheckFailed,
    PsiNotIdentity,
)
from .gh import Correspondence, GhResult, Relation, gh_distance_exact
from .metric import INF, FiniteMetricSpace, as_rational, invariant_profile

__all__ = [
    "LabeledPartition",
    "BlockDecomposition",
    "as_epsilon",
    "canonical_partition",
    "canonical_partition_with_result",
    "partition_from_correspondence",
    "partition_violations",
    "verify_partition",
    "all_canonical_labelings",
    "labeling_is_unique",
    "decompose_optimal",
    "MAX_RELABEL_N",
]

MAX_RELABEL_N = 8


def as_epsilon(value):
    """A positive radius: an exact rational, or ``INF``."""
    if value == INF:
        return INF
    eps = as_rational(value)
    if eps <= 0:
        raise EpsilonOutOfRange(f"epsilon must be positive, got {eps}")
    return eps


@dataclass(frozen=True)
class LabeledPartition:
    """Blocks ``X_0..X_{n-1}`` of a space, block ``i`` labelled by point ``i`` of ``M``."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise GHLabError("empty block")
            if seen & b:
                raise GHLabError("blocks overlap")
            seen |= b
        if seen != set(range(len(seen))):
            raise GHLabError("blocks do not cover 0..size-1")

    @property
    def reference_n(self) -> int:
        return len(self.blocks)

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def labels(self) -> list[int]:
        """Block label of every point."""
        out = [0] * self.size
        for i, b in enumerate(self.blocks):
            for x in b:
                out[x] = i
        return out

    @classmethod
    def from_labels(cls, labels: Sequence[int], reference_n: Optional[int] = None):
        if reference_n is None:
            reference_n = max(labels) + 1
        blocks: list[set[int]] = [set() for _ in range(reference_n)]
        for x, i in enumerate(labels):
            blocks[i].add(x)
        return cls(tuple(blocks))

    def relabel(self, tau: Sequence[int]) -> "LabeledPartition":
        """Move block ``i`` to label ``tau[i]``."""
        blocks = [None] * len(self.blocks)
        for i, b in enumerate(self.blocks):
            blocks[tau[i]] = b
        return LabeledPartition(tuple(blocks))

    def block_set(self) -> frozenset:
        """The unlabelled partition."""
        return frozenset(self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


def partition_from_correspondence(R: Relation) -> LabeledPartition:
    """Blocks ``R(i)``; raises if they overlap."""
    return LabeledPartition(tuple(R.image({i}) for i in range(R.left_n)))


def partition_violations(M: FiniteMetricSpace, X: FiniteMetricSpace, epsilon, P: LabeledPartition):
    """List the failures of the two canonical-partition properties.

    Each entry is ``("diameter", i, x, x2)`` or ``("distance", i, j, x, x2)``.
    """
    if P.reference_n != M.n or P.size != X.n:
        raise GHLabError("partition does not match the spaces")
    epsilon = as_epsilon(epsilon)
    out = []
    for i, bi in enumerate(P.blocks):
        for x, x2 in itertools.combinations(sorted(bi), 2):
            if X.d[x][x2] >= epsilon:
                out.append(("diameter", i, x, x2))
    for (i, bi), (j, bj) in itertools.product(enumerate(P.blocks), repeat=2):
        for x in sorted(bi):
            for x2 in sorted(bj):
                if abs(X.d[x][x2] - M.d[i][j]) >= epsilon:
                    out.append(("distance", i, j, x, x2))
    return out


def verify_partition(M: FiniteMetricSpace, X: FiniteMetricSpace, epsilon, P: LabeledPartition) -> bool:
    return not partition_violations(M, X, epsilon, P)


def _check_epsilon(M: FiniteMetricSpace, epsilon):
    eps = as_epsilon(epsilon)
    s = invariant_profile(M).s
    if eps != INF and s != INF and eps > s / 2:
        raise EpsilonOutOfRange(f"epsilon {eps} exceeds s(M)/2 = {s / 2}")
    if eps == INF and M.n > 1:
        raise EpsilonOutOfRange("infinite epsilon needs a one-point reference")
    return eps


def canonical_partition_with_result(
    M: FiniteMetricSpace, X: FiniteMetricSpace, epsilon, result: Optional[GhResult] = None
) -> tuple[LabeledPartition, GhResult]:
    """Canonical partition together with the GH computation certifying it."""
    eps = _check_epsilon(M, epsilon)
    if result is None:
        result = gh_distance_exact(M, X)
    if not 2 * result.distance < eps:
        raise NotInBall(f"2*d_GH(M, X) = {2 * result.distance} is not below {eps}")
    try:
        P = partition_from_correspondence(result.witness)
    except GHLabError as exc:
        raise PropertyCheckFailed(f"optimal correspondence does not split X: {exc}") from exc
    if not verify_partition(M, X, eps, P):
        raise PropertyCheckFailed("canonical partition fails its defining properties")
    return P, result


def canonical_partition(M: FiniteMetricSpace, X: FiniteMetricSpace, epsilon) -> LabeledPartition:
    """Blocks ``R(i)`` for the first optimal correspondence ``R`` in solver order."""
    return canonical_partition_with_result(M, X, epsilon)[0]


def all_canonical_labelings(M: FiniteMetricSpace, X: FiniteMetricSpace, epsilon) -> list[LabeledPartition]:
    """The labelled partitions produced by every optimal correspondence."""
    eps = _check_epsilon(M, epsilon)
    result = gh_distance_exact(M, X, all_optimal=True)
    if not 2 * result.distance < eps:
        raise NotInBall(f"2*d_GH(M, X) = {2 * result.distance} is not below {eps}")
    out = []
    for R in result.optimal:
        P = partition_from_correspondence(R)
        if P not in out:
            out.append(P)
    return out


def labeling_is_unique(M: FiniteMetricSpace, X: FiniteMetricSpace, epsilon) -> bool:
    """True iff exactly one numbering of the canonical blocks passes verification."""
    if M.n > MAX_RELABEL_N:
        raise GHLabError(f"relabelling search is capped at n = {MAX_RELABEL_N}")
    P = canonical_partition(M, X, epsilon)
    valid = sum(
        verify_partition(M, X, epsilon, P.relabel(tau))
        for tau in itertools.permutations(range(M.n))
    )
    return valid == 1


@dataclass(frozen=True)
class BlockDecomposition:
    """``R`` as a disjoint union of ``R_i`` inside ``X_i x Y_{psi(i)}``."""

    psi: tuple[int, ...]
    blocks: tuple

    @property
    def is_identity(self) -> bool:
        return self.psi == tuple(range(len(self.psi)))


def decompose_optimal(
    R: Correspondence, P_X: LabeledPartition, P_Y: LabeledPartition, strong: bool = False
) -> BlockDecomposition:
    """Split ``R`` along the canonical blocks of both sides.

    With ``strong=True`` the block bijection must be the identity.
    """
    if P_X.size != R.left_n or P_Y.size != R.right_n or P_X.reference_n != P_Y.reference_n:
        raise GHLabError("partitions do not match the correspondence")
    label_y = P_Y.labels()
    psi = []
    for i, block in enumerate(P_X.blocks):
        hit = {label_y[y] for y in R.image(block)}
        if len(hit) != 1:
            raise NotBlockStructured(f"block {i} meets Y-blocks {sorted(hit)}")
        psi.append(hit.pop())
    if sorted(psi) != list(range(len(psi))):
        raise NotBlockStructured(f"block map {psi} is not a bijection")
    pieces = []
    for i, block in enumerate(P_X.blocks):
        target = P_Y.blocks[psi[i]]
        piece = frozenset((x, y) for x, y in R.pairs if x in block)
        if {x for x, _ in piece} != block or {y for _, y in piece} != target:
            raise NotBlockStructured(f"piece {i} is not a correspondence of its blocks")
        pieces.append(Relation(R.left_n, R.right_n, piece))
    out = BlockDecomposition(tuple(psi), tuple(pieces))
    if strong and not out.is_identity:
        raise PsiNotIdentity(f"block map {out.psi}")
    return out
