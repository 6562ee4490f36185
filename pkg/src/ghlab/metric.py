"""Finite metric spaces with exact rational distances.

Points are the indices ``0..n-1``; their order is significant.  Distances are
:class:`fractions.Fraction` values and the only non-rational quantity that
ever appears is :data:`INF`, used where a minimum ranges over an empty set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import (
    EmptySubset,
    NonpositiveOffDiagonal,
    NonpositiveScale,
    NonzeroDiagonal,
    NotSquare,
    NotSymmetric,
    TriangleViolation,
)

__all__ = [
    "INF",
    "ExtendedRational",
    "FiniteMetricSpace",
    "InvariantProfile",
    "as_rational",
    "validate",
    "one_point",
    "invariant_profile",
    "is_general_position",
    "scale",
    "diameter",
    "set_distances",
    "hausdorff_distance",
]

#: The extended value ``inf``.  It compares greater than every Fraction and
#: ``min(q, INF) == q``; multiplying or dividing by a positive rational keeps it.
INF = float("inf")

ExtendedRational = Union[Fraction, float]


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or rational string such as ``"3/4"``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Validated, immutable finite metric space.

    Build instances through :func:`validate` (or :meth:`from_matrix`); the
    constructor itself does not check the axioms.
    """

    d: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_matrix(cls, matrix) -> "FiniteMetricSpace":
        return validate(matrix)

    @property
    def n(self) -> int:
        return len(self.d)

    def __len__(self) -> int:
        return len(self.d)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.d[i][j]

    def points(self) -> range:
        return range(len(self.d))

    def pairs(self) -> Iterable[tuple[int, int]]:
        """Unordered pairs ``i < j``."""
        return itertools.combinations(range(len(self.d)), 2)

    def distances(self) -> list[Fraction]:
        """Nonzero distances, one per unordered pair."""
        return [self.d[i][j] for i, j in self.pairs()]

    def submatrix(self, indices: Sequence[int]) -> "FiniteMetricSpace":
        return FiniteMetricSpace(tuple(tuple(self.d[i][j] for j in indices) for i in indices))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.d]

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.d)
        return f"FiniteMetricSpace([{rows}])"


def validate(matrix) -> FiniteMetricSpace:
    """Check the metric axioms and return a :class:`FiniteMetricSpace`.

    Violations are reported in a fixed order: shape, diagonal, symmetry,
    positivity, then triangle inequality ``d[i][k] <= d[i][j] + d[j][k]``
    scanned lexicographically over ``(i, j, k)``.
    """
    if isinstance(matrix, FiniteMetricSpace):
        matrix = matrix.d
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0:
        raise NotSquare()
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotSquare(i)
    d = tuple(tuple(as_rational(v) for v in row) for row in rows)

    for i in range(n):
        if d[i][i] != 0:
            raise NonzeroDiagonal(i)
    for i, j in itertools.combinations(range(n), 2):
        if d[i][j] != d[j][i]:
            raise NotSymmetric(i, j)
    for i, j in itertools.combinations(range(n), 2):
        if d[i][j] <= 0:
            raise NonpositiveOffDiagonal(i, j)
    for i, j, k in itertools.product(range(n), repeat=3):
        if d[i][k] > d[i][j] + d[j][k]:
            raise TriangleViolation(i, j, k)
    return FiniteMetricSpace(d)


def one_point() -> FiniteMetricSpace:
    """The one-point space."""
    return FiniteMetricSpace(((Fraction(0),),))


class InvariantProfile(NamedTuple):
    """Minimal distance ``s``, minimal gap ``e``, minimal triangle slack ``t``."""

    s: ExtendedRational
    e: ExtendedRational
    t: ExtendedRational
    delta: ExtendedRational

    def scaled(self, lam) -> "InvariantProfile":
        lam = as_rational(lam)
        return InvariantProfile(*(v * lam if v != INF else INF for v in self))


def _min(values) -> ExtendedRational:
    return min(values, default=INF)


def invariant_profile(X: FiniteMetricSpace) -> InvariantProfile:
    n = X.n
    dist = X.distances()
    s = _min(dist)
    # Sorting makes the minimal gap a minimum over neighbours.
    ordered = sorted(dist)
    e = _min(b - a for a, b in zip(ordered, ordered[1:]))
    # Slack d(x,y)+d(y,z)-d(x,z) over all ordered triples of distinct points.
    t = _min(
        X.d[x][y] + X.d[y][z] - X.d[x][z]
        for x, y, z in itertools.permutations(range(n), 3)
    )
    return InvariantProfile(s, e, t, min(s, e, t))


def is_general_position(X: FiniteMetricSpace) -> bool:
    return invariant_profile(X).delta > 0


def scale(X: FiniteMetricSpace, lam) -> FiniteMetricSpace:
    """Multiply every distance by ``lam > 0``."""
    lam = as_rational(lam)
    if lam <= 0:
        raise NonpositiveScale(lam)
    return FiniteMetricSpace(tuple(tuple(lam * v for v in row) for row in X.d))


def diameter(X: FiniteMetricSpace) -> Fraction:
    return max(max(row) for row in X.d)


def _check_subset(X: FiniteMetricSpace, A) -> tuple[int, ...]:
    A = tuple(sorted(set(A)))
    if not A:
        raise EmptySubset()
    for a in A:
        if not 0 <= a < X.n:
            raise IndexError(a)
    return A


def set_distances(X: FiniteMetricSpace, A, B) -> tuple[Fraction, Fraction]:
    """Return ``(inf |ab|, sup |ab|)`` over ``a in A``, ``b in B``."""
    A, B = _check_subset(X, A), _check_subset(X, B)
    values = [X.d[a][b] for a in A for b in B]
    return min(values), max(values)


def hausdorff_distance(X: FiniteMetricSpace, A, B) -> Fraction:
    A, B = _check_subset(X, A), _check_subset(X, B)
    forward = max(min(X.d[a][b] for b in B) for a in A)
    backward = max(min(X.d[a][b] for a in A) for b in B)
    return max(forward, backward)
