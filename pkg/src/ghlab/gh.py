"""Relations, correspondences, distortion and exact Gromov-Hausdorff distance.

Two independent routes compute the distance between finite spaces:

* :func:`gh_distance_bruteforce` walks every correspondence produced by
  :func:`enumerate_correspondences` and is only usable on tiny grids;
* :func:`gh_distance_exact` is the branch-and-bound solver used everywhere
  else.

A relation is encoded as a bitmask over the ``len(X) * len(Y)`` grid with the
cell ``(x, y)`` at bit ``x * len(Y) + y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .errors import GHLabError, SizeMismatch, SizeTooLargeForEnumeration
from .metric import FiniteMetricSpace, as_rational, scale

__all__ = [
    "Relation",
    "Correspondence",
    "GhResult",
    "distortion",
    "enumerate_correspondences",
    "gh_distance_bruteforce",
    "gh_distance_exact",
    "gh_distance",
    "is_isometric",
    "gh_scaling_check",
    "ENUMERATION_CAP",
    "FULL_OPTIMAL_CAP",
]

#: Largest grid (``left_n * right_n``) that :func:`enumerate_correspondences` accepts.
ENUMERATION_CAP = 20
#: Grids up to this size get every optimal correspondence by default.
FULL_OPTIMAL_CAP = 12


@dataclass(frozen=True)
class Relation:
    """Nonempty set of 0-based ``(left, right)`` index pairs."""

    left_n: int
    right_n: int
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(i), int(j)) for i, j in self.pairs))
        if not self.pairs:
            raise GHLabError("a relation must be nonempty")
        for i, j in self.pairs:
            if not (0 <= i < self.left_n and 0 <= j < self.right_n):
                raise GHLabError(f"pair {(i, j)} outside {self.left_n}x{self.right_n} grid")

    @classmethod
    def from_mask(cls, left_n: int, right_n: int, mask: int):
        pairs = [(c // right_n, c % right_n) for c in range(left_n * right_n) if mask >> c & 1]
        return cls(left_n, right_n, frozenset(pairs))

    @property
    def mask(self) -> int:
        return sum(1 << (i * self.right_n + j) for i, j in self.pairs)

    def image(self, A) -> frozenset:
        A = set(A)
        return frozenset(j for i, j in self.pairs if i in A)

    def preimage(self, B) -> frozenset:
        B = set(B)
        return frozenset(i for i, j in self.pairs if j in B)

    def is_correspondence(self) -> bool:
        return (
            {i for i, _ in self.pairs} == set(range(self.left_n))
            and {j for _, j in self.pairs} == set(range(self.right_n))
        )

    def inverse(self):
        return type(self)(self.right_n, self.left_n, frozenset((j, i) for i, j in self.pairs))

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.left_n}x{self.right_n}, {self.sorted_pairs()})"


class Correspondence(Relation):
    """Relation whose projections onto both factors are surjective."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_correspondence():
            raise GHLabError("projections are not surjective")


def distortion(sigma: Relation, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Fraction:
    """Largest ``| |xx'| - |yy'| |`` over ordered pairs of pairs of ``sigma``."""
    if sigma.left_n != X.n or sigma.right_n != Y.n:
        raise SizeMismatch(f"relation is {sigma.left_n}x{sigma.right_n}, spaces are {X.n}x{Y.n}")
    pairs = sigma.sorted_pairs()
    return max(abs(X.d[x][x2] - Y.d[y][y2]) for x, y in pairs for x2, y2 in pairs)


def enumerate_correspondences(left_n: int, right_n: int) -> Iterator[Correspondence]:
    """Yield every correspondence of the grid once, by increasing bitmask."""
    if left_n < 1 or right_n < 1:
        raise GHLabError("both sides need at least one point")
    cells = left_n * right_n
    if cells > ENUMERATION_CAP:
        raise SizeTooLargeForEnumeration(f"{left_n}x{right_n} grid exceeds {ENUMERATION_CAP} cells")
    rows = [sum(1 << (i * right_n + j) for j in range(right_n)) for i in range(left_n)]
    cols = [sum(1 << (i * right_n + j) for i in range(left_n)) for j in range(right_n)]
    for mask in range(1, 1 << cells):
        if all(mask & r for r in rows) and all(mask & c for c in cols):
            yield Correspondence.from_mask(left_n, right_n, mask)


@dataclass(frozen=True)
class GhResult:
    """Exact distance and optimal correspondences.

    ``complete`` tells whether ``optimal`` lists every minimiser (sorted by
    bitmask) or a single certified witness.
    """

    distance: Fraction
    optimal: tuple
    complete: bool
    nodes: int = field(default=0, compare=False)

    @property
    def witness(self) -> Correspondence:
        return self.optimal[0]


def gh_distance_bruteforce(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> GhResult:
    """Exhaustive oracle: minimise distortion over all correspondences."""
    best = None
    optimal = []
    count = 0
    for R in enumerate_correspondences(X.n, Y.n):
        count += 1
        dis = distortion(R, X, Y)
        if best is None or dis < best:
            best, optimal = dis, [R]
        elif dis == best:
            optimal.append(R)
    return GhResult(best / 2, tuple(optimal), True, count)


def _common_denominator(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> int:
    den = 1
    for S in (X, Y):
        for row in S.d:
            for v in row:
                den = math.lcm(den, v.denominator)
    return den


class _Grid:
    """Integer-scaled distortion table between all grid cells."""

    def __init__(self, X: FiniteMetricSpace, Y: FiniteMetricSpace):
        self.den = _common_denominator(X, Y)
        dx = [[int(v * self.den) for v in row] for row in X.d]
        dy = [[int(v * self.den) for v in row] for row in Y.d]
        self.nx, self.ny = X.n, Y.n
        self.cells = [(x, y) for x in range(self.nx) for y in range(self.ny)]
        self.cost = [
            [abs(dx[x][x2] - dy[y][y2]) for x2, y2 in self.cells] for x, y in self.cells
        ]
        self.rows = [sum(1 << (x * self.ny + y) for y in range(self.ny)) for x in range(self.nx)]
        self.cols = [sum(1 << (x * self.ny + y) for x in range(self.nx)) for y in range(self.ny)]
        self.diam_x = max(max(r) for r in dx)
        self.diam_y = max(max(r) for r in dy)
        self.nodes = 0

    def levels(self) -> list[int]:
        # Any correspondence has distortion at least |diam X - diam Y| and the
        # full product X x Y has distortion exactly max(diam X, diam Y).
        lo = abs(self.diam_x - self.diam_y)
        hi = max(self.diam_x, self.diam_y)
        return sorted({c for row in self.cost for c in row if lo <= c <= hi})

    def compat(self, level: int) -> list[int]:
        return [
            sum(1 << k for k, c in enumerate(row) if c <= level) for row in self.cost
        ]

    def find(self, level: int) -> Optional[int]:
        """Some correspondence of distortion <= level, as a mask, or None."""
        compat = self.compat(level)
        full = (1 << len(self.cells)) - 1
        return self._find(compat, 0, full, 0, 0)

    def _find(self, compat, chosen, allowed, covx, covy):
        self.nodes += 1
        # Branch on the uncovered point with the fewest admissible partners.
        branch = None
        for x in range(self.nx):
            if not covx >> x & 1:
                m = allowed & self.rows[x]
                if not m:
                    return None
                if branch is None or m.bit_count() < branch.bit_count():
                    branch = m
        for y in range(self.ny):
            if not covy >> y & 1:
                m = allowed & self.cols[y]
                if not m:
                    return None
                if branch is None or m.bit_count() < branch.bit_count():
                    branch = m
        if branch is None:
            return chosen
        while branch:
            low = branch & -branch
            branch ^= low
            k = low.bit_length() - 1
            x, y = self.cells[k]
            found = self._find(
                compat, chosen | low, allowed & compat[k], covx | 1 << x, covy | 1 << y
            )
            if found is not None:
                return found
        return None

    def find_all(self, level: int) -> list[int]:
        """Every correspondence of distortion <= level, as sorted masks."""
        compat = self.compat(level)
        out: list[int] = []
        self._all(compat, 0, (1 << len(self.cells)) - 1, 0, 0, 0, out)
        return sorted(out)

    def _all(self, compat, start, allowed, chosen, covx, covy, out):
        self.nodes += 1
        future = allowed & ~((1 << start) - 1)
        for x in range(self.nx):
            if not covx >> x & 1 and not future & self.rows[x]:
                return
        for y in range(self.ny):
            if not covy >> y & 1 and not future & self.cols[y]:
                return
        if not future:
            out.append(chosen)
            return
        low = future & -future
        k = low.bit_length() - 1
        x, y = self.cells[k]
        self._all(compat, k + 1, allowed & compat[k], chosen | low, covx | 1 << x, covy | 1 << y, out)
        self._all(compat, k + 1, allowed & ~low, chosen, covx, covy, out)


def gh_distance_exact(
    X: FiniteMetricSpace, Y: FiniteMetricSpace, all_optimal: Optional[bool] = None
) -> GhResult:
    """Exact GH distance by branch and bound over correspondence levels.

    Candidate distortion values are the finitely many ``| |xx'| - |yy'| |``
    inside ``[|diam X - diam Y|, max(diam X, diam Y)]``.  A binary search
    over them calls a covering search that extends a set of pairwise
    compatible grid cells until both sides are covered, always branching on
    the point with the fewest admissible partners.

    ``all_optimal=None`` lists every minimiser when the grid has at most
    :data:`FULL_OPTIMAL_CAP` cells and a single witness otherwise.
    """
    grid = _Grid(X, Y)
    levels = grid.levels()
    lo, hi = 0, len(levels) - 1
    witness = grid.find(levels[hi])
    while lo < hi:
        mid = (lo + hi) // 2
        found = grid.find(levels[mid])
        if found is None:
            lo = mid + 1
        else:
            hi, witness = mid, found
    level = levels[lo]
    if witness is None or lo != hi:
        raise AssertionError("covering search lost the upper bound")
    if all_optimal is None:
        all_optimal = len(grid.cells) <= FULL_OPTIMAL_CAP
    masks = grid.find_all(level) if all_optimal else [witness]
    optimal = tuple(Correspondence.from_mask(X.n, Y.n, m) for m in masks)
    return GhResult(Fraction(level, 2 * grid.den), optimal, all_optimal, grid.nodes)


def gh_distance(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Fraction:
    return gh_distance_exact(X, Y, all_optimal=False).distance


def is_isometric(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Optional[tuple[int, ...]]:
    """Distance-preserving bijection ``perm`` (``x -> perm[x]``) or None."""
    n = X.n
    if n != Y.n or sorted(X.distances()) != sorted(Y.distances()):
        return None
    profile_x = [sorted(row) for row in X.d]
    profile_y = [sorted(row) for row in Y.d]
    options = [[y for y in range(n) if profile_x[x] == profile_y[y]] for x in range(n)]
    perm: list[int] = []
    used = [False] * n

    def extend(x):
        if x == n:
            return True
        for y in options[x]:
            if used[y]:
                continue
            if all(X.d[x][k] == Y.d[y][perm[k]] for k in range(x)):
                used[y] = True
                perm.append(y)
                if extend(x + 1):
                    return True
                perm.pop()
                used[y] = False
        return False

    return tuple(perm) if extend(0) else None


def gh_scaling_check(X: FiniteMetricSpace, Y: FiniteMetricSpace, lam) -> bool:
    lam = as_rational(lam)
    return gh_distance(scale(X, lam), scale(Y, lam)) == lam * gh_distance(X, Y)
