"""Randomised experiments certifying the ball-map results on small instances.

Each runner returns an :class:`ExperimentReport`; reports are plain data that
serialise to JSON with exact rationals kept as strings.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .generators import (
    RNG_ALGORITHM,
    gen_general_position,
    gen_in_ball,
    random_cluster_sizes,
    random_metric,
)
from .gh import gh_distance, gh_distance_exact
from .io import rational_str, space_to_dict
from .isometry import (
    APEX,
    ConePoint,
    apply_ball_map,
    ball_map,
    cone_map,
    epsilon_bound,
    inverse_map,
    scaled_map,
    sn_isometries,
)
from .metric import as_rational, scale

REPORT_SCHEMA = "gh-metric-lab/report-v1"


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    n: int = 3
    trials: int = 10
    cluster_size_max: int = 3
    epsilon_fraction: Fraction = Fraction(1)
    max_points: int = 0  # 0 means min(8, n + 3)

    def __post_init__(self):
        frac = as_rational(self.epsilon_fraction)
        object.__setattr__(self, "epsilon_fraction", frac)
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 < frac <= 1:
            raise ValueError("epsilon_fraction must lie in (0, 1]")
        if self.n < 1 or self.cluster_size_max < 1:
            raise ValueError("n and cluster_size_max must be positive")
        if not self.max_points:
            object.__setattr__(self, "max_points", min(8, self.n + 3))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["epsilon_fraction"] = rational_str(self.epsilon_fraction)
        return out


@dataclass
class ExperimentReport:
    kind: str
    config: ExperimentConfig
    trials: list = field(default_factory=list)
    nodes: int = 0

    @property
    def passed(self) -> bool:
        return all(t["pass"] for t in self.trials)

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "kind": self.kind,
            "rng": RNG_ALGORITHM,
            "config": self.config.to_dict(),
            "pass": self.passed,
            "passed_trials": sum(t["pass"] for t in self.trials),
            "solver_nodes": self.nodes,
            "trials": self.trials,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _trial_seeds(config: ExperimentConfig):
    master = random.Random(config.seed)
    return [master.getrandbits(64) for _ in range(config.trials)]


def _scale_hints(rng: random.Random):
    return rng.choice([1, 2, 3]), rng.choice([1, 2, 3, 5])


def run_isometry_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Check ``d_GH(X, Y) == d_GH(D(X), D(Y))`` and exact round trips."""
    report = ExperimentReport("isometry", config)
    for index, seed in enumerate(_trial_seeds(config)):
        rng = random.Random(seed)
        hm, hn = _scale_hints(rng)
        M = gen_general_position(rng, config.n, hm)
        N = gen_general_position(rng, config.n, hn)
        eps = config.epsilon_fraction * epsilon_bound(M, N)
        m = ball_map(M, N, eps)
        X = gen_in_ball(rng, M, eps, random_cluster_sizes(rng, config.n, config.max_points, config.cluster_size_max))
        Y = gen_in_ball(rng, M, eps, random_cluster_sizes(rng, config.n, config.max_points, config.cluster_size_max))
        before = gh_distance_exact(X, Y, all_optimal=False)
        V, W = apply_ball_map(m, X), apply_ball_map(m, Y)
        after = gh_distance_exact(V, W, all_optimal=False)
        back = inverse_map(m)
        round_trip = apply_ball_map(back, V) == X and apply_ball_map(back, W) == Y
        report.nodes += before.nodes + after.nodes
        report.trials.append({
            "trial": index,
            "M": space_to_dict(M),
            "N": space_to_dict(N),
            "epsilon": rational_str(eps),
            "X": space_to_dict(X),
            "Y": space_to_dict(Y),
            "gh_XY": rational_str(before.distance),
            "gh_VW": rational_str(after.distance),
            "round_trip": round_trip,
            "pass": before.distance == after.distance and round_trip,
        })
    return report


def run_sn_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Check that the ``n!`` renumbering maps give pairwise non-isometric images."""
    if config.n < 3:
        raise ValueError("the permutation experiment needs n >= 3")
    report = ExperimentReport("sn", config)
    for index, seed in enumerate(_trial_seeds(config)):
        rng = random.Random(seed)
        M = gen_general_position(rng, config.n, _scale_hints(rng)[0])
        # epsilon_bound(M, M^tau) does not depend on tau.
        family = sn_isometries(M, config.epsilon_fraction * epsilon_bound(M, M))
        report.trials.append({
            "trial": index,
            "M": space_to_dict(M),
            "epsilon": rational_str(family.epsilon),
            "maps": len(family.maps),
            "checks": family.checks,
            "isometric_pairs": [list(map(list, p)) for p in family.isometric_pairs],
            "pass": family.distinct and len(family.maps) == len(list(itertools.permutations(range(config.n)))),
        })
    return report


def _random_lambda(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 16), rng.randint(1, 6))


def run_cone_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Check ``d_GH(lam X, lam Y) == lam d_GH(X, Y)`` and the cone extension of a ball map."""
    report = ExperimentReport("cone", config)
    for index, seed in enumerate(_trial_seeds(config)):
        rng = random.Random(seed)
        X = random_metric(rng, rng.randint(1, 4))
        Y = random_metric(rng, rng.randint(1, 4))
        lam = _random_lambda(rng)
        base = gh_distance(X, Y)
        scaled = gh_distance(scale(X, lam), scale(Y, lam))
        homogeneous = scaled == lam * base

        M = gen_general_position(rng, config.n, _scale_hints(rng)[0])
        N = gen_general_position(rng, config.n, _scale_hints(rng)[1])
        m = ball_map(M, N, config.epsilon_fraction * epsilon_bound(M, N))
        Z = gen_in_ball(rng, M, m.epsilon, random_cluster_sizes(rng, config.n, config.max_points, config.cluster_size_max))
        image = cone_map(m, ConePoint(lam, Z))
        through_scaled = scaled_map(m, lam)(scale(Z, lam))
        cone_ok = image.realize() == through_scaled and cone_map(m, APEX) is APEX
        report.trials.append({
            "trial": index,
            "lambda": rational_str(lam),
            "gh_XY": rational_str(base),
            "gh_scaled": rational_str(scaled),
            "homogeneous": homogeneous,
            "cone_consistent": cone_ok,
            "pass": homogeneous and cone_ok,
        })
    return report
