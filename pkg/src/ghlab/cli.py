"""Command-line driver.

Exit codes: 0 success, 1 verdict failure, 2 usage or input error.  Every
command writes one JSON document to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import GHLabError, MetricAxiomError
from .experiments import ExperimentConfig, run_isometry_experiment
from .generators import gen_general_position, gen_in_ball
from .gh import gh_distance_exact
from .io import (
    load_space,
    parse_rational,
    partition_to_dict,
    rational_str,
    space_to_dict,
)
from .isometry import epsilon_bound, remap_metric, sn_isometries
from .metric import invariant_profile, is_general_position
from .partition import canonical_partition


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _error(exc: Exception) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, MetricAxiomError):
        out["indices"] = list(exc.indices)
    return out


def cmd_validate(args) -> int:
    X = load_space(args.file)
    _emit({"valid": True, "n": X.n})
    return 0


def cmd_invariants(args) -> int:
    p = invariant_profile(load_space(args.file))
    _emit({k: rational_str(v) for k, v in p._asdict().items()})
    return 0


def cmd_ghd(args) -> int:
    X, Y = load_space(args.x), load_space(args.y)
    res = gh_distance_exact(X, Y, all_optimal=True if args.all_optimal else None)
    out = {"distance": rational_str(res.distance)}
    if args.all_optimal:
        out["optimal"] = [R.sorted_pairs() for R in res.optimal]
    _emit(out)
    return 0


def cmd_partition(args) -> int:
    P = canonical_partition(load_space(args.m), load_space(args.x), parse_rational(args.epsilon))
    _emit(partition_to_dict(P))
    return 0


def cmd_remap(args) -> int:
    M, N, X = load_space(args.m), load_space(args.n), load_space(args.x)
    eps = epsilon_bound(M, N) if args.epsilon is None else parse_rational(args.epsilon)
    _emit(space_to_dict(remap_metric(M, N, X, eps)))
    return 0


def cmd_verify_isometry(args) -> int:
    config = ExperimentConfig(
        seed=args.seed,
        n=args.n,
        trials=args.trials,
        cluster_size_max=args.cluster_size_max,
        epsilon_fraction=parse_rational(args.epsilon_fraction),
    )
    report = run_isometry_experiment(config)
    print(report.to_json())
    return 0 if report.passed else 1


def cmd_sn_orbit(args) -> int:
    M = load_space(args.m)
    eps = None if args.epsilon is None else parse_rational(args.epsilon)
    fam = sn_isometries(M, eps)
    _emit({
        "epsilon": rational_str(fam.epsilon),
        "maps": len(fam.maps),
        "witness": space_to_dict(fam.witness),
        "witness_labels": fam.witness_partition.labels(),
        "checks": fam.checks,
        "isometric_pairs": [list(map(list, p)) for p in fam.isometric_pairs],
        "distinct": fam.distinct,
    })
    return 0 if fam.distinct else 1


def cmd_gen(args) -> int:
    if args.clusters is None:
        X = gen_general_position(args.seed, args.n, parse_rational(args.scale))
        _emit(space_to_dict(X))
        return 0
    if args.reference is None:
        raise GHLabError("--clusters needs --reference")
    M = load_space(args.reference)
    sizes = [int(k) for k in args.clusters.split(",")]
    if args.epsilon is not None:
        eps = parse_rational(args.epsilon)
    elif is_general_position(M) and M.n > 1:
        eps = epsilon_bound(M, M)
    else:
        eps = invariant_profile(M).s / 4
    X, P = gen_in_ball(args.seed, M, eps, sizes, return_labels=True)
    out = space_to_dict(X)
    out["labels"] = P.labels()
    _emit(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ghlab", description="Exact Gromov-Hausdorff toolkit for finite metric spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the metric axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="print s, e, t, delta")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("ghd", help="exact Gromov-Hausdorff distance")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--all-optimal", action="store_true")
    p.set_defaults(func=cmd_ghd)

    p = sub.add_parser("partition", help="canonical partition of X near M")
    p.add_argument("m")
    p.add_argument("x")
    p.add_argument("--epsilon", required=True)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("remap", help="move X from the ball of M to the ball of N")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("x")
    p.add_argument("--epsilon")
    p.set_defaults(func=cmd_remap)

    p = sub.add_parser("verify-isometry", help="randomised check of the ball isometry")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cluster-size-max", type=int, default=3)
    p.add_argument("--epsilon-fraction", default="1")
    p.set_defaults(func=cmd_verify_isometry)

    p = sub.add_parser("sn-orbit", help="permutation family of self-isometries")
    p.add_argument("m")
    p.add_argument("--epsilon")
    p.set_defaults(func=cmd_sn_orbit)

    p = sub.add_parser("gen", help="generate a general-position space or a space in a ball")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--scale", default="1")
    p.add_argument("--clusters")
    p.add_argument("--reference")
    p.add_argument("--epsilon")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (GHLabError, OSError, ValueError) as exc:
        _emit(_error(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
