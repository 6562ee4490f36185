"""Exact Gromov-Hausdorff computations on finite metric spaces.

The toolkit covers exact GH distance, canonical partitions of spaces near a
reference space, and the ball maps between GH neighbourhoods of spaces in
general position.
"""

from .errors import GHLabError
from .generators import gen_general_position, gen_in_ball, random_metric
from .gh import (
    Correspondence,
    GhResult,
    Relation,
    distortion,
    enumerate_correspondences,
    gh_distance,
    gh_distance_bruteforce,
    gh_distance_exact,
    gh_scaling_check,
    is_isometric,
)
from .isometry import (
    APEX,
    BallMap,
    ConePoint,
    apply_ball_map,
    ball_map,
    cone_map,
    epsilon_bound,
    inverse_map,
    metric_change_bound,
    permuted_space,
    remap_metric,
    sn_isometries,
)
from .metric import (
    INF,
    FiniteMetricSpace,
    InvariantProfile,
    diameter,
    hausdorff_distance,
    invariant_profile,
    is_general_position,
    one_point,
    scale,
    set_distances,
    validate,
)
from .partition import (
    BlockDecomposition,
    LabeledPartition,
    canonical_partition,
    decompose_optimal,
    labeling_is_unique,
    verify_partition,
)

__version__ = "0.1.0"
