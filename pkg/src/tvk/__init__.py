"""Exact-arithmetic crossing partitions of finite point sets.

Construction of partitions whose convex hulls share a common point and
whose full-dimensional hull boundaries pairwise intersect, plus the exact
predicates, parity/cocycle checks, and independent verifiers behind them.
All coordinates are rationals and every computation is exact.
"""

from .errors import (
    BudgetExceeded,
    CrossingLost,
    DegenerateIncidence,
    DegenerateSimplex,
    DimensionMismatch,
    GeneralPositionViolated,
    ParityViolated,
    PerturbationFailed,
    SizeOutOfRange,
    TrianglesIntersect,
    TvkError,
    WitnessNotContained,
)
from .geometry import (
    Containment,
    Orientation,
    Point,
    PointSet,
    caratheodory_reduce,
    in_general_position,
    orientation,
    perturb,
    point_in_simplex,
    segment_triangle_parity,
    simplex_volume,
    triangles_linked,
)
from .lp import (
    FeasibilityProblem,
    LPResult,
    Witness,
    common_point,
    hull_membership,
    solve_feasibility,
)
from .tverberg import (
    Partition,
    balance_parts,
    birch_partition_planar,
    centerpoint_planar,
    extend_partition,
    halfplane_depth,
    radon_partition,
    tverberg_partition_bruteforce,
)
from .fixing import (
    FixTrace,
    classify_pair,
    cocycle_check,
    count_interior_points,
    enumerate_origin_pairs,
    fix_all,
    parity_check,
    swap_witness_planar,
    unnest_pair,
)
from .apps import (
    CrossingReport,
    FaceLinkVerdict,
    LINKING_COUNTEREXAMPLE_POINTS,
    crossing_simplices,
    crossing_tverberg,
    tetrahedra_face_linked,
    verify_crossing_partition,
    verify_linking_counterexample,
)
from .generate import random_point_set

__version__ = "0.1.0"
