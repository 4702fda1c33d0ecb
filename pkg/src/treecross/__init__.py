"""Crossing statistics of uniform random labelled trees on planar point sets.

Exact distributions by sharded exhaustive enumeration, exact rational
moments/cumulants and closed forms, rectilinear crossing numbers with
exact integer predicates, and seeded Monte Carlo normality diagnostics.
"""

from .distributions import (
    ENUMERATION_GUARD,
    CrossingDistribution,
    distribution_csv,
    exact_distribution,
)
from .errors import (
    CoordinateBoundError,
    GeneralPositionError,
    GuardError,
    InvalidCodeError,
    InvalidForestError,
    InvalidTreeError,
    PointsFileError,
    SingularSystemError,
    TreecrossError,
)
from .geometry import (
    COORD_BOUND,
    ConvexConfig,
    CoordinateConfig,
    PointConfig,
    convex_polygon_config,
    crossing_count,
    edges_cross,
    kn_crossing_pairs,
    load_point_config,
    orientation,
    parse_points_text,
    random_general_position_config,
    rectilinear_crossing_number,
    validate_general_position,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .montecarlo import (
    SampleReport,
    empirical_moments,
    ks_statistic,
    normal_cdf,
    run_experiment,
    sample_crossing_counts,
    variance_scaling_probe,
)
from .rng import SplitMix64
from .stats import (
    FitResult,
    SetPartition,
    closed_form_mean,
    closed_form_second_moment,
    closed_form_variance,
    cumulant_scaling_report,
    distribution_cumulants,
    fit_laurent_polynomial,
    general_position_mean,
    moments_to_cumulants,
    raw_moment,
    set_partitions,
)
from .trees import (
    Forest,
    LabeledTree,
    PruferCode,
    contains_forest,
    count_trees_containing,
    enumerate_trees,
    forest_probability,
    num_trees,
    prufer_decode,
    prufer_encode,
    sample_tree,
)

__version__ = "0.1.0"
