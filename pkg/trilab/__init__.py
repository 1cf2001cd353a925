"""trilab builds, verifies and analyses tilings of the plane and of convex polygons by equilateral triangles.

Geometry is exact: coordinates live in the triangular lattice basis and are rationals.
It also studies the random walk on the even sublattice that indexes the periodic family.
"""

from importlib_metadata import PackageNotFoundError, version

# Used to automatically set version number from github actions
# as well as not break when being tested locally
try:
    __version__ = version(__package__)
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"


from trilab._cli import main, run
from trilab._errors import (
    BandLimitError,
    DescentError,
    EmptyTilingError,
    InconsistentIndexingError,
    IndexConflictError,
    InvalidStateError,
    InvalidTilingError,
    NotAnEConfigurationError,
    RelationError,
    SharedSideError,
    StirlingBoundError,
    TopologyMismatchError,
    TrilabError,
    UndefinedFieldError,
    WindowError,
    WindowExhaustedError,
)
from trilab._generators import (
    FamilyParams,
    TLRCell,
    TLRIndexing,
    extract_tlr_indexing,
    family_cell,
    generate_family,
    generate_figure3,
    generate_hexagonal,
    infer_alpha,
)
from trilab._lattice import (
    Direction,
    LatticeIsometry,
    LatticePoint,
    Orientation,
    Rational,
    Segment,
    Triangle,
    all_isometries,
    angle_between,
    cross,
    direction_between,
    format_rational,
    interiors_overlap,
    rotate60,
    segment_overlap,
    squared_norm,
    to_cartesian,
    triangle_vertices,
)
from trilab._render import render_svg, write_svg
from trilab._settings import Settings
from trilab._theorems import TheoremCheck, check_theorems
from trilab._skeleton import (
    DescentTrace,
    EConfiguration,
    MaximalSegment,
    NeighborhoodPattern,
    SegmentNeighborhood,
    Skeleton,
    StopReason,
    brute_force_e_configurations,
    build_skeleton,
    descend,
    find_e_configurations,
    maximal_segments,
    neighborhood_topology,
    next_e_configuration,
)
from trilab._tiling import (
    FailureKind,
    PerfectnessReport,
    Region,
    RegionKind,
    SideConditionViolation,
    Tiling,
    ValidityFailure,
    ValidityReport,
    Window,
    block_tiles,
    cell_area,
    diameter_multiset,
    inf_diameter,
    is_perfect,
    largest_side,
    materialize,
    packing_bound,
    perfectness,
    shared_side_pairs,
    side_conditions,
    transform_tiling,
    validate,
)
from trilab._walk import (
    FieldFunction,
    IndexWindow,
    State,
    StirlingCheck,
    WalkModel,
    estimate_return_frequency,
    green_partial,
    harmonic_residual,
    path_count,
    path_count_dp,
    reachable,
    return_probability,
    return_probability_terms,
    simulate,
    step_counts,
    stirling_table,
    stirling_term_check,
    successors,
    transition_probability,
    write_stirling_csv,
)

__all__ = [
    "all_isometries",
    "angle_between",
    "BandLimitError",
    "block_tiles",
    "brute_force_e_configurations",
    "build_skeleton",
    "cell_area",
    "check_theorems",
    "cross",
    "descend",
    "DescentError",
    "DescentTrace",
    "diameter_multiset",
    "Direction",
    "direction_between",
    "EConfiguration",
    "EmptyTilingError",
    "estimate_return_frequency",
    "extract_tlr_indexing",
    "FailureKind",
    "family_cell",
    "FamilyParams",
    "FieldFunction",
    "find_e_configurations",
    "format_rational",
    "generate_family",
    "generate_figure3",
    "generate_hexagonal",
    "green_partial",
    "harmonic_residual",
    "InconsistentIndexingError",
    "IndexConflictError",
    "IndexWindow",
    "inf_diameter",
    "infer_alpha",
    "interiors_overlap",
    "InvalidStateError",
    "InvalidTilingError",
    "is_perfect",
    "largest_side",
    "LatticeIsometry",
    "LatticePoint",
    "main",
    "materialize",
    "maximal_segments",
    "MaximalSegment",
    "NeighborhoodPattern",
    "neighborhood_topology",
    "next_e_configuration",
    "NotAnEConfigurationError",
    "Orientation",
    "packing_bound",
    "path_count",
    "path_count_dp",
    "perfectness",
    "PerfectnessReport",
    "Rational",
    "reachable",
    "Region",
    "RegionKind",
    "RelationError",
    "render_svg",
    "return_probability",
    "return_probability_terms",
    "rotate60",
    "run",
    "Segment",
    "segment_overlap",
    "SegmentNeighborhood",
    "Settings",
    "shared_side_pairs",
    "SharedSideError",
    "side_conditions",
    "SideConditionViolation",
    "simulate",
    "Skeleton",
    "squared_norm",
    "State",
    "step_counts",
    "StirlingBoundError",
    "StirlingCheck",
    "stirling_table",
    "stirling_term_check",
    "StopReason",
    "successors",
    "TheoremCheck",
    "Tiling",
    "TLRCell",
    "TLRIndexing",
    "to_cartesian",
    "TopologyMismatchError",
    "transform_tiling",
    "transition_probability",
    "triangle_vertices",
    "TrilabError",
    "UndefinedFieldError",
    "validate",
    "ValidityFailure",
    "ValidityReport",
    "WalkModel",
    "Window",
    "WindowError",
    "WindowExhaustedError",
    "write_stirling_csv",
    "write_svg",
]
