"""Train track maps on graphs: gates, eigenvalues, Nielsen paths, laminations."""

from .errors import (
    BudgetExceededError,
    ConvergenceError,
    GraphError,
    IncompatibleGraphsError,
    MapError,
    NotExpandingError,
    NotPrimitiveError,
    NotTrainTrackError,
    ParseError,
    StabilityError,
    SubdivisionError,
    TtError,
)
from .graph import (
    Graph,
    all_turns,
    cyclic_reduce,
    edge_index,
    is_reduced,
    path_reduce,
    reverse_dart,
    reverse_path,
    turn,
    turns_of_path,
    validate_graph,
)
from .graph_map import GraphSelfMap, compose
from .lamination import (
    BranchReport,
    ContractionReport,
    EquivalenceReport,
    IllegalityProfile,
    RecurrenceReport,
    SingularReport,
    branch_point_classes,
    contraction_block,
    dual_language,
    eigenray_equivalence,
    illegality_between,
    illegality_profile,
    ilt_contraction,
    leaf_language,
    leaf_window,
    singular_leaves,
    uniform_recurrence_check,
)
from .mapfile import MapFile, parse_map_file, parse_map_path, serialize_map_file
from .nielsen import (
    InpReport,
    NielsenPath,
    Occurrence,
    PeriodicData,
    PeriodicPoint,
    StabilityReport,
    SubdivisionResult,
    detect_inps,
    eigenray_prefix,
    interior_periodic_points,
    occurrences,
    periodic_structures,
    point_image,
    point_orbit,
    refine_index,
    stability_check,
    subdivide_at,
)
from .spectral import (
    PFData,
    charpoly_coefficients,
    expansion_factor,
    is_primitive,
    largest_real_root,
    matrix_power_lengths,
    pf_data,
    transition_matrix,
    transition_power,
)
from .train_track import (
    Gates,
    TurnTable,
    gates,
    ilt_count,
    is_legal_turn,
    is_train_track,
    legal_segments,
    require_train_track,
    turn_table,
    two_gates_everywhere,
    used_turns,
)

__version__ = "0.1.0"

__all__ = [
    "BranchReport",
    "BudgetExceededError",
    "ContractionReport",
    "ConvergenceError",
    "EquivalenceReport",
    "Gates",
    "Graph",
    "GraphError",
    "GraphSelfMap",
    "IllegalityProfile",
    "IncompatibleGraphsError",
    "InpReport",
    "MapError",
    "MapFile",
    "NielsenPath",
    "NotExpandingError",
    "NotPrimitiveError",
    "NotTrainTrackError",
    "Occurrence",
    "PFData",
    "ParseError",
    "PeriodicData",
    "PeriodicPoint",
    "RecurrenceReport",
    "SingularReport",
    "StabilityError",
    "StabilityReport",
    "SubdivisionError",
    "SubdivisionResult",
    "TtError",
    "TurnTable",
    "all_turns",
    "branch_point_classes",
    "charpoly_coefficients",
    "compose",
    "contraction_block",
    "cyclic_reduce",
    "detect_inps",
    "dual_language",
    "edge_index",
    "eigenray_equivalence",
    "eigenray_prefix",
    "expansion_factor",
    "gates",
    "illegality_between",
    "illegality_profile",
    "ilt_contraction",
    "ilt_count",
    "interior_periodic_points",
    "is_legal_turn",
    "is_primitive",
    "is_reduced",
    "is_train_track",
    "largest_real_root",
    "leaf_language",
    "leaf_window",
    "legal_segments",
    "matrix_power_lengths",
    "occurrences",
    "parse_map_file",
    "parse_map_path",
    "path_reduce",
    "periodic_structures",
    "pf_data",
    "point_image",
    "point_orbit",
    "refine_index",
    "require_train_track",
    "reverse_dart",
    "reverse_path",
    "serialize_map_file",
    "singular_leaves",
    "stability_check",
    "subdivide_at",
    "transition_matrix",
    "transition_power",
    "turn",
    "turn_table",
    "turns_of_path",
    "two_gates_everywhere",
    "uniform_recurrence_check",
    "used_turns",
    "validate_graph",
]
