"""Solvers, generators, and tooling for weighted locally bounded list coloring."""

from .basic import solve_components_k2, solve_isolated_k_fixed, solve_isolated_unit
from .classify import ClassReport, classify_graph, classify_instance
from .codec import (
    instance_from_doc,
    instance_to_doc,
    read_coloring,
    read_instance,
    write_coloring,
    write_instance,
)
from .cographs import (
    Cotree,
    build_cotree,
    dp_cograph,
    solve_cograph_edges,
    solve_complete_bipartite,
    solve_complete_graph,
)
from .errors import (
    DecompositionError,
    InstanceFormatError,
    NotACographError,
    OracleLimitError,
    UsageError,
)
from .generators import (
    GeneratedInstance,
    OneInThreeSatSource,
    PartitionSource,
    ThreeDimMatchingSource,
    ThreePartitionSource,
    gen_from_one_in_three_sat,
    gen_from_partition,
    gen_from_three_dim_matching,
    gen_from_three_partition,
    generate,
)
from .instance import (
    Coloring,
    ColoringInstance,
    RawDecomposition,
    SolveOutcome,
    ValidationReport,
    validate_coloring,
)
from .matching import (
    AssignmentProblem,
    CapacitatedBipartiteNetwork,
    max_flow_saturate,
    max_weight_perfect_assignment,
)
from .oracle import brute_force_solve
from .split import (
    SingularSpec,
    SplitPartition,
    infer_singular_spec,
    solve_split_edges,
    solve_split_k_fixed,
    solve_split_singular,
    split_partition,
)
from .treewidth import NiceDecomposition, build_nice_decomposition, dp_edge, dp_vertex

__all__ = [
    "AssignmentProblem",
    "CapacitatedBipartiteNetwork",
    "ClassReport",
    "Coloring",
    "ColoringInstance",
    "Cotree",
    "DecompositionError",
    "GeneratedInstance",
    "InstanceFormatError",
    "NiceDecomposition",
    "NotACographError",
    "OneInThreeSatSource",
    "OracleLimitError",
    "PartitionSource",
    "RawDecomposition",
    "SingularSpec",
    "SolveOutcome",
    "SplitPartition",
    "ThreeDimMatchingSource",
    "ThreePartitionSource",
    "UsageError",
    "ValidationReport",
    "brute_force_solve",
    "build_cotree",
    "build_nice_decomposition",
    "classify_graph",
    "classify_instance",
    "dp_cograph",
    "dp_edge",
    "dp_vertex",
    "gen_from_one_in_three_sat",
    "gen_from_partition",
    "gen_from_three_dim_matching",
    "gen_from_three_partition",
    "generate",
    "infer_singular_spec",
    "instance_from_doc",
    "instance_to_doc",
    "max_flow_saturate",
    "max_weight_perfect_assignment",
    "read_coloring",
    "read_instance",
    "solve_cograph_edges",
    "solve_complete_bipartite",
    "solve_complete_graph",
    "solve_components_k2",
    "solve_isolated_k_fixed",
    "solve_isolated_unit",
    "solve_split_edges",
    "solve_split_k_fixed",
    "solve_split_singular",
    "split_partition",
    "validate_coloring",
    "write_coloring",
    "write_instance",
]
