"""Rigidity analysis of k-uniform hyper-frameworks.

Decides generic local rigidity under pluggable polynomial measurement
models, exposes the associated generic matroid, verifies combinatorial
sparsity counts, certifies global rigidity through stress kernels, and
runs seeded random-subgraph threshold sweeps.
"""

from .exactla import (
    DEFAULT_MODULUS,
    PRIME_FIELD,
    RATIONAL_FIELD,
    ExactMatrix,
    FieldConfig,
    GenericPoint,
    ProbeReport,
    left_kernel_basis,
    matmul,
    prime_field,
    probe_rank_with_confidence,
    rank,
    rational_field,
    right_kernel_basis,
    sample_generic_point,
    transpose,
)
from .forms import (
    MeasurementModel,
    StabilizerInfo,
    builtin_model,
    estimate_stabilizer_dim,
    evaluate,
    gradient,
    parse_model,
    sum_of_copies,
)
from .globalcert import (
    ConnectivityReport,
    GaussMapReport,
    StressCertificate,
    ZeroExtensionVerdict,
    certify_global_determinant,
    certify_global_tensor,
    connectivity_necessary,
    experimental_gauss_map_rank,
    shared_kernel_dim,
    slice_gradient_matrix,
    slice_set,
    stress_basis,
    weighted_adjacency,
    zero_extension_global,
)
from .hypergraph import (
    Hypergraph,
    complete_hypergraph,
    complete_partite,
    counter_hash,
    d_valent_extension,
    dump_hypergraph,
    edge_minus,
    edge_multiplicity,
    edge_support,
    erdos_renyi_subgraph,
    from_json_dict,
    induced_subhypergraph,
    load_hypergraph,
    neighbor_closure,
    to_json_dict,
    vertex_connectivity,
    without_edges,
)
from .matroidunion import partition_into_independent
from .packing import (
    CorollaryReport,
    PackingReport,
    corollary_check,
    greedy_sparse_family,
    packing_number_lower_bound,
    power_pair_hypergraph,
    verify_packing,
)
from .randomized import (
    SpectrumReport,
    SweepResult,
    SweepRow,
    ThresholdSpec,
    monte_carlo_rigidity,
    structured_point,
    sweep,
    threshold_t,
    verify_structured_spectrum,
)
from .rigidity import (
    ExtensionReport,
    GlobalOracleAnswer,
    MatroidOracle,
    OracleAnswer,
    RigidityReport,
    check_extension,
    coefficient,
    complete_global_rigidity_oracle,
    decompose_independent,
    find_circuit,
    generic_rank,
    generic_rank_report,
    is_locally_rigid,
    is_stable_vertex,
    jacobian,
    matroid_independent,
    matroid_rank,
    measurement,
    secant_dimension_oracle,
)
from .sparsity import (
    LpPlaneReport,
    expected_rank_bound,
    geiringer_laman_rigid,
    is_sparse,
    is_tight,
    lp_plane_global_condition,
    sparsity_rank,
    spanning_tree_packing,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # hypergraphs
    "Hypergraph",
    "complete_hypergraph",
    "complete_partite",
    "induced_subhypergraph",
    "neighbor_closure",
    "d_valent_extension",
    "erdos_renyi_subgraph",
    "vertex_connectivity",
    "without_edges",
    "edge_minus",
    "edge_support",
    "edge_multiplicity",
    "from_json_dict",
    "to_json_dict",
    "load_hypergraph",
    "dump_hypergraph",
    "counter_hash",
    # fields and exact linear algebra
    "DEFAULT_MODULUS",
    "FieldConfig",
    "PRIME_FIELD",
    "RATIONAL_FIELD",
    "prime_field",
    "rational_field",
    "ExactMatrix",
    "GenericPoint",
    "sample_generic_point",
    "rank",
    "right_kernel_basis",
    "left_kernel_basis",
    "transpose",
    "matmul",
    "ProbeReport",
    "probe_rank_with_confidence",
    # measurement models
    "StabilizerInfo",
    "MeasurementModel",
    "builtin_model",
    "parse_model",
    "sum_of_copies",
    "evaluate",
    "gradient",
    "estimate_stabilizer_dim",
    # rigidity and the generic matroid
    "coefficient",
    "measurement",
    "jacobian",
    "generic_rank",
    "generic_rank_report",
    "RigidityReport",
    "is_locally_rigid",
    "MatroidOracle",
    "matroid_independent",
    "matroid_rank",
    "find_circuit",
    "decompose_independent",
    "is_stable_vertex",
    "ExtensionReport",
    "check_extension",
    "OracleAnswer",
    "secant_dimension_oracle",
    "GlobalOracleAnswer",
    "complete_global_rigidity_oracle",
    "partition_into_independent",
    # sparsity counts
    "is_sparse",
    "is_tight",
    "sparsity_rank",
    "expected_rank_bound",
    "geiringer_laman_rigid",
    "spanning_tree_packing",
    "LpPlaneReport",
    "lp_plane_global_condition",
    # packing certificates
    "PackingReport",
    "verify_packing",
    "greedy_sparse_family",
    "packing_number_lower_bound",
    "CorollaryReport",
    "corollary_check",
    "power_pair_hypergraph",
    # global rigidity certificates
    "slice_set",
    "stress_basis",
    "weighted_adjacency",
    "slice_gradient_matrix",
    "shared_kernel_dim",
    "StressCertificate",
    "certify_global_tensor",
    "certify_global_determinant",
    "ZeroExtensionVerdict",
    "zero_extension_global",
    "ConnectivityReport",
    "connectivity_necessary",
    "GaussMapReport",
    "experimental_gauss_map_rank",
    # randomised thresholds
    "ThresholdSpec",
    "threshold_t",
    "structured_point",
    "SpectrumReport",
    "verify_structured_spectrum",
    "SweepRow",
    "monte_carlo_rigidity",
    "SweepResult",
    "sweep",
]
