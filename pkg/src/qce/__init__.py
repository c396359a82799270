"""Entropies of density matrices under spectral conditioning.

The core objects are validated density matrices, projectors, and identity
resolutions (matcore); on top of them sit the entropy layer (von Neumann,
compressed, conditional), a classical Shannon layer for partition data, a
resolution-only conditional entropy with its refinement and mixedness
orders, a projector-manifold ascent that maximizes the compressed entropy
at fixed rank, and randomized audits of the conditional-entropy desiderata.
"""

from .config import DEFAULT_TOLERANCES, Tolerances, tolerance_profile
from .errors import (
    BadShape,
    ClusterAmbiguity,
    DimMismatch,
    InvalidPartitionData,
    NotApplicable,
    NotCommuting,
    NotHermitian,
    NotPSD,
    NotStrictlyPositive,
    ParseError,
    QceError,
    ValidationError,
    ZeroCompression,
)
from .matcore import (
    DensityMatrix,
    IdentityResolution,
    Projector,
    SpectralResolution,
    commutator_residual,
    compress,
    eig_hermitian,
    hermitize,
    max_abs,
    spectral_resolution,
    support_projector,
    trace_xlnx,
)
from .shannon import (
    ClassicalPartitionData,
    ProbabilityVector,
    conditional_shannon_entropy,
    is_consequence,
    is_independent,
    joint_shannon_entropy,
    mutual_information,
    shannon_entropy,
)
from .entropy import (
    BlockTerm,
    EntropyBreakdown,
    block_distribution,
    classical_entropy,
    compressed_entropy,
    compressed_state,
    conditional_entropy,
    conditional_entropy_commuting,
    conditional_entropy_flat,
    conditional_entropy_given_blocks,
    information_gain,
    joint_entropy,
    pinch,
    relative_entropy,
    self_conditional_entropy,
    self_information_gain,
    spectrum_distribution,
    unnormalized_compressed_entropy,
    von_neumann_entropy,
)
from .resolutions import (
    OrderWitness,
    commutant_dim,
    conditional_entropy_of_states,
    more_mixed,
    normalized_trace,
    partition_from_resolutions,
    resolution_conditional_entropy,
    resolution_entropy,
    resolution_joint_entropy,
    resolution_leq,
)
from .rand import (
    complex_gaussian,
    ginibre_density,
    haar_basis,
    haar_unitary,
    rng_for,
)
from .states import coupled_pair_split, coupled_pair_state, tilted_pair_state
from .grassopt import (
    GapReport,
    OptimizeConfig,
    OptimizeResult,
    SelfGainProbe,
    entropy_gap_report,
    maximize_compressed_entropy,
    probe_max_self_gain,
    variational_gradient,
)
from .audit import (
    AuditReport,
    ConditionEntry,
    EXPECTED_VERDICTS,
    FAILS,
    HOLDS,
    EnsembleConfig,
    SweepReport,
    audit_deviations,
    axiom_audit,
    coupled_family_probe,
    dim2_demo,
    impossibility_demos,
    pinch_sweep,
    random_density,
    random_projector,
    random_resolution,
    random_unitary,
    replay_witness,
    shannon_sweep,
    tilted_family_probe,
)
from .serialize import (
    doc_to_matrix,
    doc_to_partition,
    doc_to_resolution,
    load_document,
    matrix_to_doc,
    resolution_to_doc,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BadShape",
    "BlockTerm",
    "ClassicalPartitionData",
    "ClusterAmbiguity",
    "ConditionEntry",
    "DEFAULT_TOLERANCES",
    "DensityMatrix",
    "DimMismatch",
    "EXPECTED_VERDICTS",
    "FAILS",
    "HOLDS",
    "EnsembleConfig",
    "EntropyBreakdown",
    "GapReport",
    "IdentityResolution",
    "InvalidPartitionData",
    "NotApplicable",
    "NotCommuting",
    "NotHermitian",
    "NotPSD",
    "NotStrictlyPositive",
    "OptimizeConfig",
    "OptimizeResult",
    "OrderWitness",
    "ParseError",
    "ProbabilityVector",
    "Projector",
    "QceError",
    "SelfGainProbe",
    "SpectralResolution",
    "SweepReport",
    "Tolerances",
    "ValidationError",
    "ZeroCompression",
    "audit_deviations",
    "axiom_audit",
    "block_distribution",
    "classical_entropy",
    "commutant_dim",
    "commutator_residual",
    "complex_gaussian",
    "compress",
    "compressed_entropy",
    "compressed_state",
    "conditional_entropy",
    "conditional_entropy_commuting",
    "conditional_entropy_flat",
    "conditional_entropy_given_blocks",
    "conditional_entropy_of_states",
    "conditional_shannon_entropy",
    "coupled_family_probe",
    "coupled_pair_split",
    "coupled_pair_state",
    "dim2_demo",
    "doc_to_matrix",
    "doc_to_partition",
    "doc_to_resolution",
    "eig_hermitian",
    "entropy_gap_report",
    "ginibre_density",
    "haar_basis",
    "haar_unitary",
    "hermitize",
    "impossibility_demos",
    "information_gain",
    "is_consequence",
    "is_independent",
    "joint_entropy",
    "joint_shannon_entropy",
    "load_document",
    "matrix_to_doc",
    "max_abs",
    "maximize_compressed_entropy",
    "more_mixed",
    "mutual_information",
    "normalized_trace",
    "partition_from_resolutions",
    "pinch",
    "pinch_sweep",
    "probe_max_self_gain",
    "random_density",
    "random_projector",
    "random_resolution",
    "random_unitary",
    "relative_entropy",
    "replay_witness",
    "resolution_conditional_entropy",
    "resolution_entropy",
    "resolution_joint_entropy",
    "resolution_leq",
    "resolution_to_doc",
    "rng_for",
    "self_conditional_entropy",
    "self_information_gain",
    "shannon_entropy",
    "shannon_sweep",
    "spectral_resolution",
    "spectrum_distribution",
    "support_projector",
    "tilted_family_probe",
    "tilted_pair_state",
    "trace_xlnx",
    "tolerance_profile",
    "unnormalized_compressed_entropy",
    "variational_gradient",
    "von_neumann_entropy",
]
