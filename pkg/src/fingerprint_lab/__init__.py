"""Shared-entanglement quantum fingerprinting laboratory.

Exact protocol simulation, the one-sided-error constraint on Alice's and
Bob's unitaries, worst-case error evaluation, the Welch-type lower bound in
terms of Schmidt number, and a numerical optimizer over Bob's unitary set.
"""

from .bounds import BoundReport, gap_report, welch_lower_bound
from .constructions import (
    UnitaryFamily,
    assemble_scheme,
    embed_scheme,
    haar_family,
    maximally_entangled_lambda,
    weyl_heisenberg_family,
)
from .errors import (
    DimensionError,
    FingerprintError,
    NormalizationError,
    NoUnitarySolutionError,
    RankError,
    UnsupportedConfigurationError,
    ValidationError,
)
from .kernels import BACKEND
from .optimizer import (
    FrameSolution,
    OptimizerConfig,
    coherence,
    optimize,
    pairwise_overlaps,
    retract_to_unitary,
    smooth_objective,
)
from .protocol import (
    FingerprintScheme,
    ValidationReport,
    WorstCaseReport,
    acceptance_probability_bob_form,
    acceptance_probability_direct,
    acceptance_probability_reduced,
    build_J,
    build_K,
    column_space_invariance,
    derive_bob_from_alice,
    derive_measurement,
    overlap_matrix,
    validate_one_sided,
    worst_case_error,
)
from .tensor_core import (
    BipartiteState,
    SchmidtForm,
    haar_random_unitary,
    is_unitary,
    kron,
    reconstruct,
    schmidt_decompose,
    trace_inner_product,
)

__version__ = "0.1.0"
