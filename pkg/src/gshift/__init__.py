"""Dynamics of generalized shifts: configurations indexed by a countable set,
pushed forward by composing the indexing self-map into every coordinate.

The package classifies the self-map's orbit structure, predicts which chaos
flavors the induced shift exhibits, builds the block configurations whose
finite statistics witness those predictions, and replays the supporting
combinatorial estimates numerically.
"""

from .indexspace import (
    BudgetExceededError,
    DomainMismatchError,
    INTEGERS,
    Index,
    IndexDomain,
    NATURALS,
    RankRangeError,
    SelfMap,
    canonical_form,
    compose_maps,
    contains,
    disjoint_union,
    disjoint_union_maps,
    domain_size,
    enumerate_index,
    evaluate,
    finite_range,
    format_index,
    iterate,
    map_spec,
    parity_down,
    parity_up,
    parse_index,
    parse_map_spec,
    predecessor,
    preimage,
    rank_of,
    region_indices,
    square,
    square_plus_one,
    successor,
    table_map,
)
from .orbits import (
    ChainDecomposition,
    MapProfile,
    PointClassification,
    UnresolvedOrbitError,
    Verdict,
    brute_force_profile,
    chain_decomposition,
    classify_point,
    injectivity_witness,
    map_profile,
    orbit_position,
    proven_false,
    proven_true,
    sanity_check_catalog_metadata,
    signed_orbit_index,
    unknown,
    v_and,
    v_not,
    v_or,
)
from .configspace import (
    Alphabet,
    Configuration,
    Constant,
    CylinderPattern,
    Embedded,
    FinitePatch,
    MetricResolutionError,
    OrbitBlocks,
    Shifted,
    agree_on_window,
    default_alphabet,
    in_cylinder,
    make_window,
    metric_less_than,
    parse_pattern,
    pattern_from_ranks,
    pattern_json,
    shifted,
    threshold_to_window,
    truncated_distance,
    window_from_ranks,
    window_to_threshold,
)
from .constructions import (
    AlmostDisjointFamily,
    BlockLengths,
    ExplicitBlockSet,
    LengthLexWord,
    PatternEnumeration,
    PreconditionError,
    PrimePowerSet,
    ScrambledFamilySpec,
    almost_disjoint_family,
    block_lengths,
    dc_family,
    densify_family,
    full_shift_transitive_point,
    omega_embedding,
    pattern_enumeration,
    shift_inner,
    transitive_weave_family,
    verify_length_inequalities,
    weave_entry_exponent,
)
from .stats import (
    DcPairParams,
    DensityProfile,
    DensityRow,
    PairVerdict,
    Schedule,
    agreement_flags,
    block_boundary_schedule,
    dc_pair_report,
    density_profile,
    orbit_window,
    proof_bound_check_dc,
    xi_count,
    zeta_count,
)
from .theorems import (
    ChaosPrediction,
    SuiteEntry,
    check_composition_law,
    check_product_law,
    counterexample_suite,
    predict,
)

__version__ = "0.1.0"
