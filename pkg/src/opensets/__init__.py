"""Exact computation with open and closed subsets of the unit interval under
four representations of increasing information content, with the conversion
functionals between them, finite-subcover and dense-intersection realisers,
separating/extension constructions, and the adversarial oracles that show
which conversions a bare oracle can never support."""

from .core import (
    CauchyReal,
    Cmp,
    EmptySetError,
    FinClosed,
    FinOpen,
    Interval,
    NotDisjoint,
    OracleUnsound,
    Rational,
    closed_minus_open,
    closediv,
    compare,
    covers,
    distance_to_closed_at,
    measure,
    normalize_closed,
    normalize_open,
    open_contained,
    openiv,
    pow2,
    punctured_unit,
)
from .enumeration import (
    first_rational_in,
    pair,
    rational,
    rational_index,
    rationals,
    rationals_in,
    unpair,
)
from .reps import (
    ClosedCode,
    CoverOracle,
    ExactLowerBound,
    FlooredRadius,
    FULL,
    IntervalUnion,
    LocatedSet,
    MemberOracle,
    NOT_FULL,
    OutsideRestricted,
    RadiusOracle,
    UNDETERMINED,
    components,
    components_staged,
    cover_search,
    distance_from_pieces,
    greedy_cover_oracle,
    inner_radius,
    is_full,
    located_distance,
    member_semidecide,
    probe_to_pieces,
    radius_from_pieces,
    restrict_outside,
    stage_distance,
    stream_from_distance,
    stream_from_radius,
)
from .heine_borel import (
    SubcoverCertificate,
    real_cover_to_rational,
    shrink_real_interval,
    subcover_budget,
    subcover_coded,
    subcover_radius,
    subcover_sequence,
)
from .baire import (
    Attempt,
    AuditResult,
    MachineState,
    Tag,
    apply_limit_fail,
    attempt_before,
    baire_point,
    chain_point,
    limit_audit,
    machine_step,
    maximal_chain,
    run_machine,
    tag_precedes,
)
from .separation import (
    PLFunction,
    distance_closed,
    separation_gap,
    tietze_extend,
    urysohn,
)
from .adversary import (
    ProbeLog,
    RefutationWitness,
    adversary_full_radius,
    assigned_balls,
    beta_grid_radius,
    beta_grid_subcover,
    beta_pipeline_radius,
    refute_radius_cover,
    refute_subcover,
    tail_cover,
)

__version__ = "0.1.0"
