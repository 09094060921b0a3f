"""Bourbaki towers of progressive maps: fixed points, maximal elements and
transfinite ascents over finite posets, ordinal intervals and powerset lattices."""

from .errors import (
    AccelerationUnavailable,
    AxiomViolation,
    BaseMismatch,
    BourbakiError,
    BudgetExhausted,
    CycleDetected,
    EmptySubset,
    HostMismatch,
    InvalidCfg,
    NonCanonical,
    NotAscending,
    NotProgressive,
    NotTotal,
    OrdinalParseError,
    SchemaError,
    TooLarge,
    UnknownElement,
)
from .maps import SelfMap
from .maximality import ChoiceSelector, MaximalityOutcome, enumerate_strictly_progressive, find_maximal, selector_map
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    ord_add_omega,
    ord_classify,
    ord_compare,
    ord_format,
    ord_parse,
    ord_successor,
)
from .poset import (
    ClassifiedSubset,
    ElementKind,
    FinitePoset,
    NotAChain,
    OrderedSubset,
    classify_subset,
    close_covers,
    is_initial_segment,
    leq,
    lub,
    ordered_subset,
    segments,
    strict_upper_cone,
    successor_in,
    validate_poset,
)
from .providers import (
    PosetProvider,
    clamped_successor,
    make_finite_adapter,
    make_ordinal_interval,
    make_powerset_product,
)
from .tower import (
    Budget,
    FixedPointCertificate,
    SegmentRelation,
    Stage,
    StageKind,
    TowerCheck,
    TowerTrace,
    build_tower_finite,
    build_tower_transfinite,
    check_tower,
    compare_towers,
    enumerate_towers,
)

__version__ = "0.1.0"
