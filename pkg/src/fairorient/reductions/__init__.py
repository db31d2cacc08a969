"""Hardness gadgets from Partition and 2P2N-3SAT, with desk-scale verification."""
from .gadgets3sat import (
    ClauseWiring,
    ForcingPropertyUnverified,
    WiringCountMismatch,
    clause_fragment,
    find_intended_orientation,
    gadget_3sat_skeleton,
    search_wiring,
    verify_forcing_property,
    witness_orientation_from_assignment,
)
from .partition import (
    GadgetKind,
    OddSum,
    PartitionInput,
    Polarity,
    UnsupportedCombination,
    eqx_epsilon,
    gadget_partition,
    parse_partition,
    partition_solvable,
    partition_solution,
)
from .sat import (
    VALIDATION_FORMULA,
    AssignmentDoesNotSatisfy,
    BadArity,
    DuplicateLiteralInClause,
    Formula2P2N,
    FormulaError,
    OccurrenceCountViolation,
    parse_2p2n3sat,
    validate_formula,
)
from .verify import ReductionReport, supported_polarities, verify_reduction_small
from .wirings import PROP_WIRING, PROPX_WIRING, default_wiring

__all__ = [
    "AssignmentDoesNotSatisfy", "BadArity", "ClauseWiring", "DuplicateLiteralInClause",
    "ForcingPropertyUnverified", "Formula2P2N", "FormulaError", "GadgetKind", "OccurrenceCountViolation",
    "OddSum", "PROPX_WIRING", "PROP_WIRING", "PartitionInput", "Polarity", "ReductionReport",
    "UnsupportedCombination", "VALIDATION_FORMULA", "WiringCountMismatch", "clause_fragment",
    "default_wiring", "eqx_epsilon", "find_intended_orientation", "gadget_3sat_skeleton",
    "gadget_partition", "parse_2p2n3sat", "parse_partition", "partition_solution",
    "partition_solvable", "search_wiring", "supported_polarities", "validate_formula",
    "verify_forcing_property", "verify_reduction_small", "witness_orientation_from_assignment",
]
