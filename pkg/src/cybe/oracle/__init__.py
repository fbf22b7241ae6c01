"""Predicate-free enumeration and equivalence reports."""

from .enumerate import (
    DEFAULT_BUDGET,
    ElementTable,
    EnumerationJob,
    ResidualKernel,
    enumerate_solutions,
    solution_indices,
    valid_tuples,
)
from .equivalence import (
    PREDICATE_ALIASES,
    PREDICATES,
    EquivalenceReport,
    Witness,
    equivalence_report,
    resolve_predicate,
    strongly_symmetric_gate,
)
