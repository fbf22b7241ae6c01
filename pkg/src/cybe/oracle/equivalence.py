"""Tensor-by-tensor comparison of closed-form predicates with the oracle.

The oracle side only ever evaluates residuals (through
:mod:`cybe.oracle.enumerate`) or the raw bialgebra axioms; the predicate side
is whichever closed form is under test.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from ..bialgebra import check_axioms, is_coboundary, triangular_condition
from ..classify import classify_char2, classify_char_ne2, in_top_family, support_mask
from ..errors import WrongCharacteristicError
from ..fields import Field
from ..lie import CanonicalParams, canonical_algebra
from ..tensors import Tensor2, is_strongly_symmetric
from .enumerate import (
    ElementTable,
    EnumerationJob,
    ResidualKernel,
    index_block,
    solution_indices,
)

MAX_WITNESSES = 100


@dataclass(frozen=True)
class PredicateSpec:
    name: str
    kind: str  # "cybe" or "bialgebra"
    characteristic: str  # "ne2" or "2" or "any"
    decide: Callable[[CanonicalParams, Tensor2], bool]


PREDICATES = {
    "cybe-char-ne2": PredicateSpec("cybe-char-ne2", "cybe", "ne2",
                                   lambda prm, r: classify_char_ne2(prm, r).is_solution),
    "cybe-char2": PredicateSpec("cybe-char2", "cybe", "2",
                                lambda prm, r: classify_char2(prm, r).is_solution),
    "coboundary": PredicateSpec("coboundary", "bialgebra", "any", is_coboundary),
    "triangular": PredicateSpec("triangular", "bialgebra", "any", triangular_condition),
}
# identifiers used by the command line and in report files
PREDICATE_ALIASES = {
    "thm2.1": "cybe-char-ne2",
    "thm3.1": "cybe-char2",
    "thm4.1-i": "coboundary",
    "thm4.1-iii": "triangular",
}


def resolve_predicate(name: str) -> PredicateSpec:
    key = name.strip().lower()
    key = PREDICATE_ALIASES.get(key, key)
    try:
        return PREDICATES[key]
    except KeyError:
        known = sorted(PREDICATES) + sorted(PREDICATE_ALIASES)
        raise KeyError(f"unknown predicate {name!r}; known: {', '.join(known)}") from None


def _check_characteristic(pred: PredicateSpec, field: Field):
    char = field.characteristic
    if pred.characteristic == "ne2" and char == 2:
        raise WrongCharacteristicError("not 2", char)
    if pred.characteristic == "2" and char != 2:
        raise WrongCharacteristicError(2, char)


@dataclass(frozen=True)
class Witness:
    params: CanonicalParams
    tensor: Tensor2
    oracle: bool
    predicate: bool

    def to_dict(self) -> dict:
        return {
            "params": [str(x) for x in self.params.as_tuple()],
            "tensor": [[str(x) for x in row] for row in self.tensor.K],
            "oracle": self.oracle,
            "predicate": self.predicate,
        }


@dataclass
class TupleCounts:
    params: CanonicalParams
    oracle: int
    predicate: int


@dataclass
class EquivalenceReport:
    field: Field
    predicate: str
    tuples: int = 0
    tensors_per_tuple: int = 0
    oracle_solutions: int = 0
    predicate_solutions: int = 0
    mismatch_count: int = 0
    mismatches: list[Witness] = dc_field(default_factory=list)
    per_tuple: list[TupleCounts] = dc_field(default_factory=list)

    @property
    def total(self) -> int:
        return self.tuples * self.tensors_per_tuple

    @property
    def ok(self) -> bool:
        return self.mismatch_count == 0

    def add(self, witness: Witness):
        self.mismatch_count += 1
        if len(self.mismatches) < MAX_WITNESSES:
            self.mismatches.append(witness)

    def to_dict(self) -> dict:
        return {
            "field": str(self.field),
            "predicate_name": self.predicate,
            "tuples": self.tuples,
            "tensors_per_tuple": self.tensors_per_tuple,
            "total": self.total,
            "oracle": self.oracle_solutions,
            "predicate": self.predicate_solutions,
            "mismatch_count": self.mismatch_count,
            "mismatches": [w.to_dict() for w in self.mismatches],
            "per_tuple": [
                {"params": str(t.params), "oracle": t.oracle, "predicate": t.predicate}
                for t in self.per_tuple
            ],
        }


def _cybe_tuple(job, params, pred, table, exhaustive, workers, report):
    oracle = {tuple(row) for row in solution_indices(job, params, workers).tolist()}
    predicted = set()
    for block in job.blocks(table):
        rows = block if exhaustive else block[support_mask(job.field, block, table.neg)]
        for row in rows.tolist():
            if pred.decide(params, table.tensor(row)):
                predicted.add(tuple(row))
    for row in sorted(oracle ^ predicted):
        report.add(Witness(params, table.tensor(row), row in oracle, row in predicted))
    return len(oracle), len(predicted)


def _bialgebra_tuple(job, params, pred, table, report):
    algebra = canonical_algebra(params)
    n_oracle = n_pred = 0
    for block in job.blocks(table):
        for row in block.tolist():
            r = table.tensor(row)
            axioms = check_axioms(algebra, r)
            truth = axioms.bialgebra and (axioms.cybe or pred.name == "coboundary")
            claim = pred.decide(params, r)
            n_oracle += truth
            n_pred += claim
            if truth != claim:
                report.add(Witness(params, r, truth, claim))
    return n_oracle, n_pred


def equivalence_report(job: EnumerationJob, predicate: str, exhaustive: bool = False,
                       workers: int = 1) -> EquivalenceReport:
    """Compare ``predicate`` with the oracle on every tensor of ``job``.

    Residual-type predicates are evaluated on every tensor when
    ``exhaustive`` is set, otherwise only inside
    :func:`~cybe.classify.support_mask` (outside it they return ``False`` by
    construction). Bialgebra predicates always run on the image of
    ``1 - tau``.
    """
    pred = resolve_predicate(predicate)
    _check_characteristic(pred, job.field)
    if pred.kind == "bialgebra" and job.tensors is None and job.shape != "admissible":
        job = EnumerationJob(job.field, job.params, "admissible", None, job.sample, job.seed,
                             job.budget)
    per_tuple = job.check_budget()
    table = ElementTable(job.field)
    report = EquivalenceReport(job.field, pred.name, tensors_per_tuple=per_tuple)
    for params in job.parameter_tuples():
        if pred.kind == "cybe":
            n_o, n_p = _cybe_tuple(job, params, pred, table, exhaustive, workers, report)
        else:
            n_o, n_p = _bialgebra_tuple(job, params, pred, table, report)
        report.tuples += 1
        report.oracle_solutions += n_o
        report.predicate_solutions += n_p
        report.per_tuple.append(TupleCounts(params, n_o, n_p))
    return report


def strongly_symmetric_gate(field: Field, params: CanonicalParams) -> list[tuple[str, Tensor2]]:
    """Cross-check the rank-one definition of "strongly symmetric" with the oracle.

    Returns witnesses of two kinds: oracle solutions that are neither in the
    antisymmetric-top family nor strongly symmetric, and strongly symmetric
    tensors the oracle rejects. Empty means the definition is consistent.
    """
    job = EnumerationJob(field, params)
    table = ElementTable(field)
    found = []
    for row in solution_indices(job, params).tolist():
        r = table.tensor(row)
        if not in_top_family(params, r) and not is_strongly_symmetric(r):
            found.append(("unexplained oracle solution", r))
    kernel = ResidualKernel(canonical_algebra(params))
    upper = index_block(table.q, 6, 0, table.q**6)
    x, p, s, y, u, z = upper.T
    sym = np.stack([x, p, s, p, y, u, s, u, z], axis=1)
    ok = kernel.solutions(sym)
    for row, good in zip(sym.tolist(), ok.tolist()):
        if not good:
            r = table.tensor(row)
            if is_strongly_symmetric(r):
                found.append(("strongly symmetric non-solution", r))
    return found


__all__ = [
    "EquivalenceReport", "PREDICATES", "PREDICATE_ALIASES", "PredicateSpec", "Witness",
    "equivalence_report", "resolve_predicate", "strongly_symmetric_gate",
]
