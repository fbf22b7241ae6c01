"""Exhaustive, classification-free enumeration of CYBE solutions.

This module must not import the closed-form predicates: its only notion of
"solution" is a vanishing residual.

Over a finite field of characteristic p and degree d, the residual is a
quadratic map GF(p)^(9d) -> GF(p)^(27d) in the coordinates of the
coefficients. :class:`ResidualKernel` recovers that map's coefficient matrix
by polarizing :func:`~cybe.tensors.cybe_residual` on unit inputs, after which
whole batches of tensors are checked with one integer matrix product.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product, repeat
from typing import Iterator, Sequence

import numpy as np

from ..errors import BudgetExceededError, UnsupportedEnumerationError
from ..fields import Field, Scalar
from ..lie import CanonicalParams, LieAlgebra, canonical_algebra
from ..tensors import Tensor2, cybe_residual

DEFAULT_BUDGET = 10**7
CHUNK = 1 << 16


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("CYBE_BUDGET")
    return int(raw) if raw else default


def _require_finite(field: Field):
    if not field.is_finite:
        raise UnsupportedEnumerationError(f"cannot enumerate over {field}")


def valid_tuples(field: Field) -> list[CanonicalParams]:
    """Every ``(alpha, beta, gamma, delta)`` with nonzero determinant, row-major."""
    _require_finite(field)
    els = list(field.elements())
    out = []
    for a, b, g, d in product(els, repeat=4):
        if a * d - b * g:
            out.append(CanonicalParams(a, b, g, d))
    return out


class ElementTable:
    """Index <-> element bookkeeping for a finite field."""

    def __init__(self, field: Field):
        _require_finite(field)
        self.field = field
        self.elements: list[Scalar] = list(field.elements())
        self.q = len(self.elements)
        self.coords = np.array([e.coordinates() for e in self.elements], dtype=np.int64)
        self.neg = np.array([(-e).index() for e in self.elements], dtype=np.int64)

    def tensor(self, row: Sequence[int]) -> Tensor2:
        el = self.elements
        n = int(round(len(row) ** 0.5))
        return Tensor2(self.field, tuple(tuple(el[row[i * n + j]] for j in range(n))
                                         for i in range(n)))

    def indices(self, r: Tensor2) -> list[int]:
        return [k.index() for row in r.K for k in row]


class ResidualKernel:
    """Batched residual test for one algebra over a finite field."""

    def __init__(self, algebra: LieAlgebra):
        field = algebra.field
        _require_finite(field)
        self.algebra = algebra
        self.table = ElementTable(field)
        self.p = field.characteristic
        if self.p >= 1 << 15:
            raise UnsupportedEnumerationError("batched residuals need a characteristic below 2**15")
        n, deg = algebra.dim, field.degree
        self.n, self.deg = n, deg
        nvar = n * n * deg
        # unit coefficient for each coordinate: 1, or the adjoined root t
        units = [field.one] + ([field.theta] if deg == 2 else [])

        def image(assign: dict[int, Scalar]) -> np.ndarray:
            rows = [[field.zero] * n for _ in range(n)]
            for var, val in assign.items():
                e, _ = divmod(var, deg)
                rows[e // n][e % n] = rows[e // n][e % n] + val
            res = cybe_residual(algebra, Tensor2(field, tuple(tuple(r) for r in rows)))
            return np.array([c for _, v in res.components() for c in v.coordinates()],
                            dtype=np.int64)

        unit = [units[v % deg] for v in range(nvar)]
        diag = [image({v: unit[v]}) for v in range(nvar)]
        mono_i, mono_j, coeffs = [], [], []
        for i in range(nvar):
            for j in range(i, nvar):
                if i == j:
                    c = diag[i]
                else:
                    # F(x_i + x_j) - F(x_i) - F(x_j) is the x_i x_j coefficient
                    c = image({i: unit[i], j: unit[j]}) - diag[i] - diag[j]
                c = c % self.p
                if c.any():
                    mono_i.append(i)
                    mono_j.append(j)
                    coeffs.append(c)
        self.mono_i = np.array(mono_i, dtype=np.intp)
        self.mono_j = np.array(mono_j, dtype=np.intp)
        out_dim = n**3 * deg
        self.coeffs = (np.array(coeffs, dtype=np.int64) if coeffs
                       else np.zeros((0, out_dim), dtype=np.int64))
        # every partial sum is below len(coeffs) * p**3; float64 is exact under 2**53
        self._float = len(coeffs) * self.p**3 < 2**53
        self._fcoeffs = self.coeffs.astype(np.float64)

    def residual_coordinates(self, indices: np.ndarray) -> np.ndarray:
        """Residual coordinates (mod p) for rows of element indices."""
        x = self.table.coords[indices].reshape(len(indices), -1)
        mono = x[:, self.mono_i] * x[:, self.mono_j]
        if self._float:
            return (mono.astype(np.float64) @ self._fcoeffs).astype(np.int64) % self.p
        return (mono @ self.coeffs) % self.p

    def solutions(self, indices: np.ndarray) -> np.ndarray:
        """Boolean mask: which rows have a vanishing residual."""
        if len(self.coeffs) == 0:
            return np.ones(len(indices), dtype=bool)
        return ~self.residual_coordinates(indices).any(axis=1)


def index_block(q: int, ndigits: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the row-major enumeration of ``q**ndigits`` tuples."""
    flat = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(flat), ndigits), dtype=np.int64)
    for k in range(ndigits - 1, -1, -1):
        flat, out[:, k] = np.divmod(flat, q)
    return out


def admissible_indices(table: ElementTable) -> np.ndarray:
    """``p(e1e2 - e2e1) + s(e1e3 - e3e1) + u(e2e3 - e3e2)`` for all ``(p, s, u)``."""
    psu = index_block(table.q, 3, 0, table.q**3)
    p, s, u = psu.T
    z = np.zeros_like(p)
    neg = table.neg
    return np.stack([z, p, s, neg[p], z, u, neg[s], neg[u], z], axis=1)


@dataclass(frozen=True)
class EnumerationJob:
    """What to enumerate.

    ``params`` is one tuple, an explicit sequence, or ``None`` for every valid
    tuple; ``sample`` then draws that many of them with ``seed``. ``shape`` is
    ``"all"`` (every tensor) or ``"admissible"`` (the image of ``1 - tau``);
    ``tensors`` restricts to an explicit list instead.
    """

    field: Field
    params: CanonicalParams | Sequence[CanonicalParams] | None = None
    shape: str = "all"
    tensors: tuple[Tensor2, ...] | None = None
    sample: int | None = None
    seed: int = 0
    budget: int | None = None

    def parameter_tuples(self) -> list[CanonicalParams]:
        if isinstance(self.params, CanonicalParams):
            tuples = [self.params]
        elif self.params is None:
            tuples = valid_tuples(self.field)
        else:
            tuples = list(self.params)
        if self.sample is not None and self.sample < len(tuples):
            rng = random.Random(self.seed)
            chosen = set(rng.sample(range(len(tuples)), self.sample))
            tuples = [t for i, t in enumerate(tuples) if i in chosen]
        return tuples

    def tensors_per_tuple(self) -> int:
        q = self.field.order
        if self.tensors is not None:
            return len(self.tensors)
        if self.shape == "admissible":
            return q**3
        if self.shape == "all":
            return q**9
        raise ValueError(f"unknown shape {self.shape!r}")

    def check_budget(self) -> int:
        _require_finite(self.field)
        count = self.tensors_per_tuple()
        budget = self.budget if self.budget is not None else budget_from_env()
        if count > budget:
            raise BudgetExceededError(count, budget)
        return count

    def blocks(self, table: ElementTable, chunk: int = CHUNK) -> Iterator[np.ndarray]:
        """Index arrays covering the job's tensors, in enumeration order."""
        if self.tensors is not None:
            yield np.array([table.indices(r) for r in self.tensors], dtype=np.int64).reshape(-1, 9)
        elif self.shape == "admissible":
            yield admissible_indices(table)
        else:
            total = table.q**9
            for start in range(0, total, chunk):
                yield index_block(table.q, 9, start, min(start + chunk, total))


def _scan(kernel: ResidualKernel, block: np.ndarray) -> np.ndarray:
    return block[kernel.solutions(block)]


def solution_indices(job: EnumerationJob, params: CanonicalParams, workers: int = 1) -> np.ndarray:
    """Index rows of every solution for one parameter tuple, in enumeration order."""
    job.check_budget()
    kernel = ResidualKernel(canonical_algebra(params))
    blocks = job.blocks(kernel.table)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_scan, repeat(kernel), blocks))
    else:
        parts = [_scan(kernel, b) for b in blocks]
    parts = [p for p in parts if len(p)]
    return np.concatenate(parts) if parts else np.zeros((0, 9), dtype=np.int64)


def enumerate_solutions(job: EnumerationJob, params: CanonicalParams | None = None,
                        workers: int = 1) -> set[Tensor2]:
    """Exactly the tensors of the job with zero residual (single parameter tuple)."""
    if params is None:
        tuples = job.parameter_tuples()
        if len(tuples) != 1:
            raise ValueError("enumerate_solutions needs exactly one parameter tuple")
        params = tuples[0]
    table = ElementTable(job.field)
    return {table.tensor(row) for row in solution_indices(job, params, workers)}
