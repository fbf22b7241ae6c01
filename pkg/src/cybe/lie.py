"""Lie algebras given by structure constants, and the canonical family.

The family studied here is three dimensional with two dimensional derived
algebra. In a suitable basis it reads::

    [e1, e2] = 0
    [e1, e3] = alpha*e1 + beta*e2
    [e2, e3] = gamma*e1 + delta*e2        with alpha*delta - beta*gamma != 0

and ``ad e3`` restricted to the derived algebra has the matrix
``A = [[alpha, gamma], [beta, delta]]`` (columns are images).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import linalg
from .errors import (
    AntisymmetryError,
    FieldMismatchError,
    InconsistencyError,
    JacobiError,
    LieAlgebraError,
    NotInFamilyError,
    SingularParametersError,
)
from .fields import Field, Scalar, roots_in_field, solve_quadratic


@dataclass(frozen=True)
class LieAlgebra:
    """``structure[i][j][m]`` is the coefficient of ``e_m`` in ``[e_i, e_j]``.

    Build instances through :func:`make_algebra` (validating) rather than
    directly.
    """

    field: Field
    dim: int
    structure: tuple
    _nonzero: tuple = dc_field(default=(), compare=False, repr=False)

    def __post_init__(self):
        nz = tuple(
            tuple(
                tuple((m, c) for m, c in enumerate(self.structure[i][j]) if c)
                for j in range(self.dim)
            )
            for i in range(self.dim)
        )
        object.__setattr__(self, "_nonzero", nz)

    def bracket_terms(self, i: int, j: int) -> tuple[tuple[int, Scalar], ...]:
        """Nonzero ``(m, c)`` pairs of ``[e_i, e_j]``."""
        return self._nonzero[i][j]

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> tuple[Scalar, ...]:
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                w = xi * yj
                for m, c in self._nonzero[i][j]:
                    out[m] = out[m] + w * c
        return tuple(out)

    def change_basis(self, q: linalg.Matrix) -> LieAlgebra:
        """Structure constants in the basis ``e'_j = sum_i q[i][j] e_i``."""
        n = self.dim
        q_inv = linalg.inverse(q)
        cols = linalg.transpose(q)
        new = []
        for a in range(n):
            row = []
            for b in range(n):
                row.append(linalg.matvec(q_inv, self.bracket(cols[a], cols[b])))
            new.append(tuple(row))
        return LieAlgebra(q[0][0].field, n, tuple(new))

    def lift(self, ext: Field) -> LieAlgebra:
        if ext == self.field:
            return self
        s = tuple(tuple(tuple(ext(c) for c in v) for v in row) for row in self.structure)
        return LieAlgebra(ext, self.dim, s)


def make_algebra(field: Field, structure, check: bool = True) -> LieAlgebra:
    """Validate a full ``n x n x n`` tableau and wrap it.

    Raises :class:`AntisymmetryError` or :class:`JacobiError` carrying the
    offending (0-based) index tuple.
    """
    n = len(structure)
    try:
        s = tuple(tuple(tuple(field(c) for c in structure[i][j]) for j in range(n)) for i in range(n))
    except (IndexError, TypeError) as exc:
        raise LieAlgebraError(f"tableau is not {n}x{n}x{n}: {exc}") from exc
    if any(len(row) != n or any(len(v) != n for v in row) for row in s):
        raise LieAlgebraError(f"tableau is not {n}x{n}x{n}")
    if check:
        _check_antisymmetry(s, n)
        _check_jacobi(s, n)
    return LieAlgebra(field, n, s)


def _check_antisymmetry(s, n):
    for i in range(n):
        for j in range(i, n):
            for m in range(n):
                if s[i][j][m] + s[j][i][m]:
                    raise AntisymmetryError(
                        f"[e{i + 1},e{j + 1}] != -[e{j + 1},e{i + 1}] in the e{m + 1} component",
                        (i, j, m),
                    )


def jacobi_defect(s, n):
    """First ``(i, j, l, s)`` where the Jacobi sum is nonzero, or ``None``."""
    for i in range(n):
        for j in range(n):
            for l in range(n):
                for t in range(n):
                    acc = s[0][0][0].field.zero
                    for m in range(n):
                        acc = (acc + s[i][j][m] * s[m][l][t] + s[j][l][m] * s[m][i][t]
                               + s[l][i][m] * s[m][j][t])
                    if acc:
                        return (i, j, l, t)
    return None


def _check_jacobi(s, n):
    bad = jacobi_defect(s, n)
    if bad is not None:
        i, j, l, t = bad
        raise JacobiError(
            f"Jacobi identity fails for (e{i + 1}, e{j + 1}, e{l + 1}) in the e{t + 1} component",
            bad,
        )


@dataclass(frozen=True)
class CanonicalParams:
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    delta: Scalar

    def __post_init__(self):
        f = self.alpha.field
        if any(x.field != f for x in (self.beta, self.gamma, self.delta)):
            raise FieldMismatchError("canonical parameters from different fields")
        if not self.det:
            raise SingularParametersError(
                f"alpha*delta - beta*gamma = 0 for ({self}); the family needs it nonzero"
            )

    @classmethod
    def of(cls, field: Field, alpha, beta, gamma, delta) -> CanonicalParams:
        return cls(field(alpha), field(beta), field(gamma), field(delta))

    @property
    def field(self) -> Field:
        return self.alpha.field

    @property
    def det(self) -> Scalar:
        return self.alpha * self.delta - self.beta * self.gamma

    @property
    def trace(self) -> Scalar:
        return self.alpha + self.delta

    @property
    def matrix(self) -> linalg.Matrix:
        """``A = [[alpha, gamma], [beta, delta]]``."""
        return ((self.alpha, self.gamma), (self.beta, self.delta))

    def as_tuple(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def lift(self, ext: Field) -> CanonicalParams:
        return CanonicalParams(*(ext(x) for x in self.as_tuple()))

    def is_scalar_matrix(self) -> bool:
        return not self.beta and not self.gamma and self.alpha == self.delta

    def __str__(self):
        return ",".join(str(x) for x in self.as_tuple())


def canonical_algebra(params: CanonicalParams) -> LieAlgebra:
    f = params.field
    z = f.zero
    a, b, g, d = params.as_tuple()
    s = [[[z, z, z] for _ in range(3)] for _ in range(3)]
    s[0][2] = [a, b, z]
    s[2][0] = [-a, -b, z]
    s[1][2] = [g, d, z]
    s[2][1] = [-g, -d, z]
    return make_algebra(f, s)


def derived_dimension(algebra: LieAlgebra) -> int:
    n = algebra.dim
    return linalg.rank([algebra.structure[i][j] for i in range(n) for j in range(i + 1, n)])


def recognize_canonical_form(algebra: LieAlgebra) -> tuple[linalg.Matrix, CanonicalParams]:
    """Find a basis ``(f1, f2, f3)`` putting the algebra into canonical form.

    ``f1, f2`` is the reduced echelon basis of the derived algebra and ``f3``
    the first standard basis vector outside it. Returns the matrix whose
    columns are ``f1, f2, f3`` and the parameters read off in that basis.
    """
    if algebra.dim != 3:
        raise NotInFamilyError(f"dimension is {algebra.dim}, not 3")
    f = algebra.field
    n = algebra.dim
    rows = [algebra.structure[i][j] for i in range(n) for j in range(i + 1, n)]
    echelon, pivots = linalg.rref(rows)
    if len(pivots) != 2:
        raise NotInFamilyError(f"derived algebra has dimension {len(pivots)}, not 2")
    f1, f2 = echelon
    complement = next(k for k in range(n) if k not in pivots)
    f3 = [f.one if i == complement else f.zero for i in range(n)]
    basis = linalg.transpose((tuple(f1), tuple(f2), tuple(f3)))
    moved = algebra.change_basis(basis)
    s = moved.structure
    if any(s[0][1]):
        raise InconsistencyError("[f1, f2] != 0: derived algebra is not abelian")
    if s[0][2][2] or s[1][2][2]:
        raise InconsistencyError("brackets leave the derived algebra")
    params = CanonicalParams(s[0][2][0], s[0][2][1], s[1][2][0], s[1][2][1])
    return basis, params


class EigenCase(str, enum.Enum):
    DISTINCT_DIAGONAL = "DistinctDiagonal"
    REPEATED_DIAGONAL = "RepeatedDiagonal"
    JORDAN = "Jordan"
    IRREDUCIBLE_QUADRATIC = "IrreducibleQuadratic"


def similarity_case(params: CanonicalParams) -> EigenCase:
    """Similarity class of ``A`` over the algebraic closure."""
    if params.is_scalar_matrix():
        return EigenCase.REPEATED_DIAGONAL
    roots = roots_in_field(params.field, -params.trace, params.det)
    if not roots:
        return EigenCase.IRREDUCIBLE_QUADRATIC
    l1, l2 = roots
    return EigenCase.JORDAN if l1 == l2 else EigenCase.DISTINCT_DIAGONAL


@dataclass(frozen=True)
class EigenForm:
    params: CanonicalParams
    case: EigenCase
    field: Field
    lambda1: Scalar
    lambda2: Scalar
    D: linalg.Matrix
    Q: linalg.Matrix
    Q_inv: linalg.Matrix
    beta_prime: Scalar
    delta_prime: Scalar
    lifted: LieAlgebra
    normalized: LieAlgebra

    @property
    def normalized_params(self) -> CanonicalParams:
        f = self.field
        return CanonicalParams(f.one, self.beta_prime, f.zero, self.delta_prime)

    def to_dict(self) -> dict:
        mat = lambda m: [[str(c) for c in row] for row in m]  # noqa: E731
        return {
            "case": self.case.value,
            "field": str(self.field),
            "lambda1": str(self.lambda1),
            "lambda2": str(self.lambda2),
            "D": mat(self.D),
            "Q": mat(self.Q),
            "beta_prime": str(self.beta_prime),
            "delta_prime": str(self.delta_prime),
        }


def _eigenvector(m: linalg.Matrix) -> tuple[Scalar, Scalar]:
    # kernel of a rank-one 2x2 matrix, first nonzero coordinate scaled to 1
    row = m[0] if (m[0][0] or m[0][1]) else m[1]
    v = (-row[1], row[0])
    lead = v[0] if v[0] else v[1]
    return (v[0] / lead, v[1] / lead)


def eigen_normalize(params: CanonicalParams) -> EigenForm:
    """Diagonal or Jordan normalization of ``A`` and the induced basis change.

    ``D`` satisfies ``A D = D J`` with ``J = diag(l1, l2)`` or
    ``[[l1, 0], [1, l1]]``; ``Q = blockdiag(D, 1/l1)``. In the new basis
    ``[e1', e3'] = e1' + beta' e2'`` and ``[e2', e3'] = delta' e2'`` with
    ``beta' = 0, delta' = l2/l1`` (diagonalizable) or ``beta' = 1/l1,
    delta' = 1`` (Jordan). Both relations are re-checked on the tableau.
    """
    case = similarity_case(params)
    base = params.field
    if case is EigenCase.REPEATED_DIAGONAL:
        f, l1, l2 = base, params.alpha, params.alpha
    else:
        roots = solve_quadratic(-params.trace, params.det)
        f = roots.extension or base
        l1, l2 = roots.roots
    a = linalg.lift(f, params.matrix)
    one, zero = f.one, f.zero

    def shifted(lam):
        return ((a[0][0] - lam, a[0][1]), (a[1][0], a[1][1] - lam))

    if case is EigenCase.REPEATED_DIAGONAL:
        d = linalg.identity(f, 2)
        jordan = ((l1, zero), (zero, l1))
    elif case is EigenCase.JORDAN:
        n = shifted(l1)
        k = 0 if (n[0][0] or n[1][0]) else 1
        col = (n[0][k], n[1][k])
        lead = col[0] if col[0] else col[1]
        d1 = [zero, zero]
        d1[k] = one / lead
        d2 = (col[0] / lead, col[1] / lead)
        d = ((d1[0], d2[0]), (d1[1], d2[1]))
        jordan = ((l1, zero), (one, l1))
    else:
        v1, v2 = _eigenvector(shifted(l1)), _eigenvector(shifted(l2))
        d = ((v1[0], v2[0]), (v1[1], v2[1]))
        jordan = ((l1, zero), (zero, l2))

    if linalg.matmul(a, d) != linalg.matmul(d, jordan):
        raise InconsistencyError("A D != D J")
    if case is EigenCase.JORDAN:
        beta_p, delta_p = one / l1, one
    else:
        beta_p, delta_p = zero, l2 / l1

    q = (
        (d[0][0], d[0][1], zero),
        (d[1][0], d[1][1], zero),
        (zero, zero, one / l1),
    )
    lifted = canonical_algebra(params).lift(f)
    normalized = lifted.change_basis(q)
    expected = canonical_algebra(CanonicalParams(one, beta_p, zero, delta_p))
    if normalized != expected:
        raise InconsistencyError("normalized tableau does not have the canonical shape")
    return EigenForm(params, case, f, l1, l2, d, q, linalg.inverse(q), beta_p, delta_p,
                     lifted, normalized)
