"""Exact dense linear algebra on small matrices of scalars.

Matrices are tuples of row tuples. Everything is Gaussian elimination; sizes
in this package never exceed a few dozen rows.
"""

from __future__ import annotations

from typing import Sequence

from .errors import SingularParametersError
from .fields import Field, Scalar

Matrix = tuple[tuple[Scalar, ...], ...]


def matrix(field: Field, rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(field(x) for x in row) for row in rows)


def identity(field: Field, n: int) -> Matrix:
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def zeros(field: Field, n: int, m: int | None = None) -> Matrix:
    return tuple((field.zero,) * (n if m is None else m) for _ in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def matvec(a: Matrix, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    out = []
    for row in a:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def lift(field: Field, a: Matrix) -> Matrix:
    return tuple(tuple(field(x) for x in row) for row in a)


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(rref(rows)[1])


def det(a: Matrix) -> Scalar:
    n = len(a)
    m = [list(r) for r in a]
    result = m[0][0].field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return result.field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result = result * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    field = a[0][0].field
    aug = [list(row) + list(e) for row, e in zip(a, identity(field, n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise SingularParametersError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def in_span(rows: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> bool:
    return rank(list(rows) + [list(v)]) == rank(rows)
