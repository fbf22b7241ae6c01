"""Elements of L(x)L and L(x)L(x)L, and the classical Yang-Baxter residual.

For ``r = sum k_ab e_a (x) e_b`` the residual is

    CYB(r) = [r12, r13] + [r12, r23] + [r13, r23]

with

    [r12, r13] = sum k_ab k_cd [e_a, e_c] (x) e_b (x) e_d
    [r12, r23] = sum k_ab k_cd e_a (x) [e_b, e_c] (x) e_d
    [r13, r23] = sum k_ab k_cd e_a (x) e_c (x) [e_b, e_d]

Coefficients may be scalars or :class:`~cybe.poly.Poly` objects; the engine
only uses ring operations, which is how the condition system is generated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import linalg
from .errors import FieldMismatchError, SingularParametersError
from .fields import Field
from .lie import CanonicalParams, LieAlgebra, canonical_algebra
from .poly import Poly, PolyRing

# k_ij aliases for n = 3
ALIASES: dict[str, tuple[int, int]] = {
    "x": (0, 0), "y": (1, 1), "z": (2, 2),
    "p": (0, 1), "q": (1, 0),
    "s": (0, 2), "t": (2, 0),
    "u": (1, 2), "v": (2, 1),
}
ALIAS_ORDER = ("x", "y", "z", "p", "q", "s", "t", "u", "v")


@dataclass(frozen=True)
class Tensor2:
    """``r = sum_ij K[i][j] e_i (x) e_j``."""

    ring: object
    K: tuple

    @property
    def dim(self) -> int:
        return len(self.K)

    @classmethod
    def zeros(cls, ring, n: int = 3) -> Tensor2:
        return cls(ring, tuple((ring.zero,) * n for _ in range(n)))

    @classmethod
    def from_rows(cls, ring, rows: Sequence[Sequence]) -> Tensor2:
        conv = ring if isinstance(ring, Field) else ring.const
        return cls(ring, tuple(tuple(x if isinstance(x, Poly) else conv(x) for x in row)
                               for row in rows))

    @classmethod
    def from_aliases(cls, ring, **values) -> Tensor2:
        unknown = set(values) - set(ALIASES)
        if unknown:
            raise KeyError(f"unknown coefficient names: {sorted(unknown)}")
        rows = [[ring.zero] * 3 for _ in range(3)]
        for name, val in values.items():
            i, j = ALIASES[name]
            rows[i][j] = val
        return cls.from_rows(ring, rows)

    def aliases(self) -> dict:
        return {n: self.K[i][j] for n, (i, j) in ALIASES.items()}

    def __getitem__(self, ij):
        return self.K[ij[0]][ij[1]]

    def transpose(self) -> Tensor2:
        return Tensor2(self.ring, tuple(zip(*self.K)))

    def __add__(self, other: Tensor2) -> Tensor2:
        return Tensor2(self.ring, tuple(tuple(a + b for a, b in zip(r1, r2))
                                        for r1, r2 in zip(self.K, other.K)))

    def __sub__(self, other: Tensor2) -> Tensor2:
        return self + (-other)

    def __neg__(self) -> Tensor2:
        return Tensor2(self.ring, tuple(tuple(-a for a in row) for row in self.K))

    def scale(self, c) -> Tensor2:
        return Tensor2(self.ring, tuple(tuple(c * a for a in row) for row in self.K))

    def nonzero(self):
        return [(i, j, k) for i, row in enumerate(self.K) for j, k in enumerate(row) if k]

    def is_zero(self) -> bool:
        return not any(k for row in self.K for k in row)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.K) + "]"


@dataclass(frozen=True)
class Tensor3:
    """``sum T[i][j][m] e_i (x) e_j (x) e_m``."""

    ring: object
    T: tuple

    @property
    def dim(self) -> int:
        return len(self.T)

    def __getitem__(self, ijm):
        i, j, m = ijm
        return self.T[i][j][m]

    def __add__(self, other: Tensor3) -> Tensor3:
        return Tensor3(self.ring, tuple(
            tuple(tuple(a + b for a, b in zip(c1, c2)) for c1, c2 in zip(r1, r2))
            for r1, r2 in zip(self.T, other.T)))

    def components(self):
        """``((i, j, m), value)`` in row-major slot order."""
        n = self.dim
        return [((i, j, m), self.T[i][j][m]) for i in range(n) for j in range(n) for m in range(n)]

    def nonzero(self):
        return [(slot, v) for slot, v in self.components() if v]

    def is_zero(self) -> bool:
        return not any(v for _, v in self.components())


def _freeze3(acc) -> tuple:
    return tuple(tuple(tuple(v) for v in row) for row in acc)


def _check_compatible(algebra: LieAlgebra, r: Tensor2):
    if r.dim != algebra.dim:
        raise ValueError(f"tensor is {r.dim}x{r.dim} but the algebra has dimension {algebra.dim}")
    field = r.ring.field if isinstance(r.ring, PolyRing) else r.ring
    if field != algebra.field:
        raise FieldMismatchError(f"tensor over {field}, algebra over {algebra.field}")


def cybe_terms(algebra: LieAlgebra, r: Tensor2) -> tuple[Tensor3, Tensor3, Tensor3]:
    """The three brackets ``[r12,r13]``, ``[r12,r23]``, ``[r13,r23]`` separately."""
    _check_compatible(algebra, r)
    n = algebra.dim
    zero = r.ring.zero
    t12_13 = [[[zero] * n for _ in range(n)] for _ in range(n)]
    t12_23 = [[[zero] * n for _ in range(n)] for _ in range(n)]
    t13_23 = [[[zero] * n for _ in range(n)] for _ in range(n)]
    br = algebra.bracket_terms
    entries = r.nonzero()
    for a, b, kab in entries:
        for c, d, kcd in entries:
            kk = kab * kcd
            for m, cst in br(a, c):
                t12_13[m][b][d] = t12_13[m][b][d] + kk * cst
            for m, cst in br(b, c):
                t12_23[a][m][d] = t12_23[a][m][d] + kk * cst
            for m, cst in br(b, d):
                t13_23[a][c][m] = t13_23[a][c][m] + kk * cst
    return (Tensor3(r.ring, _freeze3(t12_13)), Tensor3(r.ring, _freeze3(t12_23)),
            Tensor3(r.ring, _freeze3(t13_23)))


def cybe_residual(algebra: LieAlgebra, r: Tensor2) -> Tensor3:
    t1, t2, t3 = cybe_terms(algebra, r)
    return t1 + t2 + t3


def is_cybe_solution(algebra: LieAlgebra, r: Tensor2) -> bool:
    return cybe_residual(algebra, r).is_zero()


def alias_ring(field: Field) -> PolyRing:
    return PolyRing(field, ALIAS_ORDER)


@dataclass(frozen=True)
class Condition:
    """Coefficient of one ``e_i (x) e_j (x) e_m`` slot of the residual, as a polynomial."""

    slot: tuple[int, int, int]
    poly: Poly

    @property
    def label(self) -> str:
        i, j, m = self.slot
        return f"e{i + 1}e{j + 1}e{m + 1}"

    def __call__(self, r: Tensor2):
        return self.poly(**r.aliases())


def condition_system(source: CanonicalParams | LieAlgebra) -> list[Condition]:
    """All 27 residual components as polynomials in x, y, z, p, q, s, t, u, v."""
    algebra = canonical_algebra(source) if isinstance(source, CanonicalParams) else source
    if algebra.dim != 3:
        raise ValueError("condition system is defined for three dimensional algebras")
    ring = alias_ring(algebra.field)
    g = dict(zip(ALIAS_ORDER, ring.gens()))
    r = Tensor2(ring, ((g["x"], g["p"], g["s"]), (g["q"], g["y"], g["u"]), (g["t"], g["v"], g["z"])))
    return [Condition(slot, poly) for slot, poly in cybe_residual(algebra, r).components()]


# -- symmetry predicates ----------------------------------------------------


def is_symmetric(r: Tensor2) -> bool:
    return r.K == r.transpose().K


def is_antisymmetric(r: Tensor2) -> bool:
    """``K^T = -K`` with zero diagonal, i.e. ``r`` lies in the image of ``1 - tau``.

    In characteristic 2 this is "symmetric with zero diagonal".
    """
    n = r.dim
    return all(not r.K[i][i] for i in range(n)) and r.K == (-r.transpose()).K


in_image_one_minus_tau = is_antisymmetric


def is_strongly_symmetric(r: Tensor2) -> bool:
    """Symmetric with every 2x2 minor zero (symmetric of rank at most one)."""
    if not is_symmetric(r):
        return False
    K = r.K
    pairs = list(combinations(range(r.dim), 2))
    for i, j in pairs:
        for k, l in pairs:
            if K[i][k] * K[j][l] - K[i][l] * K[j][k]:
                return False
    return True


def column_symmetric(r: Tensor2, col: int = 2) -> bool:
    """``k_{i,col} == k_{col,i}`` for all i."""
    return all(r.K[i][col] == r.K[col][i] for i in range(r.dim))


def column_antisymmetric(r: Tensor2, col: int = 2) -> bool:
    return all(r.K[i][col] == -r.K[col][i] for i in range(r.dim))


# -- basis change -----------------------------------------------------------


def transform_coefficients(r: Tensor2, q_inv: linalg.Matrix) -> Tensor2:
    """Coefficients ``K' = Q^-1 K Q^-T`` of ``r`` in the basis ``e'_j = sum_i q_ij e_i``.

    Pass ``Q`` itself to go back.
    """
    f = q_inv[0][0].field
    if not linalg.det(q_inv):
        raise SingularParametersError("basis change matrix is singular")
    k = linalg.lift(f, r.K)
    return Tensor2(f, linalg.matmul(linalg.matmul(q_inv, k), linalg.transpose(q_inv)))


def transform_tensor3(t: Tensor3, q_inv: linalg.Matrix) -> Tensor3:
    f = q_inv[0][0].field
    n = t.dim
    src = [[[f(t.T[a][b][c]) for c in range(n)] for b in range(n)] for a in range(n)]
    # contract one slot at a time
    for axis in range(3):
        out = [[[f.zero] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for m in range(n):
                    v = src[i][j][m]
                    if not v:
                        continue
                    for new in range(n):
                        c = q_inv[new][(i, j, m)[axis]]
                        if c:
                            idx = [i, j, m]
                            idx[axis] = new
                            out[idx[0]][idx[1]][idx[2]] = out[idx[0]][idx[1]][idx[2]] + c * v
        src = out
    return Tensor3(f, _freeze3(src))
