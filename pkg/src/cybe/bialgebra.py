"""Coboundary cobrackets and the Lie bialgebra axioms.

``Delta_r(x) = (ad x (x) 1 + 1 (x) ad x)(r)``. The axioms are checked
directly from that definition; the closed forms for the canonical family are
separate functions so that one can be verified against the other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError
from .fields import Field, Scalar
from .lie import CanonicalParams, EigenCase, LieAlgebra, canonical_algebra, similarity_case
from .tensors import Tensor2, is_cybe_solution


@dataclass(frozen=True)
class Cobracket:
    algebra: LieAlgebra
    images: tuple[Tensor2, ...]

    def __call__(self, v) -> Tensor2:
        """Image of the vector with coordinates ``v``."""
        f = self.algebra.field
        n = self.algebra.dim
        out = [[f.zero] * n for _ in range(n)]
        for c, img in zip(v, self.images):
            if c:
                for a, b, k in img.nonzero():
                    out[a][b] = out[a][b] + c * k
        return Tensor2.from_rows(f, out)


def _act(algebra: LieAlgebra, i: int, K) -> list[list[Scalar]]:
    """``e_i . sum K_ab e_a (x) e_b = sum K_ab ([e_i,e_a] (x) e_b + e_a (x) [e_i,e_b])``."""
    n = algebra.dim
    f = algebra.field
    out = [[f.zero] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            k = K[a][b]
            if not k:
                continue
            for m, c in algebra.bracket_terms(i, a):
                out[m][b] = out[m][b] + k * c
            for m, c in algebra.bracket_terms(i, b):
                out[a][m] = out[a][m] + k * c
    return out


def cobracket(algebra: LieAlgebra, r: Tensor2) -> Cobracket:
    if r.dim != algebra.dim or r.ring != algebra.field:
        raise ValueError("tensor does not belong to this algebra")
    images = tuple(Tensor2.from_rows(algebra.field, _act(algebra, i, r.K))
                   for i in range(algebra.dim))
    return Cobracket(algebra, images)


@dataclass(frozen=True)
class AxiomReport:
    cocycle: bool
    co_antisymmetry: bool
    co_jacobi: bool
    cybe: bool

    @property
    def bialgebra(self) -> bool:
        return self.cocycle and self.co_antisymmetry and self.co_jacobi

    def to_dict(self) -> dict:
        return {"cocycle": self.cocycle, "co_antisymmetry": self.co_antisymmetry,
                "co_jacobi": self.co_jacobi, "cybe": self.cybe}


def _cocycle(algebra: LieAlgebra, delta: Cobracket) -> bool:
    n = algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = delta(algebra.structure[i][j]).K
            dj = _act(algebra, i, delta.images[j].K)
            di = _act(algebra, j, delta.images[i].K)
            for a in range(n):
                for b in range(n):
                    if lhs[a][b] != dj[a][b] - di[a][b]:
                        return False
    return True


def _co_jacobi(algebra: LieAlgebra, delta: Cobracket) -> bool:
    n = algebra.dim
    f = algebra.field
    for img in delta.images:
        # (Delta (x) id) Delta(e_i), then sum over cyclic permutations of slots
        t = [[[f.zero] * n for _ in range(n)] for _ in range(n)]
        for a, b, k in img.nonzero():
            for c, d, w in delta.images[a].nonzero():
                t[c][d][b] = t[c][d][b] + k * w
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if t[x][y][z] + t[y][z][x] + t[z][x][y]:
                        return False
    return True


def check_axioms(algebra: LieAlgebra, r: Tensor2) -> AxiomReport:
    delta = cobracket(algebra, r)
    co_antisym = all(img.K == (-img.transpose()).K for img in delta.images)
    return AxiomReport(
        cocycle=_cocycle(algebra, delta),
        co_antisymmetry=co_antisym,
        co_jacobi=_co_jacobi(algebra, delta),
        cybe=is_cybe_solution(algebra, r),
    )


# -- closed forms for the canonical family ----------------------------------


def coboundary_matrix(alpha, beta, gamma, delta):
    return ((beta * delta + alpha * beta, -beta * gamma - alpha * alpha),
            (delta * delta + gamma * beta, -delta * gamma - gamma * alpha))


def coboundary_form(alpha, beta, gamma, delta, s, u):
    """``(s, u) M (s, u)^T``; zero exactly when ``Delta_r`` gives a Lie bialgebra."""
    m = coboundary_matrix(alpha, beta, gamma, delta)
    return s * (m[0][0] * s + m[0][1] * u) + u * (m[1][0] * s + m[1][1] * u)


def triangular_form(alpha, beta, gamma, delta, s, u):
    return -beta * s * s + gamma * u * u + (alpha - delta) * u * s


def admissible_tensor(field: Field, p, s, u) -> Tensor2:
    """``p(e1e2 - e2e1) + s(e1e3 - e3e1) + u(e2e3 - e3e2)``."""
    p, s, u = field(p), field(s), field(u)
    z = field.zero
    return Tensor2(field, ((z, p, s), (-p, z, u), (-s, -u, z)))


def admissible_coordinates(r: Tensor2) -> tuple[Scalar, Scalar, Scalar]:
    """``(p, s, u)`` of an element of the image of ``1 - tau``; raises :class:`ShapeError`."""
    if r.dim != 3:
        raise ShapeError("expected a 3x3 coefficient matrix")
    K = r.K
    for i in range(3):
        if K[i][i]:
            raise ShapeError(f"diagonal coefficient k{i + 1}{i + 1} must vanish")
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if K[j][i] != -K[i][j]:
            raise ShapeError(f"k{j + 1}{i + 1} must equal -k{i + 1}{j + 1}")
    return K[0][1], K[0][2], K[1][2]


def is_coboundary(params: CanonicalParams, r: Tensor2) -> bool:
    _, s, u = admissible_coordinates(r)
    return not coboundary_form(*params.as_tuple(), s, u)


@dataclass(frozen=True)
class BialgebraVerdict:
    coboundary: bool
    triangular: bool
    axioms: AxiomReport
    form_value: Scalar
    triangular_value: Scalar

    def to_dict(self) -> dict:
        return {
            "coboundary": self.coboundary,
            "triangular": self.triangular,
            "axioms": self.axioms.to_dict(),
            "form_value": str(self.form_value),
            "triangular_value": str(self.triangular_value),
        }


def is_triangular(params: CanonicalParams, r: Tensor2) -> BialgebraVerdict:
    """Closed-form coboundary and triangular verdicts, plus the raw axiom report.

    In characteristic 2 with ``A`` a scalar matrix every admissible ``r`` is
    triangular; otherwise triangularity is the vanishing of
    ``-beta s^2 + gamma u^2 + (alpha - delta) u s``.
    """
    if r.ring != params.field:
        raise ValueError("tensor and parameters live in different fields")
    _, s, u = admissible_coordinates(r)
    coeffs = params.as_tuple()
    form = coboundary_form(*coeffs, s, u)
    tri = triangular_form(*coeffs, s, u)
    axioms = check_axioms(canonical_algebra(params), r)
    return BialgebraVerdict(not form, triangular_condition(params, r), axioms, form, tri)


def triangular_condition(params: CanonicalParams, r: Tensor2) -> bool:
    """The closed-form triangular verdict alone (no axiom evaluation)."""
    _, s, u = admissible_coordinates(r)
    if params.field.characteristic == 2 and similarity_case(params) is EigenCase.REPEATED_DIAGONAL:
        return True
    return not triangular_form(*params.as_tuple(), s, u)

