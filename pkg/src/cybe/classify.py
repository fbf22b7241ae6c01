"""Closed-form classification of CYBE solutions in the canonical family.

Characteristic other than 2: ``r`` solves the CYBE iff it is strongly
symmetric, or ``z = 0, t = -s, v = -u`` and seven polynomial conditions in
``x, y, p, q, s, u`` hold.

Characteristic 2: the third row and column must agree (``s = t``, ``u = v``).
If ``A`` is a scalar matrix nothing else is required; otherwise the
``z != 0`` and ``z = 0`` branches each add their own conditions.

Condition names are stable identifiers used in JSON reports.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import FieldMismatchError, WrongCaseError, WrongCharacteristicError
from .fields import Field
from .lie import CanonicalParams, EigenCase, LieAlgebra, recognize_canonical_form, similarity_case
from .linalg import inverse
from .tensors import Tensor2, is_strongly_symmetric, transform_coefficients


class Family(str, enum.Enum):
    STRONGLY_SYMMETRIC = "StronglySymmetric"
    ANTISYM_TOP = "AntisymTopFamily"
    CHAR2_ANY = "Char2Any"
    CHAR2_Z_NONZERO = "Char2ZNonzero"
    CHAR2_Z_ZERO = "Char2ZZero"
    NOT_SOLUTION = "NotSolution"


@dataclass(frozen=True)
class FailedCondition:
    name: str
    value: object


@dataclass(frozen=True)
class Verdict:
    is_solution: bool
    family: Family
    failed: tuple[FailedCondition, ...] = ()

    def to_dict(self) -> dict:
        return {
            "solution": self.is_solution,
            "family": self.family.value,
            "failed": [{"name": c.name, "value": str(c.value)} for c in self.failed],
        }


def top_family_conditions(alpha, beta, gamma, delta, x, y, p, q, s, u):
    """The seven conditions of the antisymmetric-top family (char != 2).

    Works on any ring elements, so it doubles as a symbolic generator.
    """
    return [
        ("T21-C1", s * (2 * alpha * x + gamma * (p + q))),
        ("T21-C2", u * (2 * delta * y + beta * (q + p))),
        ("T21-C3", u * (2 * alpha * x + gamma * (q + p))),
        ("T21-C4", s * (2 * delta * y + beta * (q + p))),
        ("T21-C5", (alpha - delta) * u * s + gamma * u * u - beta * s * s),
        ("T21-C6", s * (2 * gamma * y + 2 * beta * x + (alpha + delta) * (q + p))),
        ("T21-C7", u * (2 * gamma * y + 2 * beta * x + (alpha + delta) * (p + q))),
    ]


def char2_z_nonzero_condition(alpha, beta, gamma, delta, x, y, z, p, s, u):
    return (alpha * u * s + alpha * p * z + gamma * u * u + gamma * y * z
            + beta * s * s + beta * x * z + delta * s * u + delta * z * p)


def char2_z_zero_conditions(alpha, beta, gamma, delta, p, q, s, u):
    return [
        ("T31-Z0-C1", s * gamma * (p + q)),
        ("T31-Z0-C2", u * beta * (p + q)),
        ("T31-Z0-C3", u * gamma * (p + q)),
        ("T31-Z0-C4", s * beta * (p + q)),
        ("T31-Z0-C5", (alpha + delta) * u * s + gamma * u * u + beta * s * s),
        ("T31-Z0-C6", s * (alpha + delta) * (p + q)),
        ("T31-Z0-C7", u * (alpha + delta) * (p + q)),
    ]


def _failed(pairs) -> tuple[FailedCondition, ...]:
    return tuple(FailedCondition(n, v) for n, v in pairs if v)


def _check_tensor(params: CanonicalParams, r: Tensor2):
    if r.dim != 3:
        raise ValueError("the canonical family is three dimensional")
    if r.ring != params.field:
        raise FieldMismatchError(f"tensor over {r.ring}, parameters over {params.field}")


@lru_cache(maxsize=4096)
def _case(params: CanonicalParams) -> EigenCase:
    return similarity_case(params)


def classify_char_ne2(params: CanonicalParams, r: Tensor2) -> Verdict:
    char = params.field.characteristic
    if char == 2:
        raise WrongCharacteristicError("not 2", char)
    _check_tensor(params, r)
    if is_strongly_symmetric(r):
        return Verdict(True, Family.STRONGLY_SYMMETRIC)
    k = r.aliases()
    bad = _failed([("T21-SHAPE-z", k["z"]), ("T21-SHAPE-t+s", k["t"] + k["s"]),
                   ("T21-SHAPE-v+u", k["v"] + k["u"])])
    if bad:
        return Verdict(False, Family.NOT_SOLUTION, bad)
    bad = _failed(top_family_conditions(*params.as_tuple(), k["x"], k["y"], k["p"], k["q"],
                                        k["s"], k["u"]))
    if bad:
        return Verdict(False, Family.NOT_SOLUTION, bad)
    return Verdict(True, Family.ANTISYM_TOP)


def in_top_family(params: CanonicalParams, r: Tensor2) -> bool:
    """``z = 0, t = -s, v = -u`` and the seven conditions hold (char != 2)."""
    k = r.aliases()
    if k["z"] or k["t"] + k["s"] or k["v"] + k["u"]:
        return False
    return not any(v for _, v in top_family_conditions(*params.as_tuple(), k["x"], k["y"],
                                                        k["p"], k["q"], k["s"], k["u"]))


def classify_char2(params: CanonicalParams, r: Tensor2) -> Verdict:
    char = params.field.characteristic
    if char != 2:
        raise WrongCharacteristicError(2, char)
    _check_tensor(params, r)
    k = r.aliases()
    bad = _failed([("T31-SYM-s", k["s"] - k["t"]), ("T31-SYM-u", k["u"] - k["v"])])
    if bad:
        return Verdict(False, Family.NOT_SOLUTION, bad)
    if _case(params) is EigenCase.REPEATED_DIAGONAL:
        return Verdict(True, Family.CHAR2_ANY)
    a, b, g, d = params.as_tuple()
    if k["z"]:
        bad = _failed([
            ("T31-SYM-p", k["p"] - k["q"]),
            ("T31-Z", char2_z_nonzero_condition(a, b, g, d, k["x"], k["y"], k["z"], k["p"],
                                                k["s"], k["u"])),
        ])
        family = Family.CHAR2_Z_NONZERO
    else:
        bad = _failed(char2_z_zero_conditions(a, b, g, d, k["p"], k["q"], k["s"], k["u"]))
        family = Family.CHAR2_Z_ZERO
    if bad:
        return Verdict(False, Family.NOT_SOLUTION, bad)
    return Verdict(True, family)


def classify(source: CanonicalParams | LieAlgebra, r: Tensor2) -> Verdict:
    """Dispatch on the characteristic; raw algebras are first put into canonical form."""
    if isinstance(source, LieAlgebra):
        basis, params = recognize_canonical_form(source)
        r = transform_coefficients(r, inverse(basis))
    else:
        params = source
    if params.field.characteristic == 2:
        return classify_char2(params, r)
    return classify_char_ne2(params, r)


def irreducible_case_predicate(params: CanonicalParams, r: Tensor2) -> Verdict:
    """Solutions when the characteristic polynomial of ``A`` has no root in the field.

    The quadratic condition on ``(s, u)`` is then anisotropic, which forces
    ``s = u = 0``: ``r`` is strongly symmetric or lies in the span of
    ``e1e1, e1e2, e2e1, e2e2``.
    """
    char = params.field.characteristic
    if char == 2:
        raise WrongCharacteristicError("not 2", char)
    if _case(params) is not EigenCase.IRREDUCIBLE_QUADRATIC:
        raise WrongCaseError("characteristic polynomial of A is reducible")
    _check_tensor(params, r)
    if is_strongly_symmetric(r):
        return Verdict(True, Family.STRONGLY_SYMMETRIC)
    k = r.aliases()
    bad = _failed([(f"IRR-{n}", k[n]) for n in ("z", "s", "t", "u", "v")])
    if bad:
        return Verdict(False, Family.NOT_SOLUTION, bad)
    return Verdict(True, Family.ANTISYM_TOP)


# -- batch support ----------------------------------------------------------

# row-major positions of the aliases in a flattened 3x3 coefficient matrix
_X, _P, _S, _Q, _Y, _U, _T, _V, _Z = range(9)


def support_mask(field: Field, indices: np.ndarray, neg: np.ndarray) -> np.ndarray:
    """Rows that can possibly be classified as solutions.

    ``indices`` holds canonical element indices of flattened tensors (one per
    row) and ``neg[i]`` is the index of the negative of element ``i``.
    :func:`classify` returns ``NotSolution`` for every row outside the mask:
    in characteristic != 2 a solution is symmetric or has ``z = 0, t = -s,
    v = -u``; in characteristic 2 it has ``s = t, u = v``.
    """
    c = indices
    if field.characteristic == 2:
        return (c[:, _S] == c[:, _T]) & (c[:, _U] == c[:, _V])
    symmetric = (c[:, _P] == c[:, _Q]) & (c[:, _S] == c[:, _T]) & (c[:, _U] == c[:, _V])
    top = (c[:, _Z] == 0) & (c[:, _T] == neg[c[:, _S]]) & (c[:, _V] == neg[c[:, _U]])
    return symmetric | top
