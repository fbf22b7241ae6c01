from fractions import Fraction

import pytest
import sympy as sp

from cybe import GF, QQ, CanonicalParams, Tensor2, canonical_algebra, condition_system
from cybe import linalg
from cybe.errors import FieldMismatchError, SingularParametersError
from cybe.fields import random_scalar
from cybe.tensors import (
    ALIAS_ORDER,
    cybe_residual,
    cybe_terms,
    in_image_one_minus_tau,
    is_antisymmetric,
    is_cybe_solution,
    is_strongly_symmetric,
    is_symmetric,
    transform_coefficients,
    transform_tensor3,
)

from conftest import random_params, to_sympy


def T(field, **kw):
    return Tensor2.from_aliases(field, **kw)


def random_tensor(field, rng, density=0.7):
    rows = [[random_scalar(field, rng) if rng.random() < density else field.zero
             for _ in range(3)] for _ in range(3)]
    return Tensor2.from_rows(field, rows)


def random_invertible(field, rng, block=False):
    while True:
        q = [[random_scalar(field, rng) for _ in range(3)] for _ in range(3)]
        if block:
            q[2][0] = q[2][1] = field.zero
        q = linalg.matrix(field, q)
        if linalg.det(q):
            return q


L11 = canonical_algebra(CanonicalParams.of(QQ, 1, 0, 0, 1))
L12 = canonical_algebra(CanonicalParams.of(QQ, 1, 0, 0, 2))


def test_zero_tensor_residual():
    assert cybe_residual(L11, Tensor2.zeros(QQ)).is_zero()


def test_e1e1_is_solution():
    assert is_cybe_solution(L11, T(QQ, x=1))


def test_antisymmetric_top_counterexample():
    r = T(QQ, s=1, t=-1, u=1, v=-1)
    assert not cybe_residual(L12, r).is_zero()
    assert not is_cybe_solution(L12, r)


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        cybe_residual(L11, Tensor2.zeros(GF(3)))


def test_condition_system_shape():
    conds = condition_system(CanonicalParams.of(QQ, 1, 0, 0, 1))
    assert len(conds) == 27
    assert len({c.label for c in conds}) == 27
    nontrivial = {c.poly for c in conds if c.poly != c.poly.ring.zero}
    assert len(nontrivial) <= 22


def test_condition_e1e1e1_vanishes_when_x_zero():
    conds = {c.label: c for c in condition_system(CanonicalParams.of(QQ, 1, 0, 0, 1))}
    c = conds["e1e1e1"]
    assert c(T(QQ, s=2, t=2)) == 0
    assert c(T(QQ, x=1, s=1, t=2)) != 0


def test_condition_system_zero_tensor(rng):
    for field in (QQ, GF(3)):
        P = random_params(field, rng)
        assert all(c(Tensor2.zeros(field)) == 0 for c in condition_system(P))


def test_condition_system_quadratic_combination():
    # (alpha - delta) u s + gamma u^2 - beta s^2 at s = u = 1 is -1 for (1,0,0,2)
    conds = {c.label: c for c in condition_system(CanonicalParams.of(QQ, 1, 0, 0, 2))}
    r = T(QQ, s=1, t=-1, u=1, v=-1)
    assert conds["e1e2e3"](r) == QQ(-1) or conds["e2e1e3"](r) == QQ(-1)


def test_condition_system_matches_residual(rng):
    for field in (QQ, GF(5), GF(2)):
        for _ in range(10):
            P = random_params(field, rng)
            conds = condition_system(P)
            L = canonical_algebra(P)
            for _ in range(20):
                r = random_tensor(field, rng)
                res = dict(cybe_residual(L, r).components())
                assert all(c(r) == res[c.slot] for c in conds)


# the printed component system, transcribed term by term
PRINTED = [
    "-alpha*s*x+alpha*x*t-gamma*s*q+gamma*p*t",
    "-beta*u*p+beta*q*v-delta*u*y+delta*y*v",
    "-alpha*v*s+alpha*p*z-gamma*u*v+gamma*y*z-beta*s**2+beta*x*z-delta*s*u+delta*z*p",
    "-beta*x*z+beta*s*t-delta*z*q+delta*u*t-alpha*u*t+alpha*q*z-gamma*u*v+gamma*y*z",
    "-alpha*z*p+alpha*t*v-gamma*z*y+gamma*u*v-beta*z*x+beta*t*s-delta*z*p+delta*v*s",
    "-alpha*z*p+alpha*s*v-gamma*z*y+gamma*u*v-beta*s*t+beta*x*z-delta*s*v+delta*z*p",
    "-beta*z*x+beta*t*t-delta*z*q+delta*v*t-alpha*z*q+alpha*t*u-gamma*z*y+gamma*u*v",
    "-beta*s*t+beta*x*z-delta*t*u+delta*q*z-alpha*u*s+alpha*q*z-gamma*u*u+gamma*y*z",
    "-alpha*t*p+alpha*x*v-gamma*t*y+gamma*q*v-alpha*s*p+alpha*v*x-gamma*s*y+gamma*p*v",
    "-alpha*u*x+alpha*q*t-gamma*u*q+gamma*y*t-alpha*u*x+alpha*q*s-gamma*u*p+gamma*y*s",
    "-alpha*s*t+alpha*x*z-gamma*t*u+gamma*q*z-alpha*s**2+alpha*x*z-gamma*s*u+y*p*z",
    "-alpha*z*x+alpha*t*t-gamma*z*q+gamma*v*t-alpha*z*x+alpha*s*t-gamma*z*p+gamma*v*s",
    "-beta*v*x+beta*p*t-delta*v*q+delta*y*t-beta*u*x+beta*q*t-delta*u*q+delta*y*t",
    "-beta*s*p-beta*x*v-delta*s*y+delta*p*v-beta*s*q+beta*x*u-delta*s*y+delta*p*u",
    "-beta*v*s+beta*p*z-delta*v*u+delta*y*z-beta*s*u+beta*z*q-delta*u**2+delta*y*z",
    "-beta*z*p+beta*t*v-delta*z*y+delta*v*v-beta*z*q+beta*t*u-delta*z*y+delta*v*u",
    "-gamma*z*q+gamma*u*t-gamma*s*v+gamma*p*z",
    "-alpha*v*x+alpha*p*t-gamma*v*q+gamma*y*t-beta*s*x+beta*x*t-delta*s*q+delta*p*t"
    "-alpha*s*q+alpha*x*u-gamma*s*y+gamma*p*u",
    "-beta*p*t+beta*v*x-delta*t*y+delta*q*v-alpha*u*p+alpha*q*v-gamma*u*y+gamma*y*v"
    "-beta*u*x+beta*q*s-delta*u*p+delta*y*s",
    "-beta*z*p+beta*s*v-delta*z*y+delta*u*v-beta*u*t+beta*q*z-delta*u*v+delta*y*z",
    "-beta*z*s+beta*t*z-delta*z*u+delta*v*z",
    "-alpha*z*s+alpha*t*z-gamma*z*u+gamma*v*z",
]

# slot -> (printed term, term forced by the expansion)
PRINTED_TYPOS = {
    "e1e1e3": ("y*p*z", "gamma*p*z"),
    "e3e1e2": ("gamma*u*v", "gamma*v**2"),
    "e1e2e2": ("-beta*x*v", "+beta*x*v"),
}

SYMS = sp.symbols("alpha beta gamma delta " + " ".join(ALIAS_ORDER))
PARAM_TUPLES = [(1, 0, 0, 1), (2, 3, -1, 5), (Fraction(1, 2), -7, 4, 3), (3, 1, 1, -2)]


def _generated(params):
    """slot label -> sympy polynomial in the aliases, for numeric parameters."""
    return {c.label: to_sympy(c.poly) for c in condition_system(CanonicalParams.of(QQ, *params))}


def _matches(expr_text):
    """Slots (with sign) whose generated component equals the printed text."""
    expr = sp.sympify(expr_text, locals={str(s): s for s in SYMS})
    found = None
    for params in PARAM_TUPLES:
        gen = _generated(params)
        sub = sp.expand(expr.subs(dict(zip(SYMS[:4], [sp.nsimplify(v) for v in params]))))
        hits = {(label, sign) for label, g in gen.items()
                for sign in (1, -1) if sp.expand(sub - sign * g) == 0}
        found = hits if found is None else found & hits
    return found


def test_printed_system_against_expansion():
    typo_slots = set()
    seen = set()
    for text in PRINTED:
        hits = _matches(text)
        if hits:
            seen |= {label for label, _ in hits}
            continue
        fixed = [(slot, text.replace(bad, good)) for slot, (bad, good) in PRINTED_TYPOS.items()
                 if bad in text]
        matched = [slot for slot, t in fixed if any(label == slot for label, _ in _matches(t))]
        assert len(matched) == 1, f"printed component matches nothing: {text}"
        typo_slots.add(matched[0])
        seen.add(matched[0])
    assert typo_slots == set(PRINTED_TYPOS)
    assert len(seen) == 22


def test_degenerate_slots(rng):
    # e_j e_i e_i vanishes in [r12, r13] (the summand is symmetric in a, c) and
    # e_i e_i e_j vanishes in [r13, r23]; [r12, r23] has no such zero pattern
    for field in (QQ, GF(5)):
        for _ in range(30):
            L = canonical_algebra(random_params(field, rng))
            r = random_tensor(field, rng, 1.0)
            t12_13, _, t13_23 = cybe_terms(L, r)
            for i in range(3):
                for j in range(3):
                    assert t12_13[j, i, i] == 0
                    assert t13_23[i, i, j] == 0


def test_r12_r23_has_nonzero_repeated_slot():
    L = canonical_algebra(CanonicalParams.of(QQ, 1, 0, 0, 1))
    # k13 k11 e1 (x) [e3, e1] (x) e1 lands on e1 e1 e1
    _, t12_23, _ = cybe_terms(L, T(QQ, x=1, s=1))
    assert t12_23[0, 0, 0] != 0


def test_symmetry_predicates():
    sym = T(QQ, p=1, q=1)
    anti = T(QQ, p=1, q=-1)
    assert is_symmetric(sym) and not is_antisymmetric(sym)
    assert is_antisymmetric(anti) and not is_symmetric(anti)
    F = GF(2)
    assert in_image_one_minus_tau(T(F, p=1, q=1))
    assert not in_image_one_minus_tau(T(F, x=1))


def test_strongly_symmetric_examples():
    assert is_strongly_symmetric(T(QQ, x=1))
    assert not is_strongly_symmetric(T(QQ, x=1, y=1))
    assert not is_strongly_symmetric(T(QQ, p=1))
    # v v^T with v = (1, 2, 3)
    v = [1, 2, 3]
    assert is_strongly_symmetric(Tensor2.from_rows(QQ, [[a * b for b in v] for a in v]))


def test_transform_identity_and_round_trip(rng):
    for field in (QQ, GF(7)):
        ident = linalg.identity(field, 3)
        for _ in range(20):
            r = random_tensor(field, rng)
            assert transform_coefficients(r, ident) == r
            q = random_invertible(field, rng)
            back = transform_coefficients(transform_coefficients(r, linalg.inverse(q)), q)
            assert back == r


def test_transform_singular():
    with pytest.raises(SingularParametersError):
        transform_coefficients(Tensor2.zeros(QQ), linalg.zeros(QQ, 3))


def test_block_change_scales_k33(rng):
    # k'33 = k33 / q33^2, so only the vanishing of k33 is invariant
    for _ in range(30):
        q = random_invertible(QQ, rng, block=True)
        r = random_tensor(QQ, rng)
        k33 = transform_coefficients(r, linalg.inverse(q))[2, 2]
        assert k33 == r[2, 2] / (q[2][2] * q[2][2])
        assert (k33 == 0) == (r[2, 2] == 0)


def test_block_change_with_unit_corner_preserves_k33(rng):
    for _ in range(30):
        q = [list(row) for row in random_invertible(QQ, rng, block=True)]
        q[2][2] = QQ.one
        q = linalg.matrix(QQ, q)
        if not linalg.det(q):
            continue
        r = random_tensor(QQ, rng)
        assert transform_coefficients(r, linalg.inverse(q))[2, 2] == r[2, 2]


def test_residual_naturality(rng):
    for field in (QQ, GF(5)):
        for _ in range(15):
            L = canonical_algebra(random_params(field, rng))
            q = random_invertible(field, rng)
            q_inv = linalg.inverse(q)
            r = random_tensor(field, rng)
            lhs = cybe_residual(L.change_basis(q), transform_coefficients(r, q_inv))
            rhs = transform_tensor3(cybe_residual(L, r), q_inv)
            assert lhs == rhs
