from itertools import product

import pytest
import sympy as sp

from cybe import GF, GF4, QQ, CanonicalParams, Family, Tensor2, canonical_algebra, classify
from cybe import classify_char2, classify_char_ne2, condition_system, eigen_normalize, linalg
from cybe.classify import irreducible_case_predicate, top_family_conditions
from cybe.errors import NotInFamilyError, WrongCaseError, WrongCharacteristicError
from cybe.fields import extension, random_scalar
from cybe.lie import make_algebra
from cybe.tensors import is_cybe_solution, transform_coefficients

from conftest import random_params, to_sympy
from test_tensors import random_invertible, random_tensor


def T(field, **kw):
    return Tensor2.from_aliases(field, **kw)


def P(field, *v):
    return CanonicalParams.of(field, *v)


def all_tensors(field):
    els = list(field.elements())
    for vals in product(els, repeat=9):
        yield Tensor2(field, (vals[0:3], vals[3:6], vals[6:9]))


def test_antisymmetric_p():
    v = classify_char_ne2(P(QQ, 1, 0, 0, 1), T(QQ, p=1, q=-1))
    assert v.is_solution and v.family is Family.ANTISYM_TOP
    assert v.to_dict() == {"solution": True, "family": "AntisymTopFamily", "failed": []}


def test_antisymmetric_s():
    v = classify_char_ne2(P(QQ, 1, 0, 0, 1), T(QQ, s=1, t=-1))
    assert v.family is Family.ANTISYM_TOP
    assert is_cybe_solution(canonical_algebra(P(QQ, 1, 0, 0, 1)), T(QQ, s=1, t=-1))


def test_quadratic_condition_fails():
    v = classify_char_ne2(P(QQ, 1, 0, 0, 2), T(QQ, s=1, t=-1, u=1, v=-1))
    assert not v.is_solution
    assert [(c.name, c.value) for c in v.failed] == [("T21-C5", QQ(-1))]


def test_shape_failure_names():
    v = classify_char_ne2(P(QQ, 1, 0, 0, 1), T(QQ, z=1, p=1))
    assert not v.is_solution
    assert {c.name for c in v.failed} == {"T21-SHAPE-z"}


def test_strongly_symmetric_priority():
    v = classify_char_ne2(P(QQ, 1, 0, 0, 1), T(QQ, x=3))
    assert v.family is Family.STRONGLY_SYMMETRIC


def test_characteristic_guards():
    with pytest.raises(WrongCharacteristicError):
        classify_char_ne2(P(GF(2), 1, 0, 0, 1), Tensor2.zeros(GF(2)))
    with pytest.raises(WrongCharacteristicError):
        classify_char2(P(GF(3), 1, 0, 0, 1), Tensor2.zeros(GF(3)))


def test_char2_scalar_matrix_needs_symmetric_third_column():
    F = GF(2)
    params = P(F, 1, 0, 0, 1)
    L = canonical_algebra(params)
    solutions = 0
    for r in all_tensors(F):
        v = classify_char2(params, r)
        assert v.is_solution == is_cybe_solution(L, r)
        solutions += v.is_solution
        if v.is_solution:
            assert v.family is Family.CHAR2_ANY
    assert solutions == 128
    # e3 (x) e1 is not a solution: [r13, r23] leaves e3 e1 e1
    witness = T(F, t=1)
    assert not is_cybe_solution(L, witness)
    assert {c.name for c in classify_char2(params, witness).failed} == {"T31-SYM-s"}


def test_char2_jordan_examples():
    F = GF(2)
    params = P(F, 1, 1, 0, 1)
    v = classify_char2(params, T(F, z=1))
    assert v.is_solution and v.family is Family.CHAR2_Z_NONZERO
    v = classify_char2(params, T(F, x=1, z=1))
    assert not v.is_solution
    assert [(c.name, c.value) for c in v.failed] == [("T31-Z", F(1))]


def test_char2_every_tuple_gf2():
    F = GF(2)
    for a, b, g, d in product(range(2), repeat=4):
        if (a * d - b * g) % 2 == 0:
            continue
        params = P(F, a, b, g, d)
        L = canonical_algebra(params)
        for r in all_tensors(F):
            assert classify_char2(params, r).is_solution == is_cybe_solution(L, r)


def test_verdict_invariants(rng):
    for field in (QQ, GF(3), GF(5), GF(2), GF4()):
        for _ in range(10):
            params = random_params(field, rng)
            for _ in range(20):
                r = random_tensor(field, rng, rng.choice([0.2, 0.5, 1.0]))
                v = classify(params, r)
                assert v.is_solution == (v.family is not Family.NOT_SOLUTION)
                assert all(c.value for c in v.failed)
                assert v.is_solution == (not v.failed)


def test_classify_raw_tableau():
    F = GF(3)
    L = canonical_algebra(P(F, 1, 0, 0, 1))
    raw = make_algebra(F, L.structure)
    assert classify(raw, Tensor2.zeros(F)).is_solution


def test_classify_heisenberg():
    s = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    s[0][1], s[1][0] = [0, 0, 1], [0, 0, -1]
    with pytest.raises(NotInFamilyError):
        classify(make_algebra(QQ, s), Tensor2.zeros(QQ))


def test_classify_raw_algebra_in_other_basis(rng):
    for field in (QQ, GF(5), GF(3)):
        for _ in range(15):
            params = random_params(field, rng)
            q = random_invertible(field, rng)
            moved = canonical_algebra(params).change_basis(q)
            for _ in range(10):
                r = random_tensor(field, rng, rng.choice([0.3, 1.0]))
                r_moved = transform_coefficients(r, linalg.inverse(q))
                assert classify(moved, r_moved).is_solution == is_cybe_solution(moved, r_moved)
                assert classify(moved, r_moved).is_solution == classify(params, r).is_solution


def test_eigen_normalized_basis_agrees(rng):
    for field in (QQ, GF(3), GF(5), GF(7)):
        for _ in range(15):
            params = random_params(field, rng)
            E = eigen_normalize(params)
            for _ in range(8):
                r = random_tensor(field, rng, rng.choice([0.3, 1.0]))
                lifted = Tensor2(E.field, linalg.lift(E.field, r.K))
                moved = transform_coefficients(lifted, E.Q_inv)
                assert (classify(E.normalized_params, moved).is_solution
                        == classify(params, r).is_solution)


def test_irreducible_examples():
    params = P(QQ, 0, -1, 1, 0)
    assert irreducible_case_predicate(params, T(QQ, p=1)).is_solution
    v = irreducible_case_predicate(params, T(QQ, s=1, t=-1))
    assert not v.is_solution
    assert classify_char_ne2(params, T(QQ, s=1, t=-1)).failed[0].value == QQ(1)
    assert irreducible_case_predicate(params, T(QQ, x=1, y=1)).is_solution


def test_irreducible_needs_irreducible():
    with pytest.raises(WrongCaseError):
        irreducible_case_predicate(P(QQ, 1, 0, 0, 2), Tensor2.zeros(QQ))


def test_irreducible_agrees_with_general(rng):
    for a, b in ((1, 1), (0, 2), (3, -1), (2, 5)):
        params = P(QQ, a, -b, b, a)
        for _ in range(100):
            r = random_tensor(QQ, rng, rng.choice([0.2, 0.5, 1.0]))
            assert (irreducible_case_predicate(params, r).is_solution
                    == classify_char_ne2(params, r).is_solution)


def test_reduction_to_seven_conditions(rng):
    # with z = 0, t = -s, v = -u the 27 components span the same space as the
    # seven top-family conditions
    names = sp.symbols("x y z p q s t u v")
    x, y, z, p, q, s, t, u, v = names
    for _ in range(12):
        params = random_params(QQ, rng)
        reduced = [sp.expand(to_sympy(c.poly).subs({z: 0, t: -s, v: -u}))
                   for c in condition_system(params)]
        consts = [sp.Rational(c.value.numerator, c.value.denominator) for c in params.as_tuple()]
        seven = [sp.expand(e) for _, e in top_family_conditions(*consts, x, y, p, q, s, u)]
        monos = sorted({m for e in reduced + seven for m in sp.Poly(e, *names).monoms()})

        def rows(exprs):
            return sp.Matrix([[sp.Poly(e, *names).coeff_monomial(m) for m in monos]
                              for e in exprs if e != 0])

        a, b = rows(reduced), rows(seven)
        assert a.rank() == b.rank() == a.col_join(b).rank()


def test_gf4_sample_agrees_with_residual(rng):
    F = GF4()
    for _ in range(6):
        params = random_params(F, rng)
        L = canonical_algebra(params)
        for _ in range(60):
            r = random_tensor(F, rng, rng.choice([0.3, 1.0]))
            assert classify_char2(params, r).is_solution == is_cybe_solution(L, r)


def test_support_mask_never_hides_a_solution(rng):
    import numpy as np

    from cybe.classify import support_mask
    from cybe.oracle import ElementTable

    for field in (GF(3), GF(5), GF(2), GF4()):
        table = ElementTable(field)
        rows = np.array([[rng.randrange(table.q) for _ in range(9)] for _ in range(3000)])
        # bias half of the rows towards the structured shapes
        rows[::2, 6] = table.neg[rows[::2, 2]]
        rows[::2, 7] = table.neg[rows[::2, 5]]
        rows[::4, 8] = 0
        mask = support_mask(field, rows, table.neg)
        for _ in range(3):
            params = random_params(field, rng)
            for row, inside in zip(rows.tolist(), mask.tolist()):
                if not inside:
                    assert not classify(params, table.tensor(row)).is_solution
