import random

import pytest

from cybe import GF, GF4, QQ, CanonicalParams
from cybe.fields import extension, random_scalar

FIELDS = {
    "q": QQ,
    "gf2": GF(2),
    "gf3": GF(3),
    "gf5": GF(5),
    "gf7": GF(7),
    "gf4": GF4(),
    "gf9": extension(GF(3), 1, 0),
    "q_i": extension(QQ, 1, 0),
}


@pytest.fixture(params=sorted(FIELDS))
def any_field(request):
    return FIELDS[request.param]


def random_params(field, rng, char_ne2=False):
    while True:
        vals = [random_scalar(field, rng) for _ in range(4)]
        if vals[0] * vals[3] - vals[1] * vals[2]:
            return CanonicalParams(*vals)


@pytest.fixture
def rng():
    return random.Random(20240611)


# one summary line per acceptance criterion

_acceptance: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = "::test_criterion_"
    if marker not in report.nodeid:
        return
    name = report.nodeid.split(marker, 1)[1]
    number = name.split("_", 1)[0]
    _acceptance.setdefault(number, []).append(
        f"{name}: {'PASS' if report.outcome == 'passed' else 'FAIL'}")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance, key=lambda n: int(n) if n.isdigit() else 99):
        lines = _acceptance[number]
        status = "PASS" if all(line.endswith("PASS") for line in lines) else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}")
        for line in lines:
            terminalreporter.write_line(f"    {line}")


def to_sympy(poly):
    """Rational :class:`cybe.poly.Poly` as a sympy expression in its ring's names."""
    import sympy as sp

    gens = sp.symbols(" ".join(poly.ring.names))
    expr = sp.Integer(0)
    for mono, coeff in poly.terms.items():
        term = sp.Rational(coeff.value.numerator, coeff.value.denominator)
        for g, e in zip(gens, mono):
            term *= g**e
        expr += term
    return sp.expand(expr)
