"""Exact scalar arithmetic over Q, GF(p) and quadratic extensions.

Every field is an immutable, hashable descriptor; every :class:`Scalar` pairs a
descriptor with a canonical raw value:

* rationals      -- a reduced :class:`fractions.Fraction`
* GF(p)          -- the least non-negative residue, an ``int``
* base[t]/(m(t)) -- a pair ``(a, b)`` of raw base values meaning ``a + b*t``

Canonical raw values make equality structural and hashing cheap.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from typing import Iterator, NamedTuple

from sympy import isprime

from .errors import (
    FieldMismatchError,
    ParseError,
    UnsupportedEnumerationError,
    UnsupportedFieldError,
)

MAX_PRIME = 2**31

_INT_RE = re.compile(r"^[+-]?\d+$")
_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_NUM = r"\d+(?:/\d+)?"
_EXT_RE = re.compile(
    rf"^(?:(?P<a>[+-]?{_NUM})(?=[+-]|$))?(?:(?P<sign>[+-]?)(?P<b>{_NUM})?\*?t)?$"
)


class Field:
    """Common interface of the three field kinds.

    Subclasses implement the raw-value primitives (``add``, ``mul``, ...);
    user code works with :class:`Scalar` objects obtained by calling the field.
    """

    kind: str
    characteristic: int
    degree: int

    # -- construction ---------------------------------------------------
    def __call__(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            if isinstance(self, QuadraticExtension) and value.field == self.base:
                return Scalar(self, (value.value, self.base.convert(0)))
            raise FieldMismatchError(f"cannot coerce {value.field} element into {self}")
        if isinstance(value, str):
            return self.parse(value)
        return Scalar(self, self.convert(value))

    @cached_property
    def zero(self) -> Scalar:
        return Scalar(self, self.convert(0))

    @cached_property
    def one(self) -> Scalar:
        return Scalar(self, self.convert(1))

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        return self.characteristic**self.degree

    def elements(self) -> Iterator[Scalar]:
        """Yield every element once, in canonical order."""
        if not self.is_finite:
            raise UnsupportedEnumerationError(f"{self} is infinite")
        for i in range(self.order):
            yield self.from_index(i)

    def parse(self, text: str) -> Scalar:
        return Scalar(self, self.parse_raw(text.strip().replace(" ", "")))

    def sqrt(self, x: Scalar) -> Scalar | None:
        """A square root of ``x`` in this field, or ``None``."""
        raise NotImplementedError

    def __str__(self) -> str:
        return self.spec()


@dataclass(frozen=True)
class Rationals(Field):
    kind = "rationals"
    characteristic = 0
    degree = 1

    def convert(self, value):
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise TypeError(f"cannot convert {value!r} to a rational")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def sort_key(self, a):
        return a

    def parse_raw(self, text):
        if not _RAT_RE.match(text):
            raise ParseError(f"not a rational: {text!r}")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)

    def format_raw(self, a):
        return str(a)

    def spec(self):
        return "q"

    def random_raw(self, rng: random.Random, bound: int = 9):
        den = 0
        while den == 0:
            den = rng.randint(-bound, bound)
        return Fraction(rng.randint(-bound, bound), den)

    def sqrt(self, x):
        r = _rational_sqrt(x.value)
        return None if r is None else Scalar(self, r)

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int
    kind = "prime"
    degree = 1

    def __post_init__(self):
        if not 2 <= self.p < MAX_PRIME:
            raise UnsupportedFieldError(f"prime modulus must be below 2**31, got {self.p}")
        if not isprime(self.p):
            raise UnsupportedFieldError(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    def convert(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        raise TypeError(f"cannot convert {value!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def sort_key(self, a):
        return a

    def parse_raw(self, text):
        if not _INT_RE.match(text):
            raise ParseError(f"not a residue: {text!r}")
        return int(text) % self.p

    def format_raw(self, a):
        return str(a)

    def spec(self):
        return f"gf:{self.p}"

    def from_index(self, i):
        return Scalar(self, i)

    def index(self, a):
        return a

    def coordinates(self, a):
        return (a,)

    def random_raw(self, rng: random.Random, bound: int = 9):
        return rng.randrange(self.p)

    def sqrt(self, x):
        return _finite_sqrt(x)

    def __repr__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class QuadraticExtension(Field):
    """``base[t] / (t^2 + c1*t + c0)`` with ``c0``, ``c1`` raw base values."""

    base: Field
    c0: object
    c1: object
    kind = "quadratic"
    degree = 2

    def __post_init__(self):
        if not isinstance(self.base, (Rationals, PrimeField)):
            raise UnsupportedFieldError("towers of extensions are not supported")
        if roots_in_field(self.base, self.base(self.c1), self.base(self.c0)):
            raise UnsupportedFieldError(
                f"t^2 + ({self.base.format_raw(self.c1)})t + ({self.base.format_raw(self.c0)})"
                f" is reducible over {self.base}"
            )

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def modulus(self) -> tuple[Scalar, Scalar]:
        """``(c0, c1)`` as base scalars."""
        return self.base(self.c0), self.base(self.c1)

    @cached_property
    def theta(self) -> Scalar:
        """The adjoined root ``t``."""
        b = self.base
        return Scalar(self, (b.convert(0), b.convert(1)))

    def lift(self, x: Scalar) -> Scalar:
        return self(x)

    def convert(self, value):
        return (self.base.convert(value), self.base.convert(0))

    def add(self, x, y):
        b = self.base
        return (b.add(x[0], y[0]), b.add(x[1], y[1]))

    def sub(self, x, y):
        b = self.base
        return (b.sub(x[0], y[0]), b.sub(x[1], y[1]))

    def neg(self, x):
        b = self.base
        return (b.neg(x[0]), b.neg(x[1]))

    def mul(self, x, y):
        # t^2 = -c1*t - c0
        b = self.base
        ac = b.mul(x[0], y[0])
        bd = b.mul(x[1], y[1])
        cross = b.add(b.mul(x[0], y[1]), b.mul(x[1], y[0]))
        return (
            b.sub(ac, b.mul(bd, self.c0)),
            b.sub(cross, b.mul(bd, self.c1)),
        )

    def conjugate_raw(self, x):
        b = self.base
        return (b.sub(x[0], b.mul(x[1], self.c1)), b.neg(x[1]))

    def norm_raw(self, x):
        b = self.base
        a0, a1 = x
        return b.add(b.sub(b.mul(a0, a0), b.mul(b.mul(a0, a1), self.c1)), b.mul(b.mul(a1, a1), self.c0))

    def inv(self, x):
        if self.is_zero(x):
            raise ZeroDivisionError("inverse of zero")
        b = self.base
        n_inv = b.inv(self.norm_raw(x))
        c = self.conjugate_raw(x)
        return (b.mul(c[0], n_inv), b.mul(c[1], n_inv))

    def is_zero(self, x):
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def sort_key(self, x):
        return (self.base.sort_key(x[1]), self.base.sort_key(x[0]))

    def parse_raw(self, text):
        m = _EXT_RE.match(text)
        if not text or m is None:
            raise ParseError(f"not an element of {self}: {text!r}")
        b = self.base
        a = b.parse_raw(m["a"]) if m["a"] else b.convert(0)
        if "t" not in text:
            return (a, b.convert(0))
        coef = b.parse_raw(m["b"]) if m["b"] else b.convert(1)
        if m["sign"] == "-":
            coef = b.neg(coef)
        return (a, coef)

    def format_raw(self, x):
        b = self.base
        a, c = x
        if b.is_zero(c):
            return b.format_raw(a)
        sign = "+"
        if isinstance(b, Rationals) and c < 0:
            sign, c = "-", -c
        term = "t" if c == b.convert(1) else f"{b.format_raw(c)}*t"
        if b.is_zero(a):
            return term if sign == "+" else "-" + term
        return f"{b.format_raw(a)}{sign}{term}"

    def spec(self):
        b = self.base
        head = "q" if isinstance(b, Rationals) else f"gf:{b.p}"
        return f"{head}^2:modulus={b.format_raw(self.c0)},{b.format_raw(self.c1)}"

    def from_index(self, i):
        p = self.base.p
        return Scalar(self, (i % p, i // p))

    def index(self, x):
        return x[0] + self.base.p * x[1]

    def coordinates(self, x):
        return x

    def random_raw(self, rng: random.Random, bound: int = 9):
        return (self.base.random_raw(rng, bound), self.base.random_raw(rng, bound))

    def sqrt(self, x):
        if self.is_finite:
            return _finite_sqrt(x)
        return _rational_extension_sqrt(self, x)

    def __repr__(self):
        return f"Extension({self.spec()})"


class Scalar:
    """An immutable field element.

    Mixed arithmetic with ``int`` (and ``Fraction`` where it makes sense) is
    coerced; mixing two different fields raises :class:`FieldMismatchError`.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _raw(self, other):
        if isinstance(other, Scalar):
            if other.field is self.field or other.field == self.field:
                return other.value
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        f = self.field
        return Scalar(f, f.mul(self.value, f.inv(o)))

    def __rtruediv__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        f = self.field
        return Scalar(f, f.mul(o, f.inv(self.value)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** -n
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (other.field is self.field or other.field == self.field) and other.value == self.value
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other) == self.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def sort_key(self):
        return self.field.sort_key(self.value)

    def index(self) -> int:
        return self.field.index(self.value)

    def coordinates(self) -> tuple:
        return self.field.coordinates(self.value)

    def __str__(self):
        return self.field.format_raw(self.value)

    def __repr__(self):
        return f"{self.field!r}({self})"

    def __reduce__(self):
        return (Scalar, (self.field, self.value))


# -- constructors ---------------------------------------------------------

QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def extension(base: Field, c0, c1) -> QuadraticExtension:
    """The field ``base[t]/(t^2 + c1 t + c0)``; ``c0``, ``c1`` may be scalars or ints."""
    c0 = base(c0).value
    c1 = base(c1).value
    return QuadraticExtension(base, c0, c1)


def default_modulus(base: PrimeField) -> tuple[int, int]:
    """Smallest ``(c0, c1)`` (c1-major) giving an irreducible ``t^2 + c1 t + c0``."""
    for c1 in range(base.p):
        for c0 in range(base.p):
            if not roots_in_field(base, base(c1), base(c0)):
                return c0, c1
    raise AssertionError("every prime field has an irreducible quadratic")


def GF4() -> QuadraticExtension:
    return extension(GF(2), 1, 1)


def parse_field(text: str) -> Field:
    """Parse ``q``, ``gf:p``, ``gf:4``, ``gf:p^2[:modulus=c0,c1]`` or ``q^2:modulus=c0,c1``."""
    t = text.strip().lower().replace(" ", "")
    m = re.fullmatch(r"(q|gf:(\d+))(\^2(?::modulus=([^,]+),([^,]+))?)?", t)
    if m is None:
        raise ParseError(f"bad field syntax {text!r}")
    try:
        base: Field = QQ if m[1] == "q" else None
        if base is None:
            n = int(m[2])
            if n == 4 and not m[3]:
                return GF4()
            base = GF(n)
        if not m[3]:
            return base
        if m[4] is None:
            if base is QQ:
                raise ParseError("q^2 needs an explicit modulus")
            return extension(base, *default_modulus(base))
        return extension(base, base.parse(m[4]), base.parse(m[5]))
    except UnsupportedFieldError as exc:
        raise ParseError(str(exc)) from exc


def field_to_dict(field: Field) -> dict:
    if isinstance(field, Rationals):
        return {"kind": "rationals"}
    if isinstance(field, PrimeField):
        return {"kind": "prime", "p": field.p}
    c0, c1 = field.modulus
    return {"kind": "quadratic", "base": field_to_dict(field.base), "modulus": [str(c0), str(c1)]}


def field_from_dict(doc) -> Field:
    if isinstance(doc, str):
        return parse_field(doc)
    if not isinstance(doc, dict):
        raise ParseError(f"field must be a string or an object, got {doc!r}")
    kind = doc.get("kind")
    try:
        if kind == "rationals":
            return QQ
        if kind == "prime":
            return GF(int(doc["p"]))
        if kind == "quadratic":
            base = field_from_dict(doc["base"])
            c0, c1 = doc["modulus"]
            return extension(base, base.parse(str(c0)), base.parse(str(c1)))
    except (KeyError, ValueError, TypeError, UnsupportedFieldError) as exc:
        raise ParseError(f"bad field document {doc!r}: {exc}") from exc
    raise ParseError(f"unknown field kind {kind!r}")


# -- square roots and quadratics -----------------------------------------


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _finite_sqrt(x: Scalar) -> Scalar | None:
    f = x.field
    if not x:
        return x
    q = f.order
    if f.characteristic == 2:
        # Frobenius is bijective: sqrt(x) = x^(q/2)
        return x ** (q // 2)
    if x ** ((q - 1) // 2) != 1:
        return None
    # Tonelli-Shanks over a field of odd order q
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = next(c for c in f.elements() if c and c ** ((q - 1) // 2) != 1)
    m, c, t, r = e, z**s, x**s, x ** ((s + 1) // 2)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2
            i += 1
        b = c ** (2 ** (m - i - 1))
        m, c = i, b * b
        t, r = t * c, r * b
    return r


def _rational_extension_sqrt(f: QuadraticExtension, x: Scalar) -> Scalar | None:
    # Shift t = phi - c1/2 so that phi^2 = disc and solve in Q(phi).
    c0, c1 = f.c0, f.c1
    disc = c1 * c1 / 4 - c0
    big_a, big_b = x.value
    cx, cy = big_a - big_b * c1 / 2, big_b
    if cy == 0:
        r = _rational_sqrt(cx)
        if r is not None:
            return f(r)
        r = _rational_sqrt(cx / disc)
        if r is None:
            return None
        a, b = Fraction(0), r
    else:
        n = _rational_sqrt(cx * cx - disc * cy * cy)
        if n is None:
            return None
        a = None
        for cand in ((cx + n) / 2, (cx - n) / 2):
            a = _rational_sqrt(cand)
            if a:
                break
        if not a:
            return None
        b = cy / (2 * a)
    return Scalar(f, (a + b * c1 / 2, b))


def roots_in_field(field: Field, c1: Scalar, c0: Scalar) -> list[Scalar]:
    """Roots of ``t^2 + c1 t + c0`` lying in ``field``, with multiplicity, sorted."""
    if field.characteristic == 2:
        if not c1:
            r = field.sqrt(c0)
            return [r, r]
        if field.order is not None and field.order <= 1024:
            return sorted((t for t in field.elements() if t * t + c1 * t + c0 == 0),
                          key=Scalar.sort_key)
        raise UnsupportedFieldError(f"quadratic solving over {field}")
    disc = c1 * c1 - 4 * c0
    if not disc:
        r = -c1 / 2
        return [r, r]
    root = field.sqrt(disc)
    if root is None:
        return []
    return sorted([(-c1 + root) / 2, (-c1 - root) / 2], key=Scalar.sort_key)


class QuadraticRoots(NamedTuple):
    roots: list
    irreducible: bool
    extension: Field | None


def solve_quadratic(c1: Scalar, c0: Scalar) -> QuadraticRoots:
    """All roots of ``t^2 + c1 t + c0``.

    When the polynomial has no root in the coefficient field, the result is
    flagged irreducible and the roots are returned in the extension
    ``field[t]/(t^2 + c1 t + c0)``: first ``t`` itself, then its conjugate.
    """
    c1, c0 = _same_field(c1, c0)
    field = c1.field
    roots = roots_in_field(field, c1, c0)
    if roots:
        return QuadraticRoots(roots, False, None)
    if isinstance(field, QuadraticExtension):
        raise UnsupportedFieldError("splitting field would need a degree-4 extension")
    ext = extension(field, c0, c1)
    theta = ext.theta
    return QuadraticRoots([theta, -ext(c1) - theta], True, ext)


def _same_field(a, b):
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        if a.field != b.field:
            raise FieldMismatchError(f"{a.field} vs {b.field}")
        return a, b
    if isinstance(a, Scalar):
        return a, a.field(b)
    if isinstance(b, Scalar):
        return b.field(a), b
    raise TypeError("at least one coefficient must be a Scalar")


def enumerate_field(field: Field) -> Iterator[Scalar]:
    return field.elements()


def random_scalar(field: Field, rng: random.Random, bound: int = 9) -> Scalar:
    """Uniform for finite fields; small numerators/denominators over Q."""
    return Scalar(field, field.random_raw(rng, bound))
