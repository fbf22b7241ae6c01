"""Sparse multivariate polynomials with exact field coefficients.

Only what the symbolic side of the library needs: ring arithmetic,
substitution and evaluation. Polynomials interoperate with :class:`Scalar`
and ``int`` so that code written against scalars (the residual engine, the
closed-form conditions) runs unchanged on symbolic inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .fields import Field, Scalar


@dataclass(frozen=True)
class PolyRing:
    field: Field
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "_pos", {n: i for i, n in enumerate(self.names)})

    @property
    def zero(self) -> Poly:
        return Poly(self, {})

    @property
    def one(self) -> Poly:
        return self.const(self.field.one)

    def const(self, c) -> Poly:
        c = self.field(c)
        if not c:
            return self.zero
        return Poly(self, {(0,) * len(self.names): c})

    def gen(self, name: str) -> Poly:
        e = [0] * len(self.names)
        e[self._pos[name]] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> tuple[Poly, ...]:
        return tuple(self.gen(n) for n in self.names)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise TypeError("polynomials from different rings")
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for m, c in o.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms[m] + c1 * c2 if m in terms else c1 * c2
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.ring.one
        for _ in range(n):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def subs(self, values: Mapping[str, object]) -> Poly:
        """Substitute polynomials or scalars for some of the variables."""
        ring = self.ring
        result = ring.zero
        for mono, c in self.terms.items():
            term = ring.const(c)
            for name, e in zip(ring.names, mono):
                if e:
                    v = values[name] if name in values else ring.gen(name)
                    term = term * (v**e if isinstance(v, Poly) else ring.const(v) ** e)
            result = result + term
        return result

    def __call__(self, **values) -> Scalar:
        """Evaluate at a full assignment of the variables."""
        f = self.ring.field
        total = f.zero
        for mono, c in self.terms.items():
            term = c
            for name, e in zip(self.ring.names, mono):
                if e:
                    term = term * f(values[name]) ** e
            total = total + term
        return total

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def coefficient(self, mono: tuple[int, ...]) -> Scalar:
        return self.terms.get(mono, self.ring.field.zero)

    def variables(self) -> set[str]:
        return {n for m in self.terms for n, e in zip(self.ring.names, m) if e}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            vars_ = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, mono) if e
            )
            if not vars_:
                parts.append(str(c))
            elif c == 1:
                parts.append(vars_)
            elif c == -1:
                parts.append("-" + vars_)
            else:
                parts.append(f"({c})*{vars_}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__
