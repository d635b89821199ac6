"""Exact integer Laurent polynomials in one variable ``A``."""

from __future__ import annotations

from typing import Mapping


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms: dict[int, int] = {
            int(e): int(c) for e, c in (terms or {}).items() if c
        }

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({-e * -n: c ** -n})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``A**k``."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def mirror(self) -> LaurentPoly:
        """Substitute ``A -> 1/A``."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def divmod(self, other: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Long division from the top degree; the divisor's leading coefficient must be +-1."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        dtop = other.max_degree
        dlead = other.terms[dtop]
        if dlead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        rem = LaurentPoly(self.terms)
        quot: dict[int, int] = {}
        span = other.max_degree - other.min_degree
        while rem and rem.max_degree - rem.min_degree >= span:
            top = rem.max_degree
            c = rem.terms[top] * dlead
            quot[top - dtop] = c
            rem = rem - other.shift(top - dtop) * c
        return LaurentPoly(quot), rem

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    @property
    def max_degree(self) -> int:
        return max(self.terms)

    @property
    def min_degree(self) -> int:
        return min(self.terms)

    def evaluate(self, a: complex) -> complex:
        return sum(c * a**e for e, c in self.terms.items())

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self.terms.items()))})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else f"{mag}*") + ("A" if e == 1 else f"A^{e}")
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


A = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
# value of a free loop
LOOP = LaurentPoly({2: -1, -2: -1})
