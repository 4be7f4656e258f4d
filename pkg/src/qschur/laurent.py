"""Exact arithmetic in Z[v, v^-1] and the quantum combinatorics built on it.

A Laurent polynomial is stored sparsely as a map from exponent to integer
coefficient; zero coefficients are never stored, so equal ring elements have
identical term maps.  Quantum integers [r], quantum factorials [m]! and
Gaussian binomials [r; s] are provided as module-level functions with shared
caches.  Rational values (from evaluating at a point) are plain
``fractions.Fraction`` objects.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


# Evaluation results are exact rationals; Fraction already guarantees the
# reduced-form invariants (gcd(|num|, den) = 1, den > 0).
RationalScalar = Fraction


class NotDivisible(ArithmeticError):
    """Exact division failed; in this library that means a broken integrality claim."""


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial."""


class EvalAtZero(ZeroDivisionError):
    """Evaluation of a Laurent polynomial at v = 0 is undefined."""


class LaurentPoly:
    """An element of Z[v, v^-1].

    >>> v = LaurentPoly.v()
    >>> (v + v**-1) * (v - v**-1)
    LaurentPoly('v^2 - v^-2')
    >>> quantum_int(4).exact_div(quantum_int(2))
    LaurentPoly('v^2 + v^-2')
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for exp, coeff in items:
            acc[exp] = acc.get(exp, 0) + coeff
        self._terms = {e: c for e, c in acc.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> LaurentPoly:
        return LaurentPoly()

    @staticmethod
    def one() -> LaurentPoly:
        return LaurentPoly({0: 1})

    @staticmethod
    def v(exp: int = 1) -> LaurentPoly:
        """The monomial v^exp."""
        return LaurentPoly({exp: 1})

    @staticmethod
    def from_int(n: int) -> LaurentPoly:
        return LaurentPoly({0: n})

    @staticmethod
    def coerce(x: int | LaurentPoly) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.from_int(x)
        raise TypeError(f"cannot coerce {x!r} to LaurentPoly")

    # -- structure ---------------------------------------------------------

    def items(self) -> list[tuple[int, int]]:
        """Terms as (exponent, coefficient) pairs, ascending by exponent."""
        return sorted(self._terms.items())

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Largest exponent; raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def valuation(self) -> int:
        """Smallest exponent; raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.from_int(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: int | LaurentPoly) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            n = terms.get(e, 0) + c
            if n:
                terms[e] = n
            else:
                terms.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other: int | LaurentPoly) -> LaurentPoly:
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: int | LaurentPoly) -> LaurentPoly:
        return LaurentPoly.coerce(other) + (-self)

    def __mul__(self, other: int | LaurentPoly) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        terms: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                n = terms.get(e, 0) + c1 * c2
                if n:
                    terms[e] = n
                else:
                    del terms[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) == 1:
                ((e, c),) = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly({-e: c}) ** (-n)
            raise ValueError("only unit monomials have negative powers")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: int | LaurentPoly) -> LaurentPoly:
        """Return q with q * other == self, or raise NotDivisible.

        A NotDivisible here signals a violated integrality claim: every
        division the algebra performs is guaranteed exact, so failure is a
        bug, not a data condition.
        """
        other = LaurentPoly.coerce(other)
        if other.is_zero:
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero:
            return LaurentPoly.zero()
        # Shift both operands into Z[v]; v is a unit, so divisibility is
        # unaffected and the quotient shifts back by the valuation gap.
        shift = self.valuation() - other.valuation()
        rem = {e - self.valuation(): c for e, c in self._terms.items()}
        den = {e - other.valuation(): c for e, c in other._terms.items()}
        den_deg = max(den)
        den_lead = den[den_deg]
        quot: dict[int, int] = {}
        while rem:
            deg = max(rem)
            if deg < den_deg:
                raise NotDivisible(f"{self} is not divisible by {other}")
            lead = rem[deg]
            q, r = divmod(lead, den_lead)
            if r:
                raise NotDivisible(f"{self} is not divisible by {other}")
            qe = deg - den_deg
            quot[qe] = q
            for e, c in den.items():
                n = rem.get(e + qe, 0) - q * c
                if n:
                    rem[e + qe] = n
                else:
                    rem.pop(e + qe, None)
        return LaurentPoly({e + shift: c for e, c in quot.items()})

    def evaluate(self, t: int | Fraction) -> Fraction:
        """Substitute v := t exactly.  t must be nonzero."""
        t = Fraction(t)
        if t == 0:
            raise EvalAtZero("cannot evaluate a Laurent polynomial at v = 0")
        return sum((Fraction(c) * t**e for e, c in self._terms.items()), Fraction(0))

    def bar(self) -> LaurentPoly:
        """The involution v -> v^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    # -- serialization -----------------------------------------------------

    def __str__(self) -> str:
        """Text form: terms by descending exponent, e.g. ``v^4 + 2 - v^-2``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "v" if e == 1 else f"v^{e}"
                body = power if mag == 1 else f"{mag}{power}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"

    def to_json(self) -> list[list]:
        """JSON form: [[exponent, "coefficient"], ...] ascending by exponent."""
        return [[e, str(c)] for e, c in self.items()]

    @staticmethod
    def from_json(data: Iterable) -> LaurentPoly:
        return LaurentPoly({int(e): int(c) for e, c in data})


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the text form produced by ``str()``.

    >>> parse_laurent("v^2 - 3 + 2v^-1")
    LaurentPoly('v^2 - 3 + 2v^-1')
    """
    import re

    s = text.strip()
    if s == "0":
        return LaurentPoly.zero()
    term_re = re.compile(
        r"\s*(?P<sign>[+-])?\s*(?:"
        r"(?P<coeff>\d+)\s*\*?\s*(?P<var1>v(?:\^(?P<exp1>-?\d+))?)?"
        r"|(?P<var2>v(?:\^(?P<exp2>-?\d+))?))"
    )
    pos = 0
    terms: list[tuple[int, int]] = []
    first = True
    while pos < len(s):
        m = term_re.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad Laurent polynomial at position {pos}: {text!r}")
        sign = m.group("sign")
        if sign is None and not first:
            raise ValueError(f"missing sign at position {pos}: {text!r}")
        sgn = -1 if sign == "-" else 1
        if m.group("coeff") is not None:
            coeff = sgn * int(m.group("coeff"))
            var = m.group("var1")
            exp = int(m.group("exp1")) if m.group("exp1") else (1 if var else 0)
        else:
            coeff = sgn
            exp = int(m.group("exp2")) if m.group("exp2") else 1
        terms.append((exp, coeff))
        pos = m.end()
        first = False
    return LaurentPoly(terms)


@lru_cache(maxsize=None)
def quantum_int(r: int) -> LaurentPoly:
    """The quantum integer [r] = (v^r - v^-r)/(v - v^-1).

    >>> quantum_int(2)
    LaurentPoly('v + v^-1')
    >>> quantum_int(-3)
    LaurentPoly('-v^2 - 1 - v^-2')
    """
    if r < 0:
        return -quantum_int(-r)
    return LaurentPoly({r - 1 - 2 * i: 1 for i in range(r)})


@lru_cache(maxsize=None)
def quantum_factorial(m: int) -> LaurentPoly:
    """[m]! = [m][m-1]...[1], with [0]! = 1."""
    if m < 0:
        raise ValueError("quantum factorial of a negative integer")
    if m == 0:
        return LaurentPoly.one()
    return quantum_factorial(m - 1) * quantum_int(m)


@lru_cache(maxsize=None)
def gauss_binomial(r: int, s: int) -> LaurentPoly:
    """The Gaussian binomial [r; s] = [r][r-1]...[r-s+1] / [s]!.

    Defined for all integer r; negative s yields 0 so that summation bounds
    elsewhere never need special-casing.

    >>> gauss_binomial(4, 2)
    LaurentPoly('v^4 + v^2 + 2 + v^-2 + v^-4')
    >>> gauss_binomial(-1, 2)
    LaurentPoly('1')
    """
    if s < 0:
        return LaurentPoly.zero()
    if s == 0:
        return LaurentPoly.one()
    num = LaurentPoly.one()
    for i in range(s):
        num = num * quantum_int(r - i)
        if num.is_zero:
            return num
    return num.exact_div(quantum_factorial(s))
