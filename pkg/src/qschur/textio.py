"""Text grammar and JSON serialization for elements.

Grammar::

    element := term ('+' term)*
    term    := ['(' laurent ')' '*'] factor+
    factor  := 'e^(' nat ')' | 'K[' nat ',' nat ']' | 'f^(' nat ')'

Every term carries exactly one K factor; omitted e/f factors mean power
zero.  Factors appear in basis order (e, K, f for EKF; f, K, e for FKE).
The bare string ``0`` denotes the zero element.  Parsing straightens
non-canonical monomials, so any well-formed input yields a canonical
element.
"""

from __future__ import annotations

import re

from .algebra import EKF, FKE, Context, Element, reduce_monomial, zero_element
from .laurent import LaurentPoly, parse_laurent


class ParseError(ValueError):
    """Malformed element text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def format_laurent(p: LaurentPoly) -> str:
    return str(p)


def format_element(x: Element) -> str:
    """Canonical text form: terms sorted by (a, b1, c), joined with ' + '."""
    if x.is_zero:
        return "0"
    one = LaurentPoly.one()
    parts = []
    for m, coeff in x.sorted_terms():
        factors = []
        first, last = ("e", "f") if x.orientation == EKF else ("f", "e")
        if m.a > 0:
            factors.append(f"{first}^({m.a})")
        factors.append(f"K[{m.b1},{m.b2}]")
        if m.c > 0:
            factors.append(f"{last}^({m.c})")
        body = " ".join(factors)
        if coeff == one:
            parts.append(body)
        else:
            parts.append(f"({coeff}) * {body}")
    return " + ".join(parts)


_FACTOR_RE = re.compile(
    r"(?P<gen>[ef])\^\(\s*(?P<pow>\d+)\s*\)|K\[\s*(?P<b1>\d+)\s*,\s*(?P<b2>\d+)\s*\]"
)


def _parse_term(text: str, start: int, end: int, ctx: Context, orientation: str) -> Element:
    pos = start
    coeff = LaurentPoly.one()
    # Optional parenthesized coefficient.
    while pos < end and text[pos].isspace():
        pos += 1
    if pos < end and text[pos] == "(":
        close = text.find(")", pos)
        if close == -1 or close >= end:
            raise ParseError("unclosed coefficient parenthesis", pos)
        try:
            coeff = parse_laurent(text[pos + 1 : close])
        except ValueError as exc:
            raise ParseError(f"bad coefficient: {exc}", pos + 1) from None
        pos = close + 1
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end or text[pos] != "*":
            raise ParseError("expected '*' after coefficient", pos)
        pos += 1

    first, last = ("e", "f") if orientation == EKF else ("f", "e")
    a = c = None
    pair = None
    stage = 0  # 0: expect first gen or K; 1: expect K; 2: expect last gen or end
    while True:
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            break
        m = _FACTOR_RE.match(text, pos)
        if not m or m.end() > end:
            raise ParseError("expected a factor like e^(1), K[0,1] or f^(1)", pos)
        if m.group("gen"):
            gen, power = m.group("gen"), int(m.group("pow"))
            if gen == first:
                if stage != 0:
                    raise ParseError(f"{gen} factor out of order for {orientation}", pos)
                a = power
                stage = 1
            else:
                if stage != 2 or c is not None:
                    raise ParseError(f"{gen} factor out of order for {orientation}", pos)
                c = power
        else:
            if stage == 2:
                raise ParseError("duplicate K factor", pos)
            pair = (int(m.group("b1")), int(m.group("b2")))
            stage = 2
        pos = m.end()
    if pair is None:
        raise ParseError("term is missing its K[b1,b2] factor", start)
    quad = (a if a is not None else 0, pair[0], pair[1], c if c is not None else 0)
    return reduce_monomial(ctx, quad, orientation).scale(coeff)


def parse_element(source: str | dict, ctx: Context, orientation: str = EKF) -> Element:
    """Parse the text grammar or the JSON object form into a canonical element."""
    if isinstance(source, dict):
        return element_from_json(source, ctx)
    text = source
    stripped = text.strip()
    if stripped == "0":
        return zero_element(ctx, orientation)
    if not stripped:
        raise ParseError("empty element text", 0)

    # Split on '+' at depth zero (coefficients live inside parentheses).
    result = zero_element(ctx, orientation)
    depth = 0
    start = 0
    boundaries = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parenthesis", i)
        elif ch == "+" and depth == 0:
            boundaries.append((start, i))
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced parenthesis", len(text) - 1)
    boundaries.append((start, len(text)))
    for s, e in boundaries:
        if not text[s:e].strip():
            raise ParseError("empty term", s)
        result = result + _parse_term(text, s, e, ctx, orientation)
    return result


def element_to_json(x: Element) -> dict:
    return {
        "d": x.ctx.d,
        "orientation": x.orientation,
        "terms": [
            {"a": m.a, "b1": m.b1, "b2": m.b2, "c": m.c, "coeff": coeff.to_json()}
            for m, coeff in x.sorted_terms()
        ],
    }


def element_from_json(data: dict, ctx: Context | None = None) -> Element:
    if ctx is None:
        ctx = Context(int(data["d"]))
    elif ctx.d != int(data["d"]):
        raise ParseError(f"element degree {data['d']} does not match context d={ctx.d}", 0)
    orientation = data.get("orientation", EKF)
    if orientation not in (EKF, FKE):
        raise ParseError(f"bad orientation {orientation!r}", 0)
    result = zero_element(ctx, orientation)
    for t in data["terms"]:
        quad = (int(t["a"]), int(t["b1"]), int(t["b2"]), int(t["c"]))
        coeff = LaurentPoly.from_json(t["coeff"])
        result = result + reduce_monomial(ctx, quad, orientation).scale(coeff)
    return result
