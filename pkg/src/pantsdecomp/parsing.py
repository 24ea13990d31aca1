"""A small parser for Laurent polynomials over the Puiseux field.

Grammar (whitespace ignored)::

    poly    := [sign] term (sign term)*
    term    := factor ((["*"] | "/") factor)*
    factor  := NUMBER | "i" | "G" | "t" [pow] | VAR [pow] | "e(" rational ")" | "(" poly ")"
    pow     := "^" (["-"] NUMBER | "(" ["-"] NUMBER ["/" NUMBER] ")")

``t`` is the uniformiser, ``i`` the imaginary unit, ``G`` a generic unit
coefficient and ``e(a)`` the unit ``exp(i*pi*a)``.  A parenthesised
factor must be a constant such as ``(1/2 + 3*i)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .gaussian import GaussQ

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")
RESERVED = {"t", "i", "G", "e"}


class ParseError(ValueError):
    pass


@dataclass
class ParsedTerm:
    coefficient: GaussQ = field(default_factory=lambda: GaussQ(1))
    t_power: Fraction = Fraction(0)
    exponents: dict = field(default_factory=dict)
    generic: bool = False
    phase: Fraction = Fraction(0)

    def times(self, other: "ParsedTerm", sign: int = 1) -> "ParsedTerm":
        out = ParsedTerm(
            self.coefficient * other.coefficient if sign > 0 else self.coefficient / other.coefficient,
            self.t_power + sign * other.t_power,
            dict(self.exponents),
            self.generic or other.generic,
            self.phase + sign * other.phase,
        )
        for v, k in other.exponents.items():
            out.exponents[v] = out.exponents.get(v, 0) + sign * k
            if out.exponents[v] == 0:
                del out.exponents[v]
        return out

    def is_constant(self) -> bool:
        return not self.exponents and self.t_power == 0 and not self.generic and self.phase == 0


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, ident, sym = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        elif sym.strip():
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected {tok[1]!r} in {self.text!r}; expected {value or kind}")
        self.pos += 1
        return tok

    def poly(self) -> list[ParsedTerm]:
        terms = []
        sign = 1
        if self.peek() in (("sym", "+"), ("sym", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            t = self.term()
            if sign < 0:
                t.coefficient = -t.coefficient
            terms.append(t)
            if self.peek() in (("sym", "+"), ("sym", "-")):
                sign = -1 if self.take()[1] == "-" else 1
                continue
            break
        return terms

    def term(self) -> ParsedTerm:
        out = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("sym", "*"):
                self.take()
                out = out.times(self.factor())
            elif (kind, val) == ("sym", "/"):
                self.take()
                out = out.times(self.factor(), sign=-1)
            elif kind in ("num", "id") or (kind, val) == ("sym", "("):
                out = out.times(self.factor())
            else:
                return out

    def rational(self) -> Fraction:
        sign = 1
        if self.peek() == ("sym", "-"):
            self.take()
            sign = -1
        num = Fraction(int(self.take("num")[1]))
        if self.peek() == ("sym", "/"):
            self.take()
            num /= int(self.take("num")[1])
        return sign * num

    def power(self) -> Fraction:
        if self.peek() != ("sym", "^"):
            return Fraction(1)
        self.take()
        if self.peek() == ("sym", "("):
            self.take()
            r = self.rational()
            self.take("sym", ")")
            return r
        sign = 1
        if self.peek() == ("sym", "-"):
            self.take()
            sign = -1
        return sign * Fraction(int(self.take("num")[1]))

    def factor(self) -> ParsedTerm:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return ParsedTerm(GaussQ(int(val)))
        if (kind, val) == ("sym", "("):
            self.take()
            inner = self.poly()
            self.take("sym", ")")
            if not all(t.is_constant() for t in inner):
                raise ParseError("parenthesised factors must be constants")
            total = GaussQ(0)
            for t in inner:
                total = total + t.coefficient
            p = self.power()
            if p != 1:
                raise ParseError("powers of constants are not supported")
            return ParsedTerm(total)
        if kind == "id":
            self.take()
            if val == "i":
                return ParsedTerm(GaussQ(0, 1))
            if val == "G":
                return ParsedTerm(generic=True)
            if val == "e":
                self.take("sym", "(")
                r = self.rational()
                self.take("sym", ")")
                return ParsedTerm(phase=r)
            if val == "t":
                return ParsedTerm(t_power=self.power())
            p = self.power()
            if p.denominator != 1 and not val.endswith("t"):
                raise ParseError(f"fractional exponent on variable {val}")
            if re.fullmatch(r"[txyz]{2,}", val):
                # juxtaposed letters such as ``xyz``, ``tx`` or ``xy^2``
                out = ParsedTerm()
                for j, ch in enumerate(val):
                    k = p if j == len(val) - 1 else Fraction(1)
                    out = out.times(ParsedTerm(t_power=k) if ch == "t" else ParsedTerm(exponents={ch: int(k)}))
                return out
            return ParsedTerm(exponents={val: int(p)} if p else {})
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_terms(text: str) -> list[ParsedTerm]:
    p = _Parser(text)
    if not p.toks:
        raise ParseError("empty polynomial")
    terms = p.poly()
    if p.pos != len(p.toks):
        raise ParseError(f"trailing input {p.toks[p.pos][1]!r} in {text!r}")
    return terms


def variable_order(names: set[str], n: int | None = None) -> list[str]:
    """Order ``x, y, z`` or ``x1..xn``; ``n`` pads with unused variables."""
    names = set(names)
    indexed = {m for m in names if re.fullmatch(r"x\d+", m)}
    if indexed and names - indexed:
        raise ParseError("mixing x,y,z with indexed variables x1..xn")
    if indexed:
        top = max(int(m[1:]) for m in indexed)
        top = max(top, n or 0)
        return [f"x{k}" for k in range(1, top + 1)]
    letters = ["x", "y", "z"]
    unknown = names - set(letters)
    if unknown:
        raise ParseError(f"unknown variables {sorted(unknown)}; use x,y,z or x1..xn")
    top = max([letters.index(m) + 1 for m in names] + [n or 0, 1])
    if top > 3:
        raise ParseError("more than three variables: use x1..xn")
    return letters[:top]
