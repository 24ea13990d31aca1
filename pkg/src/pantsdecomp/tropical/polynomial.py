"""Laurent polynomials over the Puiseux field and their initial forms.

Each term is ``c * t^val * x^m`` where ``c`` is a unit whose phase is
recorded in half-turns.  Initial forms use the min convention: they keep
the terms minimising ``val + <m, w>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..gaussian import GaussQ
from ..parsing import ParseError, parse_terms, variable_order

GENERIC = "GENERIC"


@dataclass(frozen=True)
class Term:
    exponent: tuple
    valuation: Fraction
    phase: object = Fraction(0)  # Fraction in [0, 2) or GENERIC
    lead_coeff: GaussQ | None = None

    @property
    def generic(self) -> bool:
        return self.phase == GENERIC

    @property
    def angle(self) -> Fraction:
        return Fraction(0) if self.generic else self.phase


def format_monomial(exponent: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for k, name in zip(exponent, names):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _format_coefficient_times(coeff: str, mono: str) -> str:
    if not mono:
        return coeff
    if coeff == "1":
        return mono
    if coeff == "-1":
        return "-" + mono
    return f"{coeff}*{mono}"


def join_terms(parts: Sequence[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class ResiduePolynomial:
    """A Laurent polynomial over C with exact or generic coefficients."""

    def __init__(self, terms: Sequence[tuple], names: Sequence[str]):
        self.terms = [(tuple(e), c) for e, c in terms]
        self.names = list(names)

    @property
    def exponents(self) -> list[tuple]:
        return [e for e, _ in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms:
            cs = "G" if c == GENERIC else str(c)
            parts.append(_format_coefficient_times(cs, format_monomial(e, self.names)))
        return join_terms(parts)

    def __repr__(self) -> str:
        return f"ResiduePolynomial({str(self)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ResiduePolynomial) and sorted(self.terms, key=lambda t: t[0]) == sorted(
            other.terms, key=lambda t: t[0]
        )


class TropicalPolynomial:
    def __init__(self, n: int, terms: Sequence[Term], names: Sequence[str] | None = None):
        self.n = n
        self.terms = list(terms)
        self.names = list(names) if names else (["x", "y", "z"][:n] if n <= 3 else [f"x{k}" for k in range(1, n + 1)])
        seen = set()
        for t in self.terms:
            if len(t.exponent) != n:
                raise ValueError("exponent of wrong length")
            if t.exponent in seen:
                raise ValueError(f"repeated exponent {t.exponent}")
            seen.add(t.exponent)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "TropicalPolynomial":
        parsed = parse_terms(text)
        names = variable_order({v for p in parsed for v in p.exponents}, n)
        terms = []
        merged: dict[tuple, int] = {}
        for p in parsed:
            e = tuple(p.exponents.get(v, 0) for v in names)
            if p.generic:
                if p.coefficient != 1 or p.phase:
                    raise ParseError("a generic coefficient G cannot be combined with other constants")
                term = Term(e, p.t_power, GENERIC, None)
            else:
                if not p.coefficient:
                    raise ParseError("zero coefficient")
                phase = (p.coefficient.phase() + p.phase) % 2
                lead = p.coefficient if p.phase == 0 else None
                term = Term(e, p.t_power, phase, lead)
            if e in merged:
                raise ParseError(f"monomial {format_monomial(e, names) or '1'} appears twice")
            merged[e] = len(terms)
            terms.append(term)
        return cls(len(names), terms, names)

    @property
    def exponents(self) -> list[tuple]:
        return [t.exponent for t in self.terms]

    @property
    def valuations(self) -> list[Fraction]:
        return [t.valuation for t in self.terms]

    def weight_values(self, w: Sequence) -> list[Fraction]:
        w = [Fraction(x) for x in w]
        return [t.valuation + sum((a * b for a, b in zip(t.exponent, w)), Fraction(0)) for t in self.terms]

    def initial_indices(self, w: Sequence) -> list[int]:
        vals = self.weight_values(w)
        m = min(vals)
        return [i for i, v in enumerate(vals) if v == m]

    def residue_polynomial(self, indices: Sequence[int]) -> ResiduePolynomial:
        out = []
        for i in sorted(indices):
            t = self.terms[i]
            if t.generic:
                c = GENERIC
            elif t.lead_coeff is not None:
                c = t.lead_coeff
            else:
                c = f"e({t.phase})"
            out.append((t.exponent, c))
        return ResiduePolynomial(out, self.names)

    def __str__(self) -> str:
        parts = []
        for t in self.terms:
            if t.generic:
                cs = "G"
            elif t.lead_coeff is not None:
                cs = str(t.lead_coeff)
            else:
                cs = f"e({t.phase})"
            if t.valuation:
                tv = "t" if t.valuation == 1 else (f"t^{t.valuation}" if t.valuation.denominator == 1 and t.valuation > 0
                                                    else f"t^({t.valuation})")
                cs = tv if cs == "1" else ("-" + tv if cs == "-1" else f"{cs}*{tv}")
            parts.append(_format_coefficient_times(cs, format_monomial(t.exponent, self.names)))
        return join_terms(parts)


def initial_form(f: TropicalPolynomial, w: Sequence) -> ResiduePolynomial:
    """Terms of ``f`` minimising ``val + <m, w>``, in input order."""
    if len(w) != f.n:
        raise ValueError("weight vector has wrong length")
    return f.residue_polynomial(f.initial_indices(w))
