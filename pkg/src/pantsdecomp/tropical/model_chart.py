"""Local charts of the polyhedral model over a cell of the induced subdivision.

For a full-dimensional polyhedron ``sigma`` with facet inequalities
``c + <a, w> >= 0`` the ring of functions on the chart is generated by
the monomials ``t^c x^a``.  When these generators form a lattice basis
of ``Z x M`` the chart is smooth and ``f`` can be rewritten in them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..polyhedra.matrix import ExactMatrix, kernel_basis, primitive_integer_vector
from ..polyhedra.polyhedron import Polyhedron
from .polynomial import TropicalPolynomial, format_monomial, join_terms


class NonSmoothChartError(ValueError):
    pass


def generator_names(k: int) -> list[str]:
    return ["u", "v", "w"][:k] if k <= 3 else [f"u{i}" for i in range(1, k + 1)]


def _is_redundant(p: Polyhedron, i: int) -> bool:
    a, b = p.inequalities[i]
    rest = Polyhedron(p.ambient_dim, [q for j, q in enumerate(p.inequalities) if j != i], p.equalities)
    from ..polyhedra.lp import linprog

    res = linprog(list(a), [q[0] for q in rest.inequalities], [q[1] for q in rest.inequalities],
                  [q[0] for q in rest.equalities], [q[1] for q in rest.equalities], maximize=True)
    return res.status == "optimal" and res.value <= b


def facet_generators(sigma: Polyhedron) -> list[tuple[int, tuple]]:
    """``(c, a)`` for each irredundant inequality ``c + <a, w> >= 0``, in input order."""
    if sigma.equalities:
        raise NonSmoothChartError("the cell must be full-dimensional")
    out = []
    seen = set()
    for i, (a, b) in enumerate(sigma.inequalities):
        if _is_redundant(sigma, i):
            continue
        # <a,w> <= b  <=>  b - <a,w> >= 0
        vec = primitive_integer_vector([b] + [-x for x in a])
        key = tuple(vec)
        if key in seen:
            continue
        seen.add(key)
        out.append((key[0], key[1:]))
    return out


def format_generator(c: int, a: Sequence[int], names: Sequence[str]) -> str:
    num, den = [], []
    if c > 0:
        num.append("t" if c == 1 else f"t^{c}")
    elif c < 0:
        den.append("t" if c == -1 else f"t^{-c}")
    for k, name in zip(a, names):
        target = num if k > 0 else den
        if k:
            target.append(name if abs(k) == 1 else f"{name}^{abs(k)}")
    top = "*".join(num) or "1"
    return top + ("/" + "*".join(den) if len(den) == 1 else (f"/({'*'.join(den)})" if den else ""))


@dataclass
class ModelChart:
    names: list
    generators: list  # (c, a) per generator
    relation: str
    relation_exponents: tuple
    relation_t_power: int
    substitution: dict  # name -> string of t^c x^a
    content: tuple  # exponents of the factored monomial
    g_terms: list  # (exponent tuple in generators, coefficient string)
    components: dict = field(default_factory=dict)

    def g(self) -> str:
        return _format(self.g_terms, self.names)

    def content_monomial(self) -> str:
        return format_monomial(self.content, self.names) or "1"


def _coefficient_string(term) -> str:
    if term.generic:
        return "G"
    if term.lead_coeff is not None:
        return str(term.lead_coeff)
    return f"e({term.phase})"


def _format(terms, names) -> str:
    parts = []
    for e, cs in sorted(terms, key=lambda t: t[0], reverse=True):
        mono = format_monomial(e, names)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append("-" + mono)
        else:
            parts.append(f"{cs}*{mono}")
    return join_terms(parts)


def model_chart(f: TropicalPolynomial, sigma: Polyhedron) -> ModelChart:
    n = f.n
    if sigma.ambient_dim != n:
        raise ValueError("cell and polynomial live in different dimensions")
    gens = facet_generators(sigma)
    if len(gens) != n + 1:
        raise NonSmoothChartError(f"the cone over the cell has {len(gens)} rays; a smooth chart needs {n + 1}")
    mat = ExactMatrix([[c] + list(a) for c, a in gens])
    if abs(mat.det()) != 1:
        raise NonSmoothChartError(f"the cone over the cell is not smooth (determinant {mat.det()})")
    names = generator_names(len(gens))
    basis_t = mat.T
    rewritten = []
    for term in f.terms:
        e = basis_t.solve([term.valuation] + list(term.exponent))
        if e is None or any(Fraction(x).denominator != 1 for x in e):
            raise ValueError(f"term with exponent {term.exponent} is not a Laurent monomial in the chart generators")
        rewritten.append((tuple(int(x) for x in e), _coefficient_string(term)))
    content = tuple(min(e[k] for e, _ in rewritten) for k in range(len(gens)))
    g_terms = [(tuple(x - c for x, c in zip(e, content)), cs) for e, cs in rewritten]
    # the generators are dependent through their M-parts: prod u_k^{r_k} = t^{sum r_k c_k}
    ker = kernel_basis(ExactMatrix([list(a) for _, a in gens]).T).tolist()
    r = primitive_integer_vector(ker[0])
    power = int(sum(k * c for k, (c, _) in zip(r, gens)))
    if power < 0 or (power == 0 and min(r) < 0):
        r, power = [-x for x in r], -power
    lhs = "*".join(
        (names[k] if x == 1 else f"{names[k]}^{x}") for k, x in enumerate(r) if x > 0
    ) or "1"
    rhs_parts = [names[k] if -x == 1 else f"{names[k]}^{-x}" for k, x in enumerate(r) if x < 0]
    rhs = ("t" if power == 1 else f"t^{power}") if power else "1"
    if rhs_parts:
        rhs = "*".join(rhs_parts) + ("" if rhs == "1" else "*" + rhs)
    relation = f"{lhs} = {rhs}"
    subs = {name: format_generator(c, a, f.names) for name, (c, a) in zip(names, gens)}
    chart = ModelChart(names, gens, relation, tuple(r), power, subs, content, g_terms)
    for k, name in enumerate(names):
        keep = [(e, cs) for e, cs in g_terms if e[k] == 0]
        chart.components[name] = _format(keep, names)
    return chart


def substitute(chart: ModelChart, f: TropicalPolynomial) -> list:
    """Expand ``content * g`` back into ``(valuation, exponent, coefficient)`` triples."""
    out = []
    for e, cs in chart.g_terms:
        total = [x + c for x, c in zip(e, chart.content)]
        val = sum(k * c for k, (c, _) in zip(total, chart.generators))
        m = tuple(sum(k * a[i] for k, (_, a) in zip(total, chart.generators)) for i in range(f.n))
        out.append((Fraction(val), m, cs))
    return out
