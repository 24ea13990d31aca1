"""Linear ideals in Laurent rings and their hyperplane arrangements.

A linear ideal is generated by forms ``sum_j a_j chi^{e_j}`` over a fixed
list of monomials ``e_0, ..., e_m``.  Writing ``z_j = chi^{e_j}`` the
variety is the intersection of the torus ``(C^*)^{m+1} / C^*`` with the
linear space ``ker A``; a basis ``B`` of that kernel (``A B^T = 0``)
parametrises it by ``P^d``, and column ``j`` of ``B`` is the linear form
cutting out the hyperplane ``z_j = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..gaussian import GaussQ
from ..parsing import ParseError, parse_terms, variable_order
from ..polyhedra.matrix import ExactMatrix, kernel_basis, primitive_integer_vector
from ..polyhedra.normal_forms import lattice_index
from ..tropical.polynomial import format_monomial, join_terms


class ArrangementError(ValueError):
    pass


def _is_zero(x) -> bool:
    return not x


def _coeff_str(c: GaussQ) -> str:
    return str(c.re) if c.is_real() else str(c)


@dataclass(frozen=True)
class LinearIdeal:
    """Generators as rows of ``matrix`` over the monomial list ``monomials``."""

    n: int
    names: tuple
    monomials: tuple  # exponent vectors, in order of first appearance
    rows: tuple  # one tuple of GaussQ coefficients per generator

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "LinearIdeal":
        """Generators separated by ``;``, e.g. ``"1 + x + y"`` or ``"x1 - 2; x2 + i*x1"``."""
        pieces = [p for p in text.split(";") if p.strip()]
        if not pieces:
            raise ParseError("no generators given")
        parsed = [parse_terms(p) for p in pieces]
        names = set()
        for terms in parsed:
            for t in terms:
                if t.t_power or t.generic or t.phase:
                    raise ParseError("linear ideals take constant Gaussian-rational coefficients")
                names.update(t.exponents)
        order = variable_order(names, n)
        monos: list[tuple] = []
        gens = []
        for terms in parsed:
            gen: dict = {}
            for t in terms:
                e = tuple(t.exponents.get(v, 0) for v in order)
                if e not in monos:
                    monos.append(e)
                gen[e] = gen.get(e, GaussQ(0)) + t.coefficient
            gens.append(gen)
        rows = tuple(tuple(g.get(e, GaussQ(0)) for e in monos) for g in gens)
        return cls(len(order), tuple(order), tuple(monos), rows)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence], monomials: Sequence[Sequence[int]] | None = None,
                    names: Sequence[str] | None = None) -> "LinearIdeal":
        """Ideal with generator coefficients ``rows``; default monomials ``1, x1, ..., xm``."""
        rows = [tuple(GaussQ.coerce(x) for x in r) for r in rows]
        width = len(rows[0])
        if monomials is None:
            m = width - 1
            monomials = [tuple(1 if i == j - 1 else 0 for i in range(m)) for j in range(width)]
        monomials = [tuple(e) for e in monomials]
        n = len(monomials[0])
        if names is None:
            names = ["x", "y", "z"][:n] if n <= 3 else [f"x{k}" for k in range(1, n + 1)]
        return cls(n, tuple(names), tuple(monomials), tuple(rows))

    @property
    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.rows, cols=len(self.monomials))

    def generator_strings(self) -> list[str]:
        out = []
        for row in self.rows:
            parts = []
            for e, c in zip(self.monomials, row):
                if _is_zero(c):
                    continue
                mono = format_monomial(e, self.names)
                cs = _coeff_str(c)
                if not mono:
                    parts.append(cs)
                elif cs == "1":
                    parts.append(mono)
                elif cs == "-1":
                    parts.append("-" + mono)
                else:
                    parts.append(f"{cs}*{mono}")
            out.append(join_terms(parts))
        return out

    def __str__(self) -> str:
        return "<" + "; ".join(self.generator_strings()) + ">"

    def saturated_generators(self) -> list[bool]:
        """Per generator: do its exponent differences span a saturated sublattice?"""
        out = []
        for row in self.rows:
            es = [e for e, c in zip(self.monomials, row) if not _is_zero(c)]
            diffs = [[a - b for a, b in zip(e, es[0])] for e in es[1:]]
            diffs = [d for d in diffs if any(d)]
            out.append(not diffs or lattice_index(diffs) == 1)
        return out

    def same_ideal(self, other: "LinearIdeal") -> bool:
        """Equal monomial sets and equal row spaces."""
        if set(self.monomials) != set(other.monomials) or self.n != other.n:
            return False
        cols = sorted(set(self.monomials))
        return _row_space(self, cols) == _row_space(other, cols)

    def evaluate(self, z: Sequence) -> list:
        """Each generator evaluated at monomial values ``z``."""
        return [sum((c * x for c, x in zip(row, z)), GaussQ(0)) for row in self.rows]


def _row_space(ideal: LinearIdeal, cols: list) -> tuple:
    pos = [ideal.monomials.index(e) for e in cols]
    m = ExactMatrix([[row[p] for p in pos] for row in ideal.rows], cols=len(cols))
    red, piv = m.rref()
    return tuple(tuple(red.row(i)) for i in range(len(piv)))


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes ``H_j`` (columns of ``embedding``) on ``P^d``."""

    dim: int  # d, so hyperplanes are linear forms in d + 1 variables
    embedding: ExactMatrix  # B, shape (d+1) x (m+1)
    essential: bool

    @property
    def hyperplanes(self) -> list[tuple]:
        return [tuple(self.embedding.column(j)) for j in range(self.embedding.cols)]

    def evaluate(self, p: Sequence) -> list:
        """``[H_0(p) : ... : H_m(p)]`` for a point ``p`` of ``C^{d+1}``."""
        return [sum((GaussQ.coerce(h) * x for h, x in zip(col, p)), GaussQ(0)) for col in self.hyperplanes]


def _kernel_rows(a: ExactMatrix) -> ExactMatrix:
    rows = kernel_basis(a, integral=False).tolist()
    if all(isinstance(x, Fraction) or (isinstance(x, GaussQ) and x.is_real()) for r in rows for x in r):
        rows = [primitive_integer_vector([x.re if isinstance(x, GaussQ) else x for x in r]) for r in rows]
    return ExactMatrix(rows, cols=a.cols)


def arrangement_from_ideal(ideal: LinearIdeal) -> Arrangement:
    """Kernel matrix ``B`` with ``A B^T = 0``; its columns are the hyperplanes."""
    a = ideal.matrix
    k = a.rank()
    if k < a.rows:
        raise ArrangementError(f"the {a.rows} generators are linearly dependent (rank {k})")
    if k == a.cols:
        raise ArrangementError("the generators have no common zero in the torus (the linear space is trivial)")
    b = _kernel_rows(a)
    zero = [j for j in range(b.cols) if all(_is_zero(x) for x in b.column(j))]
    if zero:
        names = [format_monomial(ideal.monomials[j], ideal.names) or "1" for j in zero]
        raise ArrangementError(f"the ideal forces monomial(s) {', '.join(names)} to vanish: no torus points")
    return Arrangement(b.rows - 1, b, True)


def is_essential(ideal: LinearIdeal) -> bool:
    """Kernel matrix has full row rank ``d + 1`` and no zero column."""
    try:
        arr = arrangement_from_ideal(ideal)
    except ArrangementError:
        return False
    return arr.embedding.rank() == arr.dim + 1


# ---------------------------------------------------------------------------
# circuits and initial ideals


def _normalize(v: list) -> tuple:
    if all(isinstance(x, Fraction) or (isinstance(x, GaussQ) and x.is_real()) for x in v):
        ints = primitive_integer_vector([x.re if isinstance(x, GaussQ) else x for x in v])
        lead = next(x for x in ints if x)
        return tuple(GaussQ(x if lead > 0 else -x) for x in ints)
    lead = next(x for x in v if not _is_zero(x))
    return tuple(GaussQ.coerce(x) / lead for x in v)


def circuits(ideal: LinearIdeal) -> list[tuple]:
    """Forms of minimal support in the span of the generators, by support size then position."""
    a = ideal.matrix
    cols = a.cols
    out = []
    for size in range(1, cols + 1):
        for support in combinations(range(cols), size):
            rest = [j for j in range(cols) if j not in support]
            # y with (y A)_j = 0 off the support
            if rest:
                constraint = ExactMatrix([[a[i, j] for i in range(a.rows)] for j in rest], cols=a.rows)
                ys = kernel_basis(constraint, integral=False).tolist()
            else:
                ys = ExactMatrix.identity(a.rows).tolist()
            if len(ys) != 1:
                continue
            y = ys[0]
            v = [sum((y[i] * a[i, j] for i in range(a.rows)), GaussQ(0)) for j in range(cols)]
            if {j for j in range(cols) if not _is_zero(v[j])} == set(support):
                out.append(_normalize(v))
    return out


def initial_linear_ideal(ideal: LinearIdeal, w: Sequence) -> LinearIdeal:
    """Ideal spanned by the initial forms (lowest ``<e, w>``) of all circuits."""
    w = [Fraction(x) for x in w]
    if len(w) != ideal.n:
        raise ValueError(f"weight has length {len(w)}, expected {ideal.n}")
    weights = [sum((Fraction(e) * x for e, x in zip(m, w)), Fraction(0)) for m in ideal.monomials]
    chosen: list[tuple] = []
    for c in circuits(ideal):
        low = min(weights[j] for j, x in enumerate(c) if not _is_zero(x))
        form = tuple(x if weights[j] == low else GaussQ(0) for j, x in enumerate(c))
        if ExactMatrix(chosen + [form], cols=len(form)).rank() > len(chosen):
            chosen.append(form)
    used = [j for j in range(len(ideal.monomials)) if any(not _is_zero(r[j]) for r in chosen)]
    monos = tuple(ideal.monomials[j] for j in used)
    rows = tuple(tuple(r[j] for j in used) for r in chosen)
    return LinearIdeal(ideal.n, ideal.names, monos, rows)
