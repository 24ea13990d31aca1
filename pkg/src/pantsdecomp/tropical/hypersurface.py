"""Tropical hypersurfaces, balancing and smoothness certificates."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from ..polyhedra.matrix import ExactMatrix, kernel_basis, primitive_integer_vector, rank_of
from ..polyhedra.normal_forms import saturated_basis
from ..polyhedra.polyhedron import PolyCell, PolyComplex, Polyhedron, dot, sub
from ..polyhedra.serialize import complex_to_json
from ..polyhedra.subdivision import normalized_volume, regular_subdivision
from .polynomial import TropicalPolynomial


@dataclass
class TropicalComplex:
    """A weighted polyhedral complex; ``weights`` live on the maximal cells."""

    ambient_dim: int
    cells: PolyComplex
    weights: dict = field(default_factory=dict)
    per_cell_initial: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return max((c.dim for c in self.cells.cells), default=-1)

    def maximal_cells(self) -> list[PolyCell]:
        return [c for c in self.cells.cells if c.dim == self.dimension]

    def vertices(self) -> list[tuple]:
        return sorted(c.vertices[0] for c in self.cells.cells_of_dim(0))

    def to_json(self) -> dict:
        out = complex_to_json(self.cells)
        out["weights"] = {str(k): v for k, v in sorted(self.weights.items())}
        out["initial"] = {str(k): str(v) for k, v in sorted(self.per_cell_initial.items())}
        return out


def dual_cell(f: TropicalPolynomial, support: Sequence[int]) -> Polyhedron:
    """Weights ``w`` at which exactly the terms in ``support`` (at least) attain the minimum."""
    s0 = support[0]
    m0, v0 = f.terms[s0].exponent, f.terms[s0].valuation
    eqs = []
    for a in support[1:]:
        t = f.terms[a]
        eqs.append((sub(t.exponent, m0), v0 - t.valuation))
    ineqs = []
    rest = set(support)
    for b, t in enumerate(f.terms):
        if b not in rest:
            ineqs.append((sub(m0, t.exponent), t.valuation - v0))
    return Polyhedron(f.n, ineqs, eqs)


def tropical_hypersurface(f: TropicalPolynomial) -> TropicalComplex:
    """Cells dual to the positive-dimensional cells of the regular subdivision."""
    n = f.n
    if len(f.terms) < 2:
        warnings.warn("a single term has empty tropical hypersurface")
        return TropicalComplex(n, PolyComplex(n, []))
    sub_div = regular_subdivision(f.exponents, f.valuations)
    duals = [c for c in sub_div.cells if c.dim >= 1]
    # larger subdivision cells give smaller tropical cells
    duals.sort(key=lambda c: (-c.dim, c.support))
    ids = {c.support: i for i, c in enumerate(duals)}
    cells = []
    weights = {}
    initial = {}
    for c in duals:
        p = dual_cell(f, list(c.support))
        verts = tuple(p.vertices())
        faces = tuple(
            sorted(ids[d.support] for d in duals if d.dim == c.dim + 1 and set(c.support) < set(d.support))
        )
        i = ids[c.support]
        cell = PolyCell(i, n - c.dim, verts, tuple(p.rays()), faces, tuple(p.lineality()), c.support,
                        label=tuple(c.vertices), _poly=p)
        cells.append(cell)
        initial[i] = f.residue_polynomial(c.support)
        if c.dim == 1:
            a, b = c.vertices
            weights[i] = math.gcd(*[int(x) for x in sub(b, a)])
    return TropicalComplex(n, PolyComplex(n, cells), weights, initial)


# ---------------------------------------------------------------------------
# balancing


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _solve_unit(phi: Sequence[int]) -> list[int]:
    """Integer ``c`` with ``<phi, c> = 1`` for a primitive ``phi``."""
    c = [0] * len(phi)
    g = 0
    for k, p in enumerate(phi):
        if p == 0:
            continue
        if g == 0:
            g, c[k] = abs(p), (1 if p > 0 else -1)
            continue
        g2, x, y = _ext_gcd(g, p)
        c = [x * v for v in c]
        c[k] = y
        g = g2
    if g != 1:
        raise ValueError("functional is not primitive")
    return c


def primitive_normal(sigma: PolyCell, tau: PolyCell, n: int) -> tuple:
    """Lattice generator of ``N_sigma / N_tau`` pointing from ``tau`` into ``sigma``."""
    basis = saturated_basis(sigma.directions(), n)
    tau_dirs = tau.directions()
    B = ExactMatrix(basis, cols=n).T  # columns: lattice basis of N_sigma

    def coords(v):
        return B.solve(list(v))

    tau_coords = [coords(v) for v in tau_dirs]
    d = len(basis)
    if tau_coords and any(any(x) for x in tau_coords):
        phi = kernel_basis(ExactMatrix(tau_coords, cols=d)).tolist()
    else:
        phi = [[1]] if d == 1 else None
    if not phi or len(phi) != 1:
        raise ValueError("tau is not a facet of sigma")
    phi = primitive_integer_vector(phi[0])
    inward = coords(sub(sigma.relative_interior_point(), tau.relative_interior_point()))
    if dot(phi, inward) < 0:
        phi = [-x for x in phi]
    c = _solve_unit(phi)
    return tuple(int(sum(b[i] * c[k] for k, b in enumerate(basis))) for i in range(n))


@dataclass
class BalancingEntry:
    tau: int
    terms: list  # (weight, primitive vector)
    total: tuple
    balanced: bool
    point: tuple = ()

    def formula(self) -> str:
        def angle(term):
            v = term[1]
            return math.atan2(float(v[1]), float(v[0])) if len(v) == 2 else 0.0

        ordered = sorted(self.terms, key=lambda t: (angle(t), t[1]))
        lhs = "+".join(f"{m}·({','.join(str(x) for x in u)})" for m, u in ordered)
        return lhs + ("=0" if self.balanced else f"={tuple(self.total)}")


def check_balanced(t: TropicalComplex):
    """Balancing at every codimension-one cell.

    Returns ``(ok, certificate)``.  A codimension-one cell is balanced
    when the weighted sum of primitive normals lies in its own span.
    """
    top = t.dimension
    n = t.ambient_dim
    cert = []
    ok = True
    for tau in t.cells.cells_of_dim(top - 1):
        terms = []
        for sigma in t.cells.cells:
            if sigma.dim == top and tau.id in sigma.faces:
                terms.append((t.weights[sigma.id], primitive_normal(sigma, tau, n)))
        total = tuple(sum(m * u[i] for m, u in terms) for i in range(n))
        tdirs = tau.directions()
        if tdirs:
            good = rank_of(tdirs + [total]) == rank_of(tdirs)
        else:
            good = not any(total)
        pt = tau.vertices[0] if tau.dim == 0 else tau.relative_interior_point()
        cert.append(BalancingEntry(tau.id, terms, total, good, tuple(pt)))
        ok = ok and good
    return ok, cert


# ---------------------------------------------------------------------------
# smoothness


def chart_basis(f: TropicalPolynomial, support: Sequence[int]) -> tuple[int, list[tuple]]:
    """Base monomial (first in input order) and the differences to the others, descending."""
    m0 = min(support)
    e0 = f.terms[m0].exponent
    diffs = sorted((tuple(a - b for a, b in zip(f.terms[k].exponent, e0)) for k in support if k != m0), reverse=True)
    return m0, diffs


@dataclass
class SmoothnessReport:
    smooth: bool
    witnesses: dict  # vertex w -> (support, basis, normalized volume)
    counterexample: tuple | None = None  # (w, initial form, reason)


def is_tropically_smooth(f: TropicalPolynomial) -> SmoothnessReport:
    """True iff the dual subdivision is a unimodular triangulation using every monomial."""
    if len(f.terms) < 2:
        return SmoothnessReport(True, {})
    sub_div = regular_subdivision(f.exponents, f.valuations)
    top = max(c.dim for c in sub_div.cells)
    witnesses = {}
    bad = None
    for c in sub_div.cells:
        if c.dim != top:
            continue
        w = dual_cell(f, list(c.support))
        pts = w.vertices()
        key = pts[0] if pts else ()
        reason = None
        if len(c.support) != c.dim + 1:
            reason = "dual cell is not a simplex"
        else:
            vol = normalized_volume([f.terms[k].exponent for k in c.support])
            if vol != 1:
                reason = f"dual simplex has normalized volume {vol}"
        if reason is None:
            m0, basis = chart_basis(f, c.support)
            witnesses[key] = (c.support, basis, 1)
        elif bad is None:
            bad = (key, str(f.residue_polynomial(c.support)), reason)
    used = {k for c in sub_div.cells for k in c.support if c.dim == 0}
    if bad is None and len(used) != len(f.terms):
        missing = sorted(set(range(len(f.terms))) - used)
        bad = ((), "", f"monomials {missing} are not vertices of the subdivision")
    return SmoothnessReport(bad is None, witnesses, bad)
