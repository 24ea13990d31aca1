"""Cayley certificates for complete intersections and transverse stable intersections."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..polyhedra.matrix import rank_of
from ..polyhedra.normal_forms import lattice_index, saturated_basis
from ..polyhedra.polyhedron import PolyCell, PolyComplex, Polyhedron, relint_intersect, sub
from ..polyhedra.subdivision import normalized_volume, regular_subdivision
from .hypersurface import TropicalComplex, is_tropically_smooth, tropical_hypersurface
from .polynomial import Term, TropicalPolynomial

RESTRICTED_SUPPORT = "restricted support; Kummer-smooth case out of scope"


def simplex_points(n: int, d: int) -> list[tuple]:
    """Lattice points of ``d`` times the standard simplex in ``R^n``."""
    return [p for p in product(range(d + 1), repeat=n) if sum(p) <= d]


def cayley_points(n: int, supports: Sequence[Sequence[Sequence[int]]]) -> list[tuple]:
    r = len(supports)
    out = []
    for i, pts in enumerate(supports):
        e = tuple(1 if j == i else 0 for j in range(r))
        out.extend(tuple(p) + e for p in pts)
    return out


def cayley_polytope(n: int, degrees: Sequence[int]) -> Polyhedron:
    """Convex hull of the copies ``d_i * Simplex_n`` placed at the unit vectors ``e_{n+i}``."""
    if not degrees:
        raise ValueError("at least one degree is needed")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    corners = []
    for d in degrees:
        corners.append([tuple([0] * n)] + [tuple(d if j == k else 0 for j in range(n)) for k in range(n)])
    return Polyhedron.from_points(cayley_points(n, corners))


def newton_lattice_points(f: TropicalPolynomial) -> set:
    """Lattice points of the Newton polytope of ``f``."""
    exps = f.exponents
    poly = Polyhedron.from_points(exps)
    lo = [min(e[i] for e in exps) for i in range(f.n)]
    hi = [max(e[i] for e in exps) for i in range(f.n)]
    return {p for p in product(*[range(a, b + 1) for a, b in zip(lo, hi)]) if poly.contains(p)}


def check_full_support(f: TropicalPolynomial) -> int | None:
    """Require every lattice point of the Newton polytope to be a monomial of ``f``.

    Returns ``d`` when the Newton polytope is ``d`` times the standard
    simplex, otherwise ``None``.
    """
    exps = set(f.exponents)
    if exps != newton_lattice_points(f):
        raise ValueError(RESTRICTED_SUPPORT)
    d = max(sum(e) for e in exps)
    return d if min(min(e) for e in exps) >= 0 and exps == set(simplex_points(f.n, d)) else None


@dataclass
class IntersectionCell:
    supports: tuple  # per equation, indices of the terms in the mixed cell
    dim: int
    region: Polyhedron
    multiplicity: int

    @property
    def point(self):
        v = self.region.vertices()
        return v[0] if self.dim == 0 and v else None


@dataclass
class CIReport:
    smooth: bool
    hypersurfaces_smooth: list = field(default_factory=list)
    transverse: bool = False
    multiplicities_one: bool = False
    intersection: list = field(default_factory=list)
    degrees: list = field(default_factory=list)
    reason: str = ""
    non_stable: tuple | None = None  # (w region, per-equation initial supports)

    def points(self) -> list:
        return [c.point for c in self.intersection if c.dim == 0]

    def summary(self) -> str:
        if self.smooth:
            pts = len(self.points())
            return (f"certified: each hypersurface smooth, transverse intersection, "
                    f"{pts} intersection point(s) all of multiplicity 1" if pts else
                    "certified: each hypersurface smooth, transverse intersection, multiplicities 1")
        return f"not certified: {self.reason}"


def _mixed_region(system, parts) -> Polyhedron:
    n = system[0].n
    eqs, ineqs = [], []
    for f, part in zip(system, parts):
        s0 = part[0]
        m0, v0 = f.terms[s0].exponent, f.terms[s0].valuation
        for a in part[1:]:
            t = f.terms[a]
            eqs.append((sub(t.exponent, m0), v0 - t.valuation))
        for b, t in enumerate(f.terms):
            if b not in part:
                ineqs.append((sub(m0, t.exponent), t.valuation - v0))
    return Polyhedron(n, ineqs, eqs)


def certify_ci_smooth(system: Sequence[TropicalPolynomial]) -> CIReport:
    """Certify a complete intersection by a unimodular regular triangulation of its Cayley polytope."""
    system = list(system)
    if not system:
        raise ValueError("empty system")
    n = system[0].n
    if any(f.n != n for f in system):
        raise ValueError("all equations must use the same variables")
    r = len(system)
    if r > n:
        raise ValueError("more equations than variables")
    degrees = [check_full_support(f) for f in system]
    pts = cayley_points(n, [f.exponents for f in system])
    heights = [v for f in system for v in f.valuations]
    owner = [(i, k) for i, f in enumerate(system) for k in range(len(f.terms))]
    sub_div = regular_subdivision(pts, heights)
    top = max(c.dim for c in sub_div.cells)
    report = CIReport(False, degrees=degrees)
    for c in sub_div.cells:
        if c.dim != top:
            continue
        parts = [[k for j, k in (owner[p] for p in c.support) if j == i] for i in range(r)]
        if len(c.support) != c.dim + 1 or normalized_volume([pts[p] for p in c.support]) != 1:
            for i in range(r):
                for j in range(i + 1, r):
                    shared = {system[i].terms[a].exponent for a in parts[i]} & {
                        system[j].terms[b].exponent for b in parts[j]}
                    if len(shared) >= 2 and report.non_stable is None:
                        report.non_stable = (_mixed_region(system, parts), tuple(tuple(p) for p in parts))
            if not report.reason:
                report.reason = ("non-stable configuration: initial supports share two or more monomials"
                                 if report.non_stable else "the Cayley subdivision is not a unimodular triangulation")
    vertex_set = {p for c in sub_div.cells if c.dim == 0 for p in c.support}
    if not report.reason and len(vertex_set) != len(pts):
        report.reason = "some monomial is not a vertex of the Cayley subdivision"
    if report.reason:
        return report
    report.smooth = True
    report.hypersurfaces_smooth = [is_tropically_smooth(f).smooth for f in system]
    for c in sub_div.cells:
        parts = [[k for j, k in (owner[p] for p in c.support) if j == i] for i in range(r)]
        if any(len(p) < 2 for p in parts):
            continue
        k = sum(len(p) - 1 for p in parts)
        if k > n:
            continue
        dirs = [sub(system[i].terms[a].exponent, system[i].terms[p[0]].exponent)
                for i, p in enumerate(parts) for a in p[1:]]
        mult = lattice_index([[int(x) for x in d] for d in dirs])
        report.intersection.append(IntersectionCell(tuple(tuple(p) for p in parts), n - k,
                                                    _mixed_region(system, parts), mult))
    report.intersection.sort(key=lambda c: (c.dim, c.supports))
    report.transverse = True
    report.multiplicities_one = all(c.multiplicity == 1 for c in report.intersection)
    if not all(report.hypersurfaces_smooth) or not report.multiplicities_one:
        raise RuntimeError("unimodular Cayley triangulation with non-unimodular mixed cell")
    return report


# ---------------------------------------------------------------------------
# transverse stable intersection


class NonTransverseError(ValueError):
    pass


def _face_closure(c: PolyComplex) -> dict:
    out: dict[int, set] = {}
    for cell in sorted(c.cells, key=lambda x: x.dim):
        s = {cell.id}
        for f in cell.faces:
            s |= out[f]
        out[cell.id] = s
    return out


def _meet(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    return Polyhedron(p.ambient_dim, p.inequalities + q.inequalities, p.equalities + q.equalities)


def stable_intersection_transverse(t1: TropicalComplex, t2: TropicalComplex) -> TropicalComplex:
    """Intersection of two tropical cycles meeting transversely everywhere."""
    n = t1.ambient_dim
    if t2.ambient_dim != n:
        raise ValueError("ambient dimensions differ")
    pairs = []
    for a in t1.cells.cells:
        for b in t2.cells.cells:
            if not relint_intersect(a.polyhedron, b.polyhedron):
                continue
            if rank_of(a.directions() + b.directions() or [[0] * n]) != n:
                raise NonTransverseError(f"cells {a.id} and {b.id} meet without spanning the ambient space")
            pairs.append((a, b))
    top = t1.dimension + t2.dimension - n
    cl1, cl2 = _face_closure(t1.cells), _face_closure(t2.cells)
    pairs.sort(key=lambda ab: (-(ab[0].dim + ab[1].dim), ab[0].id, ab[1].id))
    ids = {(a.id, b.id): i for i, (a, b) in enumerate(pairs)}
    cells, weights = [], {}
    for a, b in pairs:
        dim = a.dim + b.dim - n
        poly = _meet(a.polyhedron, b.polyhedron)
        faces = tuple(sorted(
            ids[(x.id, y.id)] for x, y in pairs
            if x.dim + y.dim - n == dim - 1 and x.id in cl1[a.id] and y.id in cl2[b.id]
        ))
        i = ids[(a.id, b.id)]
        cells.append(PolyCell(i, dim, tuple(poly.vertices()), tuple(poly.rays()), faces, tuple(poly.lineality()),
                              label=(a.id, b.id), _poly=poly))
        if dim == top:
            lat = saturated_basis(a.directions(), n) + saturated_basis(b.directions(), n)
            weights[i] = t1.weights[a.id] * t2.weights[b.id] * lattice_index(lat)
    return TropicalComplex(n, PolyComplex(n, cells), weights, {})


def intersect_hypersurfaces(system: Sequence[TropicalPolynomial]) -> TropicalComplex:
    """Iterated transverse stable intersection of the hypersurfaces of ``system``."""
    out = tropical_hypersurface(system[0])
    for f in system[1:]:
        out = stable_intersection_transverse(out, tropical_hypersurface(f))
    return out


def cayley_system(n: int, degrees: Sequence[int], heights: Sequence) -> list[TropicalPolynomial]:
    """Polynomials with support ``d_i * Simplex_n`` and valuations ``heights``.

    ``heights`` lists one value per lattice point, equation by equation,
    each block in the order of :func:`simplex_points`.
    """
    cayley_polytope(n, degrees)
    blocks = [simplex_points(n, d) for d in degrees]
    if len(heights) != sum(len(b) for b in blocks):
        raise ValueError(f"expected {sum(len(b) for b in blocks)} heights, got {len(heights)}")
    out = []
    pos = 0
    for pts in blocks:
        terms = [Term(tuple(p), Fraction(h)) for p, h in zip(pts, heights[pos:pos + len(pts)])]
        pos += len(pts)
        out.append(TropicalPolynomial(n, terms))
    return out


def find_unimodular_heights(n: int, degrees: Sequence[int], seed: int = 0, tries: int = 200,
                            spread: int = 12) -> list[int] | None:
    """Search integer heights whose Cayley subdivision certifies; ``None`` if none found."""
    rng = random.Random(seed)
    count = sum(len(simplex_points(n, d)) for d in degrees)
    for _ in range(tries):
        heights = [rng.randint(0, spread) for _ in range(count)]
        if certify_ci_smooth(cayley_system(n, degrees, heights)).smooth:
            return heights
    return None
