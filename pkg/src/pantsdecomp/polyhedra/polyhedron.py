"""Convex polyhedra with exact H- and V-representations.

Vertex and ray enumeration is done by brute force over subsets of the
defining constraints.  That is exponential in the worst case, but the
polyhedra handled by this package live in dimension at most about eight
with a few dozen constraints, where it is fast and easy to audit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .lp import INFEASIBLE, linprog, max_slack
from .matrix import ExactMatrix, as_fraction, kernel_basis, primitive_integer_vector, rank_of

Vector = tuple


def vec(v: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in v)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (−1 for the empty set)."""
    points = list(points)
    if not points:
        return -1
    p0 = points[0]
    return rank_of([sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


class Polyhedron:
    """``{x : <a,x> <= b for (a,b) in inequalities, <a,x> = b for equalities}``."""

    def __init__(
        self,
        ambient_dim: int,
        inequalities: Iterable[tuple[Sequence, object]] = (),
        equalities: Iterable[tuple[Sequence, object]] = (),
        vertices: Iterable[Sequence] | None = None,
        rays: Iterable[Sequence] | None = None,
    ):
        self.ambient_dim = ambient_dim
        self.inequalities = tuple((vec(a), as_fraction(b)) for a, b in inequalities)
        self.equalities = tuple((vec(a), as_fraction(b)) for a, b in equalities)
        for a, _ in self.inequalities + self.equalities:
            if len(a) != ambient_dim:
                raise ValueError("constraint of wrong length")
        self._vertices = None if vertices is None else tuple(sorted({vec(v) for v in vertices}))
        self._rays = None if rays is None else tuple(sorted({tuple(primitive_integer_vector(r)) for r in rays}))
        self._lineality = None

    # construction from generators -------------------------------------------------
    @classmethod
    def from_points(cls, points: Iterable[Sequence], rays: Iterable[Sequence] = ()) -> "Polyhedron":
        """Convex hull of ``points`` plus the cone spanned by ``rays``."""
        points = sorted({vec(p) for p in points})
        rays = [vec(r) for r in rays if any(r)]
        if not points:
            raise ValueError("a polyhedron needs at least one point")
        n = len(points[0])
        gens = [(Fraction(1),) + p for p in points] + [(Fraction(0),) + r for r in rays]
        span_dim = rank_of(gens)
        ortho = kernel_basis(ExactMatrix(gens, cols=n + 1)).tolist()
        equalities = []
        for w in ortho:
            equalities.append(([-x for x in w[1:]], w[0]))
        inequalities = []
        seen = set()
        if span_dim >= 2:
            for subset in combinations(range(len(gens)), span_dim - 1):
                rows = [gens[i] for i in subset]
                if rank_of(rows) != span_dim - 1:
                    continue
                k = kernel_basis(ExactMatrix(rows + ortho, cols=n + 1)).tolist()
                if len(k) != 1:
                    continue
                nu = k[0]
                vals = [dot(nu, g) for g in gens]
                if all(v >= 0 for v in vals):
                    pass
                elif all(v <= 0 for v in vals):
                    nu = [-x for x in nu]
                else:
                    continue
                key = tuple(nu)
                if key in seen:
                    continue
                seen.add(key)
                inequalities.append(([-x for x in nu[1:]], nu[0]))
        inequalities.sort(key=lambda ab: (tuple(ab[0]), ab[1]))
        poly = cls(n, inequalities, equalities)
        bounded = not rays
        if bounded:
            verts = [p for p in points if poly._is_vertex(p)]
            poly._vertices = tuple(sorted(verts))
            poly._rays = ()
        return poly

    def _is_vertex(self, p) -> bool:
        rows = [a for a, _ in self.equalities] + [a for a, b in self.inequalities if dot(a, p) == b]
        return rank_of(rows) == self.ambient_dim if rows else self.ambient_dim == 0

    # basic queries -----------------------------------------------------------------
    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        return all(dot(a, x) <= b for a, b in self.inequalities) and all(
            dot(a, x) == b for a, b in self.equalities
        )

    def relative_interior_contains(self, x: Sequence) -> bool:
        x = vec(x)
        if not all(dot(a, x) == b for a, b in self.equalities):
            return False
        implicit = self.implicit_equalities()
        return all(dot(a, x) < b for i, (a, b) in enumerate(self.inequalities) if i not in implicit) and all(
            dot(a, x) == b for i, (a, b) in enumerate(self.inequalities) if i in implicit
        )

    def implicit_equalities(self) -> set[int]:
        """Indices of inequalities that hold with equality on the whole set."""
        if getattr(self, "_implicit", None) is not None:
            return self._implicit
        out = set()
        for i, (a, b) in enumerate(self.inequalities):
            res = linprog([-x for x in a], [x[0] for x in self.inequalities], [x[1] for x in self.inequalities],
                          [x[0] for x in self.equalities], [x[1] for x in self.equalities])
            if res.status == INFEASIBLE:
                out = set(range(len(self.inequalities)))
                break
            # minimise <a,x>; if the minimum equals b the inequality is tight everywhere
            if res.status != "unbounded" and -res.value == b:
                out.add(i)
        self._implicit = out
        return out

    def is_empty(self) -> bool:
        return not lp_feasible(self)

    def lineality(self) -> tuple:
        if self._lineality is None:
            normals = [a for a, _ in self.inequalities + self.equalities]
            if not normals:
                basis = [[1 if i == j else 0 for j in range(self.ambient_dim)] for i in range(self.ambient_dim)]
            else:
                basis = kernel_basis(ExactMatrix(normals, cols=self.ambient_dim)).to_int_list()
            self._lineality = tuple(tuple(b) for b in basis)
        return self._lineality

    def _pointed_system(self):
        eqs = [a for a, _ in self.equalities] + [vec(l) for l in self.lineality()]
        eq_rhs = [b for _, b in self.equalities] + [Fraction(0)] * len(self.lineality())
        return eqs, eq_rhs

    def vertices(self) -> tuple:
        """Vertices of the pointed part (orthogonal to the lineality space)."""
        if self._vertices is not None:
            return self._vertices
        n = self.ambient_dim
        eqs, eq_rhs = self._pointed_system()
        base_rank = rank_of(eqs) if eqs else 0
        need = n - base_rank
        found = set()
        ineqs = self.inequalities
        for subset in combinations(range(len(ineqs)), need):
            rows = eqs + [ineqs[i][0] for i in subset]
            rhs = eq_rhs + [ineqs[i][1] for i in subset]
            if rows and rank_of(rows) != n:
                continue
            if not rows:
                x = ()
            else:
                x = ExactMatrix(rows, cols=n).solve(rhs)
                if x is None:
                    continue
                x = tuple(x)
            if all(dot(a, x) <= b for a, b in ineqs):
                found.add(x)
        self._vertices = tuple(sorted(found))
        return self._vertices

    def rays(self) -> tuple:
        """Extreme rays (primitive integer vectors) of the pointed recession cone."""
        if self._rays is not None:
            return self._rays
        n = self.ambient_dim
        eqs, _ = self._pointed_system()
        base_rank = rank_of(eqs) if eqs else 0
        need = n - 1 - base_rank
        found = set()
        ineqs = [a for a, _ in self.inequalities]
        if need >= 0:
            for subset in combinations(range(len(ineqs)), need):
                rows = eqs + [ineqs[i] for i in subset]
                if rows:
                    k = kernel_basis(ExactMatrix(rows, cols=n)).tolist()
                else:
                    k = [[1]] if n == 1 else []
                if len(k) != 1:
                    continue
                r = k[0]
                for s in (1, -1):
                    cand = [s * x for x in r]
                    if all(dot(a, cand) <= 0 for a in ineqs):
                        found.add(tuple(primitive_integer_vector(cand)))
        self._rays = tuple(sorted(found))
        return self._rays

    def is_bounded(self) -> bool:
        return not self.rays() and not self.lineality()

    def dim(self) -> int:
        if self.is_empty():
            return -1
        pts = list(self.vertices())
        dirs = [sub(p, pts[0]) for p in pts[1:]] + [vec(r) for r in self.rays()] + [vec(l) for l in self.lineality()]
        return rank_of(dirs) if dirs else 0

    def __repr__(self) -> str:
        return f"Polyhedron(dim={self.ambient_dim}, ineqs={len(self.inequalities)}, eqs={len(self.equalities)})"


def lp_feasible(p: Polyhedron) -> bool:
    """Exact emptiness test by phase-one simplex."""
    n = p.ambient_dim
    res = linprog(
        [0] * n,
        [a for a, _ in p.inequalities],
        [b for _, b in p.inequalities],
        [a for a, _ in p.equalities],
        [b for _, b in p.equalities],
    )
    return res.status != INFEASIBLE


def relint_intersect(p: Polyhedron, q: Polyhedron) -> bool:
    """Whether the relative interiors of two polyhedra meet."""
    n = p.ambient_dim
    ineqs, rhs, strict, eqs, eq_rhs = [], [], [], [], []
    for poly in (p, q):
        implicit = poly.implicit_equalities()
        for i, (a, b) in enumerate(poly.inequalities):
            if i in implicit:
                eqs.append(a)
                eq_rhs.append(b)
            else:
                ineqs.append(a)
                rhs.append(b)
                strict.append(True)
        for a, b in poly.equalities:
            eqs.append(a)
            eq_rhs.append(b)
    if not ineqs:
        return linprog([0] * n, [], [], eqs, eq_rhs).status != INFEASIBLE
    s = max_slack(ineqs, rhs, eqs, eq_rhs, strict, n=n)
    return s is not None and s > 0


@dataclass
class PolyCell:
    """A cell of a polyhedral complex given by generators."""

    id: int
    dim: int
    vertices: tuple
    rays: tuple = ()
    faces: tuple = ()
    lineality: tuple = ()
    support: tuple = ()
    label: object = None
    _poly: Polyhedron | None = field(default=None, repr=False, compare=False)

    @property
    def polyhedron(self) -> Polyhedron:
        if self._poly is None:
            self._poly = Polyhedron.from_points(self.vertices, list(self.rays) + list(self.lineality)
                                                + [tuple(-x for x in l) for l in self.lineality])
        return self._poly

    def relative_interior_point(self) -> Vector:
        verts = [vec(v) for v in self.vertices]
        k = len(verts)
        n = len(verts[0])
        p = tuple(sum((v[i] for v in verts), Fraction(0)) / k for i in range(n))
        for r in self.rays:
            p = tuple(x + y for x, y in zip(p, r))
        return p

    def directions(self) -> list:
        verts = [vec(v) for v in self.vertices]
        out = [sub(v, verts[0]) for v in verts[1:]] + [vec(r) for r in self.rays] + [vec(l) for l in self.lineality]
        return out


@dataclass
class PolyComplex:
    ambient_dim: int
    cells: list = field(default_factory=list)

    @property
    def face_relation(self) -> list[tuple[int, int]]:
        return [(c.id, f) for c in self.cells for f in c.faces]

    def cells_of_dim(self, d: int) -> list[PolyCell]:
        return [c for c in self.cells if c.dim == d]

    def f_vector(self) -> tuple:
        if not self.cells:
            return ()
        top = max(c.dim for c in self.cells)
        return tuple(len(self.cells_of_dim(d)) for d in range(top + 1))

    def maximal_cells(self) -> list[PolyCell]:
        covered = {f for c in self.cells for f in c.faces}
        return [c for c in self.cells if c.id not in covered]

    def by_id(self, i: int) -> PolyCell:
        return self.cells[i]


def face_lattice(p: Polyhedron) -> PolyComplex:
    """All non-empty faces of a bounded polytope with their facet relation."""
    if not p.is_bounded():
        raise ValueError("face_lattice requires a bounded polyhedron")
    verts = p.vertices()
    if not verts:
        return PolyComplex(p.ambient_dim, [])
    tight = []
    for v in verts:
        tight.append(frozenset(i for i, (a, b) in enumerate(p.inequalities) if dot(a, v) == b))
    sets = set(tight)
    frontier = set(tight)
    while frontier:
        new = set()
        for s in frontier:
            for t in tight:
                u = s & t
                if u not in sets:
                    new.add(u)
        sets |= new
        frontier = new
    faces = {}
    for s in sets:
        vs = frozenset(j for j, t in enumerate(tight) if t >= s)
        faces[vs] = None
    faces[frozenset(range(len(verts)))] = None
    ordered = sorted(faces, key=lambda vs: (affine_rank([verts[j] for j in vs]), sorted(vs)))
    dims = {vs: affine_rank([verts[j] for j in vs]) for vs in ordered}
    ids = {vs: i for i, vs in enumerate(ordered)}
    cells = []
    for vs in ordered:
        d = dims[vs]
        facets = tuple(ids[w] for w in ordered if dims[w] == d - 1 and w < vs)
        cells.append(PolyCell(ids[vs], d, tuple(verts[j] for j in sorted(vs)), faces=facets))
    return PolyComplex(p.ambient_dim, cells)


def minkowski_sum_points(segments: Sequence[Sequence[Sequence]]) -> list[Vector]:
    """All sums choosing one generator from each list."""
    pts = [tuple(Fraction(0) for _ in segments[0][0])]
    for seg in segments:
        pts = list({tuple(a + b for a, b in zip(p, q)) for p in pts for q in map(vec, seg)})
    return pts
