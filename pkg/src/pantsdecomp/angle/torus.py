"""Periodic polyhedral complexes on real tori ``R^n / L``.

A cell is stored once, through its canonical lift: among all lattice
translates of its vertex set, the one obtained by moving some vertex into
the reduced fundamental domain of ``L`` and taking the lexicographically
smallest sorted vertex tuple.  Facets are recorded as ``(facet_key, shift)``
meaning the facet appears in the canonical lift of the cell as the
canonical lift of the facet translated by ``shift``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor
from typing import Callable, Iterable, Sequence

from ..polyhedra.lp import max_slack
from ..polyhedra.matrix import ExactMatrix
from ..polyhedra.normal_forms import hermite_rows
from ..polyhedra.polyhedron import Polyhedron, affine_rank, dot, face_lattice, sub, vec

Point = tuple
Key = tuple


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


class Lattice:
    """A full-rank integer lattice with a canonical reduction map."""

    def __init__(self, basis: Sequence[Sequence[int]]):
        rows = hermite_rows(basis)
        if not rows:
            raise ValueError("empty lattice basis")
        self.n = len(rows[0])
        if len(rows) != self.n:
            raise ValueError("period lattice must have full rank")
        self.basis = tuple(tuple(r) for r in rows)
        self.pivots = tuple(next(j for j, x in enumerate(r) if x) for r in rows)

    def reduce(self, v: Sequence) -> Point:
        v = list(vec(v))
        for row, c in zip(self.basis, self.pivots):
            q = floor(v[c] / row[c])
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def determinant(self) -> int:
        d = 1
        for row, c in zip(self.basis, self.pivots):
            d *= row[c]
        return d

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def coset_representatives(self, sub: "Lattice") -> list[Point]:
        """Representatives of ``self / sub`` (``sub`` must be a sublattice)."""
        box = [range(row[c]) for row, c in zip(sub.basis, sub.pivots)]
        # integer points of the reduced box of ``sub`` that lie in ``self``
        reps = []
        for p in product(*box):
            q = [0] * self.n
            for c, x in zip(sub.pivots, p):
                q[c] = x
            if self.contains(q):
                reps.append(tuple(Fraction(x) for x in q))
        return reps

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"Lattice({[list(r) for r in self.basis]})"


def canonical_lift(vertices: Iterable[Sequence], lattice: Lattice) -> tuple[Key, Point]:
    """``(key, shift)`` with ``key = sorted(vertices + shift)`` canonical mod the lattice."""
    verts = [vec(v) for v in vertices]
    best = None
    for v in verts:
        s = sub(lattice.reduce(v), v)
        cand = tuple(sorted(_add(u, s) for u in verts))
        if best is None or cand < best[0]:
            best = (cand, s)
    return best


@dataclass
class TorusCell:
    key: Key
    dim: int
    facets: tuple = ()  # ((facet_key, shift), ...)
    label: object = None

    @property
    def vertices(self) -> Key:
        return self.key

    def barycenter(self) -> Point:
        k = len(self.key)
        return tuple(sum((v[i] for v in self.key), Fraction(0)) / k for i in range(len(self.key[0])))


def is_simplex(vertices: Sequence) -> bool:
    return affine_rank(vertices) == len(vertices) - 1


def _lift_facets(vertices: Key) -> list[Key]:
    """Facets of the polytope ``conv(vertices)`` as sorted vertex tuples."""
    verts = list(vertices)
    d = affine_rank(verts)
    if d <= 0:
        return []
    if len(verts) == d + 1:
        return [tuple(v for j, v in enumerate(verts) if j != i) for i in range(len(verts))]
    lat = face_lattice(Polyhedron.from_points(verts))
    return [tuple(sorted(c.vertices)) for c in lat.cells if c.dim == d - 1]


class TorusComplex:
    """A polyhedral complex on ``R^n / L`` stored by canonical cell lifts."""

    def __init__(self, ambient_dim: int, period: Lattice | Sequence[Sequence[int]], cells: dict | None = None):
        self.ambient_dim = ambient_dim
        self.period = period if isinstance(period, Lattice) else Lattice(period)
        self.cells: dict[Key, TorusCell] = dict(cells or {})

    # construction ------------------------------------------------------------------
    def add_closure(self, vertices: Iterable[Sequence], label=None) -> Key:
        """Add the cell ``conv(vertices)`` (a lift) and all of its faces; return its key."""
        key, _ = canonical_lift(vertices, self.period)
        stack = [key]
        while stack:
            k = stack.pop()
            if k in self.cells:
                continue
            facets = []
            for f in _lift_facets(k):
                fkey, s = canonical_lift(f, self.period)
                facets.append((fkey, _neg(s)))
                if fkey not in self.cells:
                    stack.append(fkey)
            self.cells[k] = TorusCell(k, affine_rank(k), tuple(sorted(facets)), label if k == key else None)
        return key

    def add_faces_of(self, faces: dict[Key, int], facets_of: dict[Key, list[Key]]) -> None:
        """Insert a precomputed face poset of one lifted polytope."""
        for f, d in faces.items():
            key, s = canonical_lift(f, self.period)
            if key in self.cells:
                continue
            entries = []
            for g in facets_of.get(f, ()):
                gkey, t = canonical_lift(g, self.period)
                entries.append((gkey, _add(_neg(t), s)))
            self.cells[key] = TorusCell(key, d, tuple(sorted(entries)))

    def copy(self) -> "TorusComplex":
        return TorusComplex(self.ambient_dim, self.period, dict(self.cells))

    # queries -----------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, key) -> bool:
        return key in self.cells

    def keys(self) -> list[Key]:
        return sorted(self.cells, key=lambda k: (self.cells[k].dim, k))

    def dimension(self) -> int:
        return max((c.dim for c in self.cells.values()), default=-1)

    def f_vector(self) -> tuple:
        top = self.dimension()
        return tuple(sum(1 for c in self.cells.values() if c.dim == d) for d in range(top + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells.values())

    def maximal_keys(self) -> list[Key]:
        covered = {f for c in self.cells.values() for f, _ in c.facets}
        return [k for k in self.keys() if k not in covered]

    def is_subcomplex_of(self, other: "TorusComplex") -> bool:
        return self.period == other.period and all(k in other.cells for k in self.cells)

    def same_cells(self, other: "TorusComplex") -> bool:
        return self.period == other.period and set(self.cells) == set(other.cells)

    def sub_complex(self, keep: Callable[[TorusCell], bool]) -> "TorusComplex":
        """Cells passing ``keep``; raises if the result is not closed under faces."""
        cells = {k: c for k, c in self.cells.items() if keep(c)}
        for c in cells.values():
            for f, _ in c.facets:
                if f not in cells:
                    raise ValueError("selection is not closed under taking faces")
        return TorusComplex(self.ambient_dim, self.period, cells)

    def lifted_faces(self, key: Key, shift: Point | None = None) -> dict[Key, int]:
        """All faces of the lift ``key + shift`` as translated vertex tuples."""
        if shift is None:
            shift = tuple(Fraction(0) for _ in range(self.ambient_dim))
        out: dict[Key, int] = {}
        stack = [(key, shift)]
        while stack:
            k, s = stack.pop()
            lift = tuple(_add(v, s) for v in k)
            if lift in out:
                continue
            out[lift] = self.cells[k].dim
            for f, t in self.cells[k].facets:
                stack.append((f, _add(t, s)))
        return out

    def embeds(self, key: Key) -> bool:
        """Whether the open cell maps injectively to the torus."""
        verts = list(key)
        n = self.ambient_dim
        widths = [max(v[i] for v in verts) - min(v[i] for v in verts) for i in range(n)]
        ranges = []
        for w in widths:
            m = floor(w)
            if m == w:
                m -= 1
            ranges.append(range(-max(m, 0), max(m, 0) + 1))
        diffs = None
        for ell in product(*ranges):
            if not any(ell) or not self.period.contains(ell):
                continue
            if diffs is None:
                diffs = sorted({sub(a, b) for a in verts for b in verts})
            if _in_relint_of_hull(vec(ell), diffs):
                return False
        return True

    # export ------------------------------------------------------------------------
    def to_json(self) -> dict:
        from ..polyhedra.serialize import vector_to_json

        keys = self.keys()
        ids = {k: i for i, k in enumerate(keys)}
        cells = []
        for k in keys:
            c = self.cells[k]
            entry = {
                "id": ids[k],
                "dim": c.dim,
                "vertices": [vector_to_json(v) for v in k],
                "rays": [],
                "faces": sorted(ids[f] for f, _ in c.facets),
            }
            if c.label is not None:
                entry["label"] = str(c.label)
            cells.append(entry)
        return {
            "ambient_dim": self.ambient_dim,
            "period_lattice": [list(r) for r in self.period.basis],
            "cells": cells,
        }

    def to_off(self) -> str:
        """OFF text of the fundamental-domain geometry (float coordinates, viewer use only)."""
        if self.ambient_dim > 3:
            raise ValueError("OFF export supports ambient dimension at most 3")
        pts: dict[Point, int] = {}
        polys = []
        for k in self.keys():
            c = self.cells[k]
            if c.dim != 2:
                continue
            ring = cyclic_order(k)
            idx = []
            for v in ring:
                p = tuple(list(v) + [Fraction(0)] * (3 - len(v)))
                idx.append(pts.setdefault(p, len(pts)))
            polys.append(idx)
        lines = ["OFF", "# coordinates rounded for display only", f"{len(pts)} {len(polys)} 0"]
        for p in sorted(pts, key=pts.get):
            lines.append(" ".join(f"{float(x):.6f}" for x in p))
        for f in polys:
            lines.append(" ".join(str(x) for x in [len(f)] + f))
        return "\n".join(lines) + "\n"


def _in_relint_of_hull(point: Point, generators: Sequence[Point]) -> bool:
    """Exact test ``point ∈ relint conv(generators)`` via a slack LP on the weights."""
    m = len(generators)
    n = len(point)
    # variables: weights lambda_1..lambda_m; require lambda_i >= s, sum = 1, sum lambda g = point
    a_ub = [[-1 if j == i else 0 for j in range(m)] for i in range(m)]
    b_ub = [0] * m
    a_eq = [[1] * m] + [[g[i] for g in generators] for i in range(n)]
    b_eq = [1] + list(point)
    s = max_slack(a_ub, b_ub, a_eq, b_eq, n=m)
    return s is not None and s > 0


def cyclic_order(vertices: Sequence[Point]) -> list[Point]:
    """Vertices of a convex polygon (in any ambient dimension) in boundary order."""
    verts = sorted(vec(v) for v in vertices)
    if len(verts) <= 3:
        return verts
    poly = Polyhedron.from_points(verts)
    adj: dict[Point, list[Point]] = {v: [] for v in verts}
    for c in face_lattice(poly).cells:
        if c.dim == 1:
            a, b = c.vertices
            adj[a].append(b)
            adj[b].append(a)
    ring = [verts[0]]
    prev = None
    cur = verts[0]
    while len(ring) < len(verts):
        nxt = min(x for x in adj[cur] if x != prev)
        if prev is None:
            nxt = min(adj[cur])
        ring.append(nxt)
        prev, cur = cur, nxt
    return ring


# -------------------------------------------------------------------------------------
# refinement, transport and products


def apply_lattice_map(t: TorusComplex, a: Sequence[Sequence[int]], b: Sequence | None = None) -> TorusComplex:
    """Image of ``t`` under ``x -> A x + b`` on the torus ``R^n / (A L)``."""
    mat = ExactMatrix(a)
    n = t.ambient_dim
    if mat.rows != n or mat.cols != n or abs(mat.det()) != 1:
        raise ValueError("lattice map must be a unimodular integer matrix")
    if any(x.denominator != 1 for row in mat.tolist() for x in row):
        raise ValueError("lattice map must have integer entries")
    b = vec(b) if b is not None else tuple(Fraction(0) for _ in range(n))
    new_period = Lattice([[int(x) for x in mat.apply(row)] for row in t.period.basis])
    out = TorusComplex(n, new_period)

    def image(v):
        return _add(tuple(mat.apply(v)), b)

    mapped = {}
    for k, c in t.cells.items():
        mapped[k] = canonical_lift([image(v) for v in k], new_period)
    for k, c in t.cells.items():
        key, s = mapped[k]
        facets = []
        for f, sh in c.facets:
            fkey, fs = mapped[f]
            # facet lift in old canonical lift: f + sh; image: A f + b + A sh
            # = (fkey - fs) + A sh, then shift by s into the new canonical lift of k
            facets.append((fkey, _add(_add(_neg(fs), tuple(mat.apply(sh))), s)))
        out.cells[key] = TorusCell(key, c.dim, tuple(sorted(facets)), c.label)
    return out


def product_with_torus(t: TorusComplex, k: int) -> TorusComplex:
    """Product with a ``k``-dimensional torus ``R^k / 2Z^k`` (one cell per dimension)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return t.copy()
    n = t.ambient_dim
    basis = [list(r) + [0] * k for r in t.period.basis]
    for i in range(k):
        basis.append([0] * n + [2 if j == i else 0 for j in range(k)])
    out = TorusComplex(n + k, Lattice(basis))
    # circle cells: the vertex 0 and the segment [0, 2]
    circle = [((Fraction(0),),), ((Fraction(0),), (Fraction(2),))]
    for key in t.maximal_keys():
        for parts in product(*([circle] * k)):
            verts = [tuple(v) for v in key]
            for part in parts:
                verts = [a + p for a in verts for p in part]
            out.add_closure(verts)
    return out


def kummer_thicken(t: TorusComplex, sublattice: Sequence[Sequence[int]] | Lattice) -> TorusComplex:
    """Re-periodise ``t`` by a finite-index sublattice of its period lattice."""
    new = sublattice if isinstance(sublattice, Lattice) else Lattice(sublattice)
    if not t.period.contains_lattice(new):
        raise ValueError("the requested lattice is not a sublattice of the period lattice")
    reps = t.period.coset_representatives(new)
    out = TorusComplex(t.ambient_dim, new)
    for k, c in t.cells.items():
        for r in reps:
            lift = [_add(v, r) for v in k]
            key, s = canonical_lift(lift, new)
            if key in out.cells:
                continue
            facets = []
            for f, sh in c.facets:
                flift = [_add(_add(v, sh), r) for v in f]
                fkey, fs = canonical_lift(flift, new)
                facets.append((fkey, _add(_neg(fs), s)))
            out.cells[key] = TorusCell(key, c.dim, tuple(sorted(facets)), c.label)
    return out


def scaled_period(t: TorusComplex, m: int) -> Lattice:
    return Lattice([[m * x for x in row] for row in t.period.basis])


def _split_once(poly_ineqs, poly_eqs, normal, level, n):
    lower = Polyhedron(n, list(poly_ineqs) + [(normal, level)], poly_eqs)
    upper = Polyhedron(n, list(poly_ineqs) + [(_neg(normal), -level)], poly_eqs)
    return lower, upper


def _crossing_levels(verts, normal, offset):
    vals = [dot(normal, v) for v in verts]
    lo, hi = min(vals), max(vals)
    first = floor(lo - offset) + 1
    out = []
    x = first
    while offset + x < hi:
        if offset + x > lo:
            out.append(offset + x)
        x += 1
    return out


def refine(t: TorusComplex, families: Sequence[tuple[Sequence[int], object]]) -> TorusComplex:
    """Common refinement of ``t`` with the periodic hyperplanes ``<a,x> ∈ beta + Z``.

    Every maximal cell is cut by the hyperplanes crossing its relative
    interior; the faces of the resulting pieces form the new complex.
    """
    n = t.ambient_dim
    fams = []
    for a, beta in families:
        a = vec(a)
        beta = Fraction(beta) - floor(Fraction(beta))
        if any(a) and (a, beta) not in fams:
            fams.append((a, beta))
    out = TorusComplex(n, t.period)
    for key in t.maximal_keys():
        label = t.cells[key].label
        base = Polyhedron.from_points(key)
        pieces = [base]
        for a, beta in fams:
            nxt = []
            for p in pieces:
                verts = p.vertices()
                levels = _crossing_levels(verts, a, beta)
                if not levels:
                    nxt.append(p)
                    continue
                cur = p
                for lev in levels:
                    low, up = _split_once(cur.inequalities, cur.equalities, a, lev, n)
                    nxt.append(low)
                    cur = up
                nxt.append(cur)
            pieces = nxt
        for p in pieces:
            verts = p.vertices()
            if len(verts) == 1 or affine_rank(verts) == t.cells[key].dim:
                _insert_polytope(out, verts, label)
    return out


def _insert_polytope(out: TorusComplex, verts, label=None) -> None:
    verts = sorted(verts)
    if len(verts) == affine_rank(verts) + 1:
        out.add_closure(verts, label)
        return
    lat = face_lattice(Polyhedron.from_points(verts))
    faces = {tuple(sorted(c.vertices)): c.dim for c in lat.cells}
    facets_of = {}
    by_id = {c.id: tuple(sorted(c.vertices)) for c in lat.cells}
    for c in lat.cells:
        facets_of[tuple(sorted(c.vertices))] = [by_id[f] for f in c.faces]
    out.add_faces_of(faces, facets_of)
    if label is not None:
        key, _ = canonical_lift(verts, out.period)
        out.cells[key].label = label


def barycentric_refine(t: TorusComplex) -> TorusComplex:
    """Barycentric subdivision; every resulting cell is a simplex that embeds."""
    n = t.ambient_dim
    out = TorusComplex(n, t.period)
    for key in t.maximal_keys():
        faces = t.lifted_faces(key)
        by_dim: dict[int, list[Key]] = {}
        for f, d in faces.items():
            by_dim.setdefault(d, []).append(f)

        def bary(f):
            k = len(f)
            return tuple(sum((v[i] for v in f), Fraction(0)) / k for i in range(n))

        def chains(f):
            d = faces[f]
            if d == 0:
                return [[f]]
            out_chains = []
            for g in by_dim.get(d - 1, []):
                if set(g) <= set(f):
                    for ch in chains(g):
                        out_chains.append(ch + [f])
            return out_chains

        for ch in chains(key):
            out.add_closure([bary(f) for f in ch])
    return out
