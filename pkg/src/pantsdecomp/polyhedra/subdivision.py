"""Regular subdivisions of point configurations and lattice volumes."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .matrix import ExactMatrix, as_fraction, rank_of
from .normal_forms import elementary_divisors
from .polyhedron import PolyCell, PolyComplex, Polyhedron, affine_rank, face_lattice, sub, vec


def affine_chart(points: Sequence[Sequence]):
    """Coordinates selecting an affine isomorphism of ``aff(points)`` onto its image.

    Returns ``(dim, columns)``; projecting every point onto ``columns`` is
    injective on the affine hull.
    """
    pts = [vec(p) for p in points]
    dirs = [sub(p, pts[0]) for p in pts[1:]]
    if not dirs or rank_of(dirs) == 0:
        return 0, []
    _, piv = ExactMatrix(dirs).rref()
    return len(piv), piv


def _lower_cells(proj: list, heights: list, d: int) -> list[frozenset]:
    n_pts = len(proj)
    cells = set()
    for subset in combinations(range(n_pts), d + 1):
        base = proj[subset[0]]
        if rank_of([sub(proj[i], base) for i in subset[1:]]) != d:
            continue
        # solve h = <alpha, x> + beta through the chosen lifted points
        rows = [list(proj[i]) + [1] for i in subset]
        sol = ExactMatrix(rows).solve([heights[i] for i in subset])
        alpha, beta = sol[:d], sol[d]
        vals = [heights[j] - sum((a * x for a, x in zip(alpha, proj[j])), Fraction(0)) - beta for j in range(n_pts)]
        if any(v < 0 for v in vals):
            continue
        cells.add(frozenset(j for j in range(n_pts) if vals[j] == 0))
    return sorted(cells, key=sorted)


def regular_subdivision(points: Sequence[Sequence[int]], heights: Sequence) -> PolyComplex:
    """Subdivision induced by lifting ``points[i]`` to height ``heights[i]``.

    Every cell carries ``support``: the indices of the input points lying
    on the corresponding lower face (including non-vertex points).
    """
    if len(points) < 1:
        raise ValueError("regular_subdivision needs at least one point")
    if len(points) != len(heights):
        raise ValueError("one height per point is required")
    pts = [vec(p) for p in points]
    hs = [as_fraction(h) for h in heights]
    n = len(pts[0])
    d, cols = affine_chart(pts)
    proj = [tuple(p[c] for c in cols) for p in pts]
    if d == 0:
        maximal = [frozenset(range(len(pts)))]
    else:
        maximal = _lower_cells(proj, hs, d)
    faces: dict[frozenset, int] = {}
    for cell in maximal:
        sub_pts = sorted(cell)
        if d == 0:
            faces[cell] = 0
            continue
        poly = Polyhedron.from_points([proj[i] for i in sub_pts])
        lattice = face_lattice(poly)
        for f in lattice.cells:
            fv = set(f.vertices)
            if f.dim == d:
                supp = cell
            else:
                # points of the cell on the affine span of the face
                supp = frozenset(i for i in sub_pts if affine_rank(list(fv) + [proj[i]]) == f.dim)
            faces[supp] = f.dim
    ordered = sorted(faces, key=lambda s: (faces[s], sorted(s)))
    ids = {s: i for i, s in enumerate(ordered)}
    out = []
    for s in ordered:
        dim = faces[s]
        verts = _vertex_points(pts, s, proj)
        facets = tuple(ids[t] for t in ordered if faces[t] == dim - 1 and t < s)
        out.append(PolyCell(ids[s], dim, tuple(verts), faces=facets, support=tuple(sorted(s))))
    return PolyComplex(n, out)


def _vertex_points(pts, support, proj):
    idx = sorted(support)
    if len(idx) == 1:
        return [pts[idx[0]]]
    poly = Polyhedron.from_points([proj[i] for i in idx])
    vset = set(poly.vertices())
    return sorted({pts[i] for i in idx if proj[i] in vset})


def normalized_volume(simplex) -> int:
    """Lattice-normalised volume of a lattice simplex in its own affine lattice.

    Accepts a :class:`Polyhedron` or a list of vertices.  For a
    full-dimensional simplex this is ``|det|`` of the edge matrix.
    """
    if isinstance(simplex, Polyhedron):
        verts = list(simplex.vertices())
    else:
        verts = sorted({vec(v) for v in simplex})
    for v in verts:
        if any(x.denominator != 1 for x in v):
            raise ValueError("simplex vertices must be lattice points")
    k = len(verts) - 1
    if affine_rank(verts) != k:
        raise ValueError("input is not a simplex")
    if k == 0:
        return 1
    edges = [[int(x) for x in sub(v, verts[0])] for v in verts[1:]]
    vol = 1
    for e in elementary_divisors(edges):
        vol *= e
    return vol
