"""Dual intersection complexes with vertex charts and transition data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..polyhedra.matrix import ExactMatrix
from ..polyhedra.polyhedron import vec
from .hypersurface import TropicalComplex, chart_basis, is_tropically_smooth, tropical_hypersurface
from .polynomial import TropicalPolynomial


class NotSmoothError(ValueError):
    pass


@dataclass(frozen=True)
class VertexChart:
    """Chart ``y = A theta + b`` at a vertex; ``monomials[0]`` is the base monomial."""

    vertex: tuple
    cell_id: int
    basis: tuple  # rows m_k - m_0, lexicographically descending
    phase_offset: tuple
    monomials: tuple  # term indices: base first, then in basis row order

    @property
    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.basis)

    def coordinates(self, theta: Sequence) -> tuple:
        theta = vec(theta)
        return tuple(sum((a * x for a, x in zip(row, theta)), Fraction(0)) + b
                     for row, b in zip(self.basis, self.phase_offset))

    def hyperplane_families(self) -> list[tuple]:
        """Coxeter hyperplanes of the chart pulled back to angle space, as ``(a, beta)``.

        The hyperplane is ``<a, theta> ∈ beta + Z``.
        """
        rows = [(tuple(Fraction(0) for _ in self.basis[0]), Fraction(0))] + list(zip(self.basis, self.phase_offset))
        out = []
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                a = tuple(p - q for p, q in zip(rows[j][0], rows[i][0]))
                out.append((a, -(rows[j][1] - rows[i][1])))
        return out


@dataclass
class DualComplexDiagram:
    polynomial: TropicalPolynomial
    sigma: TropicalComplex
    vertex_charts: dict = field(default_factory=dict)  # vertex -> VertexChart
    transitions: dict = field(default_factory=dict)  # (v, v', edge id) -> (T, translation)
    cell_angle_kind: dict = field(default_factory=dict)  # cell id -> ("generic", n', k)
    stratum_indices: dict = field(default_factory=dict)  # (vertex, cell id) -> removed chart indices

    @property
    def vertices(self) -> list:
        return sorted(self.vertex_charts)

    def cells_containing(self, vertex) -> list[int]:
        vid = self.vertex_charts[vertex].cell_id
        return [c.id for c in self.sigma.cells.cells if vid in _closure(self.sigma, c.id)]

    def bounded_cells(self) -> list:
        return [c for c in self.sigma.cells.cells if not c.rays and not c.lineality]

    def cell_vertices(self, cell_id: int) -> list:
        cell = self.sigma.cells.by_id(cell_id)
        return sorted(tuple(v) for v in cell.vertices)


def _closure(t: TropicalComplex, cid: int) -> set:
    out, stack = set(), [cid]
    while stack:
        c = stack.pop()
        if c in out:
            continue
        out.add(c)
        stack.extend(t.cells.by_id(c).faces)
    return out


def _chart(f: TropicalPolynomial, vertex, cell_id, support) -> VertexChart:
    m0, basis = chart_basis(f, support)
    e0 = f.terms[m0].exponent
    order = []
    for row in basis:
        k = next(k for k in support if k != m0 and tuple(a - b for a, b in zip(f.terms[k].exponent, e0)) == row)
        order.append(k)
    offsets = tuple((f.terms[k].angle - f.terms[m0].angle) % 2 for k in order)
    return VertexChart(tuple(vertex), cell_id, tuple(tuple(int(x) for x in r) for r in basis), offsets,
                       (m0,) + tuple(order))


def transition(c1: VertexChart, c2: VertexChart):
    """``(T, s)`` with ``y_2 = T y_1 + s`` between the chart coordinates."""
    a1, a2 = c1.matrix, c2.matrix
    t = a2 @ a1.inverse()
    tb = t.apply(c1.phase_offset)
    shift = tuple(b - x for b, x in zip(c2.phase_offset, tb))
    return t, shift


def _compose(first, second):
    t1, s1 = first
    t2, s2 = second
    return t2 @ t1, tuple(a + b for a, b in zip(t2.apply(s1), s2))


def dual_intersection_complex(f: TropicalPolynomial) -> DualComplexDiagram:
    report = is_tropically_smooth(f)
    if not report.smooth:
        w, init, reason = report.counterexample
        raise NotSmoothError(f"not tropically smooth at w={tuple(str(x) for x in w)}: {reason} ({init})")
    sigma = tropical_hypersurface(f)
    diagram = DualComplexDiagram(f, sigma)
    for cell in sigma.cells.cells_of_dim(0):
        v = tuple(cell.vertices[0])
        diagram.vertex_charts[v] = _chart(f, v, cell.id, cell.support)
    for cell in sigma.cells.cells:
        if not cell.rays and not cell.lineality and len(cell.vertices) != cell.dim + 1:
            raise ValueError(f"bounded cell {cell.id} is not a simplex")
        diagram.cell_angle_kind[cell.id] = ("generic", len(cell.support) - 1, cell.dim)
    for v, chart in diagram.vertex_charts.items():
        for cid in diagram.cells_containing(v):
            supp = set(sigma.cells.by_id(cid).support)
            diagram.stratum_indices[(v, cid)] = tuple(i for i, k in enumerate(chart.monomials) if k not in supp)
    for edge in sigma.cells.cells_of_dim(1):
        if edge.rays or edge.lineality:
            continue
        a, b = sorted(tuple(x) for x in edge.vertices)
        ca, cb = diagram.vertex_charts[a], diagram.vertex_charts[b]
        diagram.transitions[(a, b, edge.id)] = transition(ca, cb)
        diagram.transitions[(b, a, edge.id)] = transition(cb, ca)
    check_cocycle(diagram)
    return diagram


def check_cocycle(diagram: DualComplexDiagram) -> bool:
    """Transitions compose to the identity around every bounded 2-cell."""
    n = diagram.sigma.ambient_dim
    ident = ExactMatrix.identity(n)
    for t, _ in diagram.transitions.values():
        if abs(t.det()) != 1 or any(x.denominator != 1 for row in t.tolist() for x in row):
            raise ValueError("transition matrix is not unimodular")
    edges_by_pair = {}
    for (a, b, eid) in diagram.transitions:
        edges_by_pair[(a, b)] = eid
    for cell in diagram.bounded_cells():
        if cell.dim != 2:
            continue
        verts = sorted(tuple(v) for v in cell.vertices)
        cycle = verts + [verts[0]]
        acc = (ident, tuple(Fraction(0) for _ in range(n)))
        for a, b in zip(cycle, cycle[1:]):
            if (a, b) not in edges_by_pair:
                raise ValueError(f"bounded 2-cell {cell.id} has vertices {a}, {b} without a bounded edge")
            acc = _compose(acc, diagram.transitions[(a, b, edges_by_pair[(a, b)])])
        t, s = acc
        if t != ident or any(x % 2 for x in s):
            raise ValueError(f"cocycle condition fails around cell {cell.id}")
    return True
