"""Colimits of angle complexes over a dual intersection complex."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..angle.generic import boundary_stratum_complex, generic_angle_complex
from ..angle.torus import TorusComplex, apply_lattice_map, refine
from ..tropical.dual import DualComplexDiagram
from .cw import CWComplex
from .torus_cw import cw_from_torus_complex


class GluingError(ValueError):
    pass


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller representative so the result does not depend on the order of unions
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _describe(keys, limit=6) -> str:
    keys = sorted(keys)
    text = ", ".join(str(tuple(tuple(str(x) for x in v) for v in k)) for k in keys[:limit])
    return text + (f" and {len(keys) - limit} more" if len(keys) > limit else "")


def glue_colimit(
    pieces: dict,
    strata: dict,
    order: Sequence | None = None,
) -> CWComplex:
    return _glue(pieces, strata, order)[0]


def _glue(pieces: dict, strata: dict, order: Sequence | None = None) -> tuple[CWComplex, _UnionFind]:
    """Quotient of the disjoint union of ``pieces`` identifying shared strata.

    ``strata`` maps a shared cell to ``{piece name: TorusComplex}``; every
    listed complex must be a subcomplex of its piece and all of them must
    agree cell by cell.  ``order`` optionally permutes the identifications.
    """
    names = sorted(pieces)
    for cell, copies in strata.items():
        ref_name = min(copies)
        ref = copies[ref_name]
        for name, st in copies.items():
            if name not in pieces:
                raise GluingError(f"stratum of {cell} refers to unknown piece {name}")
            missing = set(st.cells) - set(pieces[name].cells)
            if missing:
                raise GluingError(f"stratum of {cell} is not a subcomplex of piece {name}: {_describe(missing)}")
            if not st.same_cells(ref):
                diff = set(st.cells) ^ set(ref.cells)
                raise GluingError(f"stratum images of {cell} differ between {ref_name} and {name}; "
                                  f"unmatched cells: {_describe(diff)}")
    _check_cech_shape(strata)
    cws = {name: cw_from_torus_complex(pieces[name]) for name in names}
    uf = _UnionFind()
    pairs = []
    for cell in sorted(strata, key=repr):
        copies = strata[cell]
        ref_name = min(copies)
        for name in sorted(copies):
            if name != ref_name:
                for key in copies[name].keys():
                    pairs.append(((ref_name, key), (name, key)))
    if order is not None:
        pairs = [pairs[i] for i in order]
    for a, b in pairs:
        uf.union(a, b)
    out = CWComplex()
    ids: dict = {}
    members = sorted(((cws[name].dims[i], name, cws[name].keys[i], i) for name in names
                      for i in range(len(cws[name]))), key=lambda t: (t[0], t[1], t[2]))
    bounds: dict = {}
    for dim, name, key, i in members:
        rep = uf.find((name, key))
        facets: dict = {}
        for f, k in cws[name].boundary[i].items():
            frep = uf.find((name, cws[name].keys[f]))
            facets[frep] = facets.get(frep, 0) + k
        facets = {f: k for f, k in facets.items() if k}
        if rep in ids:
            if bounds[rep] != facets:
                raise GluingError(f"identified cell {key} has different boundaries in different pieces")
            continue
        bounds[rep] = facets
        ids[rep] = out.add_cell(dim, {ids[f]: k for f, k in facets.items()}, key=rep)
    out.check()
    return out, uf


def _check_cech_shape(strata: dict, containing: dict | None = None) -> None:
    """Strata meeting inside one piece must meet along the stratum of a common larger cell.

    ``containing`` maps a pair of shared cells to the shared cells containing
    both; without it, any overlap of distinct strata is rejected.
    """
    cells = sorted(strata, key=repr)
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            for name in set(strata[a]) & set(strata[b]):
                common = set(strata[a][name].cells) & set(strata[b][name].cells)
                if not common:
                    continue
                allowed = set()
                for c in (containing or {}).get((a, b), ()):
                    allowed |= set(strata[c][name].cells)
                if not common <= allowed:
                    raise GluingError(
                        f"strata of {a} and {b} overlap inside piece {name} without a common larger cell; "
                        "the plain colimit is not a homotopy colimit here (use glue_hocolim)")


def glue_hocolim(pieces: dict, strata: dict, poset: dict, order: Sequence | None = None) -> CWComplex:
    """Homotopy colimit over a poset of cells, built from product cells.

    ``pieces`` maps minimal elements to complexes, ``strata`` maps every
    other element to ``{minimal element: complex}`` (all copies equal), and
    ``poset`` maps each element to the set of elements strictly below it.
    Each chain ``s_0 < ... < s_k`` contributes ``c x Delta^k`` for every cell
    ``c`` of the complex at ``s_k``; removing ``s_k`` includes ``c`` into the
    complex at ``s_{k-1}``.
    """
    for cell, copies in strata.items():
        ref = copies[min(copies)]
        for name, st in copies.items():
            missing = set(st.cells) - set(pieces[name].cells)
            if missing:
                raise GluingError(f"stratum of {cell} is not a subcomplex of piece {name}: {_describe(missing)}")
            if not st.same_cells(ref):
                raise GluingError(f"stratum images of {cell} differ; unmatched cells: "
                                  f"{_describe(set(st.cells) ^ set(ref.cells))}")
    space = {name: pieces[name] for name in pieces}
    for cell, copies in strata.items():
        space[cell] = copies[min(copies)]
    cws = {}
    for elem, t in space.items():
        cws[elem] = cw_from_torus_complex(t)
    index = {elem: {k: i for i, k in enumerate(cw.keys)} for elem, cw in cws.items()}
    below = {e: set(poset.get(e, ())) for e in space}
    chains = []

    def extend(chain):
        chains.append(tuple(chain))
        for e in sorted(space, key=repr):
            if chain[-1] in below[e]:
                extend(chain + [e])

    for e in sorted(space, key=repr):
        extend([e])
    chains.sort(key=lambda c: (len(c), repr(c)))
    if order is not None:
        chains = [chains[i] for i in order]
    rank = {ch: r for r, ch in enumerate(chains)}
    cells = [(len(ch) - 1 + cws[ch[-1]].dims[i], ch, cws[ch[-1]].keys[i]) for ch in chains
             for i in range(len(cws[ch[-1]]))]
    cells.sort(key=lambda t: (t[0], rank[t[1]], t[2]))
    out = CWComplex()
    ids = {}
    for dim, ch, key in cells:
        top = ch[-1]
        cw = cws[top]
        i = index[top][key]
        p = cw.dims[i]
        facets: dict = {}
        for f, k in cw.boundary[i].items():
            tgt = ids[(ch, cw.keys[f])]
            facets[tgt] = facets.get(tgt, 0) + k
        sign = -1 if p % 2 else 1
        k_len = len(ch) - 1
        for j in range(len(ch) if k_len else 0):
            face = ch[:j] + ch[j + 1:]
            tgt = ids[(face, key)]
            coeff = sign * (-1 if j % 2 else 1)
            facets[tgt] = facets.get(tgt, 0) + coeff
        ids[(ch, key)] = out.add_cell(dim, {f: k for f, k in facets.items() if k}, key=(ch, key))
    out.check()
    return out


@dataclass
class GluedHypersurface:
    diagram: DualComplexDiagram
    pieces: dict
    strata: dict
    complex: CWComplex
    ray_strata: dict = field(default_factory=dict)

    def ray_circles(self) -> list[list[int]]:
        """Cell ids of each unbounded-ray stratum inside the glued complex."""
        index = {key: i for i, key in enumerate(self.complex.keys)}
        out = []
        for cell in sorted(self.ray_strata):
            v, st = self.ray_strata[cell]
            out.append(sorted(index[((v,), k)] for k in st.keys()))
        return out


def _faces(diagram: DualComplexDiagram, cell_id: int) -> set:
    out, stack = set(), list(diagram.sigma.cells.by_id(cell_id).faces)
    while stack:
        c = stack.pop()
        if c not in out:
            out.add(c)
            stack.extend(diagram.sigma.cells.by_id(c).faces)
    return out


def chart_transport(diagram: DualComplexDiagram, vertex):
    """``(A^-1, -A^-1 b)``: pulls chart coordinates back to angle coordinates."""
    chart = diagram.vertex_charts[vertex]
    inv = chart.matrix.inverse()
    shift = [-x for x in inv.apply(chart.phase_offset)]
    return [[int(x) for x in row] for row in inv.tolist()], shift


def angle_families(diagram: DualComplexDiagram) -> list:
    fams = []
    for v in diagram.vertices:
        fams.extend(diagram.vertex_charts[v].hyperplane_families())
    return fams


def vertex_piece(diagram: DualComplexDiagram, vertex, families=None) -> TorusComplex:
    n = diagram.sigma.ambient_dim
    a, b = chart_transport(diagram, vertex)
    fams = angle_families(diagram) if families is None else families
    return refine(apply_lattice_map(generic_angle_complex(n), a, b), fams)


def stratum_piece(diagram: DualComplexDiagram, vertex, cell_id: int, families=None) -> TorusComplex:
    n = diagram.sigma.ambient_dim
    a, b = chart_transport(diagram, vertex)
    removed = diagram.stratum_indices[(vertex, cell_id)]
    fams = angle_families(diagram) if families is None else families
    return refine(apply_lattice_map(boundary_stratum_complex(n, removed), a, b), fams)


def glue_hypersurface(diagram: DualComplexDiagram, order: Sequence | None = None,
                      with_rays: bool = False) -> GluedHypersurface:
    """Glue the vertex angle complexes of a smooth tropical hypersurface along bounded strata."""
    fams = angle_families(diagram)
    pieces = {v: vertex_piece(diagram, v, fams) for v in diagram.vertices}
    strata = {}
    for cell in diagram.bounded_cells():
        if cell.dim == 0:
            continue
        verts = diagram.cell_vertices(cell.id)
        strata[cell.id] = {v: stratum_piece(diagram, v, cell.id, fams) for v in verts}
    ray_strata = {}
    if with_rays:
        for cell in diagram.sigma.cells.cells:
            if cell.dim == 1 and (cell.rays or cell.lineality):
                v = tuple(cell.vertices[0])
                ray_strata[cell.id] = (v, stratum_piece(diagram, v, cell.id, fams))
    vertex_of = {diagram.vertex_charts[v].cell_id: v for v in diagram.vertices}
    poset = {}
    for cell in diagram.bounded_cells():
        if cell.dim == 0:
            continue
        faces = _faces(diagram, cell.id)
        poset[cell.id] = {vertex_of.get(f, f) for f in faces}
    cw = glue_hocolim(pieces, strata, poset, order)
    return GluedHypersurface(diagram, pieces, strata, cw, ray_strata)


def identification_count(strata: dict) -> int:
    return sum(len(st.cells) for copies in strata.values() for name, st in copies.items() if name != min(copies))
