"""Abstract CW complexes with integer incidence numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence


class BoundaryError(ValueError):
    pass


@dataclass
class CWComplex:
    """Cells ``0..N-1`` with dimensions and signed incidence.

    ``boundary[c]`` maps each facet id to the incidence number ``[c : facet]``.
    ``keys`` optionally records where each cell came from (for reports).
    """

    dims: list[int] = field(default_factory=list)
    boundary: list[dict] = field(default_factory=list)
    keys: list[Hashable] = field(default_factory=list)

    def add_cell(self, dim: int, facets: dict | None = None, key: Hashable = None) -> int:
        cid = len(self.dims)
        self.dims.append(dim)
        self.boundary.append({f: c for f, c in (facets or {}).items() if c})
        self.keys.append(key if key is not None else cid)
        return cid

    @property
    def cells(self) -> list[tuple[int, int]]:
        return list(enumerate(self.dims))

    @property
    def incidence(self) -> dict:
        return {(c, f): k for c, b in enumerate(self.boundary) for f, k in b.items()}

    def __len__(self) -> int:
        return len(self.dims)

    def dimension(self) -> int:
        return max(self.dims) if self.dims else -1

    def cells_of_dim(self, d: int) -> list[int]:
        return [i for i, k in enumerate(self.dims) if k == d]

    def cell_counts(self) -> tuple:
        top = self.dimension()
        return tuple(sum(1 for k in self.dims if k == d) for d in range(top + 1))

    def check(self) -> None:
        """Verify facet dimensions and ``∂∘∂ = 0``; raise :class:`BoundaryError` otherwise."""
        for c, b in enumerate(self.boundary):
            for f in b:
                if not 0 <= f < len(self.dims) or self.dims[f] != self.dims[c] - 1:
                    raise BoundaryError(f"cell {c} lists facet {f} of wrong dimension")
            acc: dict[int, int] = {}
            for f, k in b.items():
                for g, j in self.boundary[f].items():
                    acc[g] = acc.get(g, 0) + k * j
            bad = [g for g, v in acc.items() if v]
            if bad:
                raise BoundaryError(f"boundary of boundary of cell {c} is non-zero on {bad[:5]}")

    def subcomplex_closure(self, cells: Iterable[int]) -> set[int]:
        out = set()
        stack = list(cells)
        while stack:
            c = stack.pop()
            if c in out:
                continue
            out.add(c)
            stack.extend(self.boundary[c])
        return out


def euler_characteristic(c: CWComplex) -> int:
    return sum((-1) ** d for d in c.dims)


def cap_circle_strata(c: CWComplex, circles: Sequence[Iterable[int]]) -> CWComplex:
    """Attach one 2-cell along each listed circle.

    A circle is given by its cell ids (edges, optionally with vertices); the
    edges must form a single embedded cycle.
    """
    if c.dimension() > 2:
        raise ValueError("capping beyond curves out of scope: ambient complex has dimension > 2")
    out = CWComplex(list(c.dims), [dict(b) for b in c.boundary], list(c.keys))
    for n, circle in enumerate(circles):
        edges = sorted({e for e in circle if c.dims[e] == 1})
        out.add_cell(2, orient_cycle(c, edges), key=("cap", n))
    out.check()
    return out


def orient_cycle(c: CWComplex, edges: Sequence[int]) -> dict:
    """Signs making ``edges`` a 1-cycle; raises if they do not form an embedded circle."""
    if not edges:
        raise ValueError("empty circle")
    ends = {}
    for e in edges:
        b = c.boundary[e]
        if not b:
            ends[e] = None
            continue
        heads = [v for v, k in b.items() if k > 0]
        tails = [v for v, k in b.items() if k < 0]
        if len(heads) != 1 or len(tails) != 1 or sum(b.values()) != 0:
            raise ValueError(f"edge {e} is not a regular edge")
        ends[e] = (tails[0], heads[0])
    loops = [e for e, v in ends.items() if v is None]
    if loops:
        if len(edges) != 1:
            raise ValueError("circle contains a loop edge together with other edges")
        return {edges[0]: 1}
    degree: dict[int, list[int]] = {}
    for e, (t, h) in ends.items():
        degree.setdefault(t, []).append(e)
        degree.setdefault(h, []).append(e)
    if any(len(v) != 2 for v in degree.values()):
        raise ValueError("subcomplex is not a circle: some vertex does not have degree two")
    signs = {}
    start = edges[0]
    signs[start] = 1
    vertex = ends[start][1]
    prev = start
    while True:
        nxt = degree[vertex][0] if degree[vertex][1] == prev else degree[vertex][1]
        if nxt == start:
            break
        t, h = ends[nxt]
        if t == vertex:
            signs[nxt] = 1
            vertex = h
        else:
            signs[nxt] = -1
            vertex = t
        prev = nxt
    if len(signs) != len(edges):
        raise ValueError("subcomplex is not connected: several cycles found")
    return signs
