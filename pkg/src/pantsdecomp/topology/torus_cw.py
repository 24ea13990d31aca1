"""Turning torus complexes into CW complexes with oriented incidence."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..angle.torus import Key, TorusComplex
from ..polyhedra.matrix import ExactMatrix
from .cw import CWComplex


class RefinementRequired(ValueError):
    pass


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


@lru_cache(maxsize=None)
def orientation_basis(key: Key) -> tuple:
    """Direction vectors ``v_i - v_0`` chosen greedily in vertex order."""
    v0 = key[0]
    basis: list[tuple] = []
    for v in key[1:]:
        d = tuple(a - b for a, b in zip(v, v0))
        if ExactMatrix(basis + [d]).rank() == len(basis) + 1:
            basis.append(d)
    return tuple(basis)


@lru_cache(maxsize=None)
def _frame(key: Key):
    """Pivot coordinates for the span of the cell plus the orientation sign there."""
    basis = orientation_basis(key)
    if not basis:
        return (), 1
    # columns of the transposed basis: pick coordinates where the basis is independent
    _, piv = ExactMatrix([list(c) for c in zip(*basis)]).T.rref()
    rows = tuple(piv)
    sign = 1 if _det([[b[r] for r in rows] for b in basis]) > 0 else -1
    return rows, sign


def _barycenter(vertices) -> tuple:
    k = len(vertices)
    return tuple(sum((v[i] for v in vertices), Fraction(0)) / k for i in range(len(vertices[0])))


def incidence_number(cell_key: Key, facet_key: Key, shift) -> int:
    """Incidence of the facet lift ``facet_key + shift`` in the cell ``cell_key``."""
    rows, sign = _frame(cell_key)
    lift = [tuple(a + b for a, b in zip(v, shift)) for v in facet_key]
    outward = tuple(a - b for a, b in zip(_barycenter(lift), _barycenter(cell_key)))
    vectors = [outward] + list(orientation_basis(facet_key))
    d = _det([[v[r] for r in rows] for v in vectors])
    if d == 0:
        raise ValueError("degenerate facet orientation")
    return sign * (1 if d > 0 else -1)


def cw_from_torus_complex(t: TorusComplex, check: bool = True) -> CWComplex:
    """Cellular chain data of a torus complex; cells ordered by (dim, key)."""
    keys = t.keys()
    for k in keys:
        if not t.embeds(k):
            raise RefinementRequired(
                f"cell {k} is identified with itself under the period lattice; apply barycentric_refine first"
            )
    ids = {k: i for i, k in enumerate(keys)}
    cw = CWComplex()
    for k in keys:
        c = t.cells[k]
        facets: dict[int, int] = {}
        for f, s in c.facets:
            fid = ids[f]
            facets[fid] = facets.get(fid, 0) + incidence_number(k, f, s)
        cw.add_cell(c.dim, facets, key=k)
    if check:
        cw.check()
    return cw
