"""Angle complexes of generic hyperplane complements.

Coordinates are ``y_i = x_i - x_0`` (half-turn units) on ``R^n`` with period
lattice ``2Z^n``.  The hyperplanes ``y_i ∈ Z`` and ``y_i - y_j ∈ Z`` cut
every unit cube into the simplices ``k, k+e_p1, k+e_p1+e_p2, ...``; the
angle complex keeps those cells whose interior avoids every period
translate of the open zonotope ``{|x_i - x_j| < 1}``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import floor
from typing import Iterable, Sequence

from ..polyhedra.polyhedron import Polyhedron
from .torus import Lattice, TorusComplex


def _nearest_even(x: Fraction):
    """The even integer within distance < 1 of ``x``, or None for odd integers."""
    lo = 2 * floor(x / 2)
    if x - lo < 1:
        return lo
    if lo + 2 - x < 1:
        return lo + 2
    return None


def in_open_zonotope_translate(point: Sequence, constrained: Sequence[int]) -> bool:
    """Whether ``point`` lies in ``u + {|x_i - x_j| < 1 : i,j ∈ constrained}`` for some ``u ∈ 2Z``.

    ``point`` lists ``x_1..x_n`` with ``x_0 = 0`` implied; ``constrained``
    uses indices ``0..n``.  With fewer than two constrained coordinates the
    condition is vacuous and every point is inside.
    """
    cons = sorted(set(constrained))
    if len(cons) < 2:
        return True
    x = [Fraction(0)] + [Fraction(v) for v in point]
    ref = cons[0]
    shifted = []
    for i in cons[1:]:
        d = x[i] - x[ref]
        u = _nearest_even(d)
        if u is None:
            return False
        shifted.append(d - u)
    shifted.append(Fraction(0))
    return max(shifted) - min(shifted) < 1


def removed_zonotope(n: int, constrained: Sequence[int] | None = None) -> Polyhedron:
    """Closure of ``{|x_i - x_j| < 1 : i,j ∈ constrained}`` in coordinates ``x_1..x_n`` (``x_0 = 0``).

    For the full index set at ``n = 3`` this is a rhombic dodecahedron.
    """
    cons = sorted(set(range(n + 1) if constrained is None else constrained))
    ineqs = []
    for i, j in combinations(cons, 2):
        a = [0] * n
        if i:
            a[i - 1] += 1
        a[j - 1] -= 1
        ineqs.append((a, 1))
        ineqs.append(([-x for x in a], 1))
    return Polyhedron(n, ineqs)


def kuhn_simplices(n: int, box: Iterable[Sequence[int]] | None = None) -> list[list[tuple]]:
    """Top simplices of the Freudenthal triangulation of the unit cubes at ``box`` corners."""
    if box is None:
        box = product(range(2), repeat=n)
    out = []
    for corner in box:
        for perm in permutations(range(n)):
            v = [Fraction(c) for c in corner]
            simplex = [tuple(v)]
            for i in perm:
                v[i] += 1
                simplex.append(tuple(v))
            out.append(simplex)
    return out


def coxeter_torus_complex(n: int, period_scale: int = 2) -> TorusComplex:
    """The full affine Coxeter tiling of ``R^n / (period_scale Z)^n``."""
    period = Lattice([[period_scale if i == j else 0 for j in range(n)] for i in range(n)])
    t = TorusComplex(n, period)
    for simplex in kuhn_simplices(n, product(range(period_scale), repeat=n)):
        t.add_closure(simplex)
    return t


def _complement_of_translates(ambient: TorusComplex, constrained: Sequence[int]) -> TorusComplex:
    keep = {}
    for k, c in ambient.cells.items():
        if not in_open_zonotope_translate(c.barycenter(), constrained):
            keep[k] = c
    return TorusComplex(ambient.ambient_dim, ambient.period, keep)


def generic_angle_complex(n: int) -> TorusComplex:
    """Completed angle complex of ``V(1 + x_1 + ... + x_n)`` on ``R^n / 2Z^n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _complement_of_translates(coxeter_torus_complex(n), range(n + 1))


def boundary_stratum_complex(n: int, removed: Iterable[int], support: Iterable[int] | None = None) -> TorusComplex:
    """Angle complex of the boundary stratum indexed by ``removed ⊆ support ⊆ {0..n}``.

    The ambient torus has coordinates ``x_j - x_{j0}`` for ``j`` in
    ``support`` (``j0`` its smallest element); only pairs of coordinates
    in ``support \\ removed`` constrain the modified zonotope.  With
    ``support = {0..n}`` the result is a subcomplex of
    ``generic_angle_complex(n)``.
    """
    full = list(range(n + 1))
    removed = sorted(set(removed))
    support = full if support is None else sorted(set(support))
    if not set(removed) <= set(support) or not set(support) <= set(full):
        raise ValueError("need removed ⊆ support ⊆ {0..n}")
    free = [j for j in support if j not in removed]
    if len(free) < 2:
        raise ValueError("stratum index set is not proper: at least two coordinates must remain")
    m = len(support) - 1
    local = {j: i for i, j in enumerate(support)}
    ambient = coxeter_torus_complex(m)
    out = _complement_of_translates(ambient, [local[j] for j in free])
    for c in out.cells.values():
        c.label = ("stratum", tuple(removed), tuple(support))
    return out
