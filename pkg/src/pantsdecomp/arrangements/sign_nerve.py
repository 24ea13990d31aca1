"""Sign-pattern models of a hyperplane-arrangement complement.

Points of the variety are ``[z_0 : ... : z_m] = [H_0(p) : ... : H_m(p)]``.
Scaling so that ``z_0 = 1`` makes the conditions below linear in the
real and imaginary parts of ``p``, so every question "does some point
have this sign pattern?" is an exact LP.

Level 2 covers each coordinate ``z_j`` by the four closed quadrants of
``C^*``.  Any intersection of cover elements is a product of closed
quadrants and closed rays cut with the variety, a convex cone, so the
nerve is homotopy equivalent to the variety; we return the order complex
of the poset of non-empty intersections, which is homotopy equivalent to
the nerve and has the realized quadrant patterns as its maximal
elements.

Level 1 uses the stratification of ``C^*`` into the open upper and lower
half-planes and the positive and negative real rays.  Its strata cut
with the variety are relatively open convex cones, and the order
complex of the poset of realized strata is again homotopy equivalent to
the variety.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..gaussian import GaussQ
from ..polyhedra.lp import max_slack
from ..topology.cw import CWComplex
from ..topology.homology import Homology, homology
from .ideal import ArrangementError, LinearIdeal, arrangement_from_ideal, is_essential

# per-coordinate strata of C^*: (name, kind, rotation in quarter turns)
STRATA = {
    1: [("+", "ray", 0), ("-", "ray", 2), ("i", "open", 0), ("j", "open", 2)],
    2: [(f"R{r}", "ray", r) for r in range(4)] + [(f"O{q}", "open_quadrant", q) for q in range(4)],
}
CLOSED_QUADRANTS = [(f"Q{q}", "quadrant", q) for q in range(4)]

# the closed cover elements (or strata) of each level containing a stratum
_CONTAINING = {
    1: {"+": ("+",), "-": ("-",), "i": ("i",), "j": ("j",)},
    2: {**{f"R{r}": (f"R{r}", f"Q{r}", f"Q{(r - 1) % 4}") for r in range(4)},
        **{f"O{q}": (f"Q{q}",) for q in range(4)}},
}

# immediate containment between the labels used in the poset
_ABOVE = {
    1: {"+": ("i", "j"), "-": ("i", "j"), "i": (), "j": ()},
    2: {**{f"R{r}": (f"Q{r}", f"Q{(r - 1) % 4}") for r in range(4)}, **{f"Q{q}": () for q in range(4)}},
}
_BELOW = {
    1: {"+": (), "-": (), "i": ("+", "-"), "j": ("+", "-")},
    2: {**{f"R{r}": () for r in range(4)}, **{f"Q{q}": (f"R{q}", f"R{(q + 1) % 4}") for q in range(4)}},
}


def _rotate(re_row, im_row, quarter: int):
    """Real and imaginary rows of ``z * (-i)^quarter``."""
    for _ in range(quarter % 4):
        re_row, im_row = im_row, [-x for x in re_row]
    return re_row, im_row


@dataclass
class _Realifier:
    columns: list  # per hyperplane: (re_row, im_row) over variables (Re p, Im p)
    nvars: int

    @classmethod
    def of(cls, hyperplanes) -> "_Realifier":
        d1 = len(hyperplanes[0])
        cols = []
        for h in hyperplanes:
            h = [GaussQ.coerce(x) for x in h]
            re_row = [x.re for x in h] + [-x.im for x in h]
            im_row = [x.im for x in h] + [x.re for x in h]
            cols.append((re_row, im_row))
        return cls(cols, 2 * d1)

    def base(self):
        re0, im0 = self.columns[0]
        return [], [], [], [im0, re0], [0, 1]

    def add(self, system, j: int, state) -> None:
        ub, rhs, strict, eq, eq_rhs = system
        _, kind, rot = state
        a, b = _rotate(*self.columns[j], rot)
        if kind == "ray":
            eq.append(b)
            eq_rhs.append(0)
            ub.append([-x for x in a])
            rhs.append(0)
            strict.append(True)
        elif kind == "open":
            ub.append([-x for x in b])
            rhs.append(0)
            strict.append(True)
        elif kind == "open_quadrant":
            ub.extend([[-x for x in a], [-x for x in b]])
            rhs.extend([0, 0])
            strict.extend([True, True])
        else:
            ub.extend([[-x for x in a], [-x for x in b], [-x - y for x, y in zip(a, b)]])
            rhs.extend([0, 0, 0])
            strict.extend([False, False, True])

    def feasible(self, system) -> bool:
        ub, rhs, strict, eq, eq_rhs = system
        if not ub:
            return True
        s = max_slack(ub, rhs, eq, eq_rhs, strict, n=self.nvars)
        return s is not None and s > 0


@dataclass
class SignNerve:
    level: int
    patterns: list  # realized patterns, tuples of state names for z_1/z_0, ..., z_m/z_0
    vertices: list  # patterns kept after removing beat points
    simplices: list = field(default_factory=list)  # chains of vertex indices

    @property
    def cover_elements(self) -> list:
        """Realized patterns in which no coordinate lies on a ray."""
        return [p for p in self.patterns if all(s in "ij" or s[0] == "Q" for s in p)]

    def to_cw(self) -> CWComplex:
        cw = CWComplex()
        ids = {}
        for s in sorted(self.simplices, key=lambda s: (len(s), s)):
            facets = {}
            if len(s) > 1:
                for k in range(len(s)):
                    facets[ids[s[:k] + s[k + 1:]]] = -1 if k % 2 else 1
            ids[s] = cw.add_cell(len(s) - 1, facets, key=s)
        return cw

    def homology(self) -> Homology:
        return homology(self.to_cw())

    def betti(self) -> tuple:
        """Betti numbers with trailing zeros dropped."""
        b = list(self.homology().betti)
        while len(b) > 1 and b[-1] == 0:
            b.pop()
        return tuple(b)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "patterns": [list(p) for p in self.patterns],
            "vertices": [list(p) for p in self.vertices],
            "simplices": [list(s) for s in self.simplices],
        }


def realized_strata(ideal: LinearIdeal, level: int = 2) -> list[tuple]:
    """Per-coordinate strata patterns met by the variety, found by depth-first LP pruning."""
    if level not in STRATA:
        raise ValueError(f"level must be 1 or 2, got {level}")
    if not is_essential(ideal):
        raise ArrangementError("sign nerves need an essential ideal")
    arr = arrangement_from_ideal(ideal)
    real = _Realifier.of(arr.hyperplanes)
    m = len(arr.hyperplanes) - 1
    out = []

    def extend(j, prefix, system):
        if j > m:
            out.append(tuple(prefix))
            return
        for st in STRATA[level]:
            new = tuple(list(part) for part in system)
            real.add(new, j, st)
            if real.feasible(new):
                extend(j + 1, prefix + [st[0]], new)

    extend(1, [], real.base())
    return out


def realized_patterns(ideal: LinearIdeal, level: int = 2) -> list[tuple]:
    """Poset elements: level-1 strata, or non-empty intersections of closed quadrant products."""
    found = set()
    for stratum in realized_strata(ideal, level):
        found.update(product(*(_CONTAINING[level][x] for x in stratum)))
    return sorted(found)


def _neighbours(p: tuple, table: dict, alive: set) -> list[tuple]:
    """Elements of ``alive`` obtained by moving any set of coordinates one step in ``table``."""
    options = [(x,) + table[x] for x in p]
    return [q for q in product(*options) if q != p and q in alive]


def _leq_from(table: dict):
    def leq(u, v):
        return all(a == b or b in table[a] for a, b in zip(u, v))
    return leq


def _reduce_beat_points(patterns: list[tuple], level: int) -> list[tuple]:
    """Drop elements whose strict up-set has a minimum or down-set a maximum.

    Removing such a point does not change the homotopy type of the order
    complex.  Labels form chains of length one, so strict up- and down-sets
    are one-step neighbourhoods.
    """
    alive = set(patterns)
    tests = [(_ABOVE[level], _leq_from(_ABOVE[level])), (_BELOW[level], _leq_from(_BELOW[level]))]
    changed = True
    while changed:
        changed = False
        for p in sorted(alive):
            for table, extreme in tests:
                near = _neighbours(p, table, alive)
                if near and any(all(extreme(u, v) for v in near) for u in near):
                    alive.discard(p)
                    changed = True
                    break
    return sorted(alive)


def sign_nerve(ideal: LinearIdeal, level: int = 2, reduce: bool = True) -> SignNerve:
    """Order complex of realized sign patterns; see the module docstring."""
    pats = realized_patterns(ideal, level)
    keep = _reduce_beat_points(pats, level) if reduce else pats
    index = {p: i for i, p in enumerate(keep)}
    alive = set(keep)
    up = {p: _neighbours(p, _ABOVE[level], alive) for p in keep}
    simplices = []

    def extend(chain):
        simplices.append(tuple(index[p] for p in chain))
        for q in up[chain[-1]]:
            extend(chain + [q])

    for p in keep:
        extend([p])
    return SignNerve(level, pats, keep, simplices)


def quadrant_product_feasible(ideal: LinearIdeal, pattern, level: int = 2) -> bool:
    """Does the variety meet the product of the given labels (strata or closed quadrants ``Q0..Q3``)?"""
    arr = arrangement_from_ideal(ideal)
    real = _Realifier.of(arr.hyperplanes)
    lookup = {s[0]: s for s in STRATA[level] + CLOSED_QUADRANTS}
    system = real.base()
    for j, name in enumerate(pattern, start=1):
        real.add(system, j, lookup[name])
    return real.feasible(system)

