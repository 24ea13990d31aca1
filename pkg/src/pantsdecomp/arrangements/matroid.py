"""Realized matroids, characteristic polynomials and Bergman fans."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..polyhedra.matrix import ExactMatrix
from ..polyhedra.polyhedron import PolyCell, PolyComplex, Polyhedron
from ..tropical.hypersurface import TropicalComplex
from .ideal import Arrangement


class LoopError(ValueError):
    pass


class Matroid:
    """Column matroid of a matrix; subsets of the ground set are bitmasks."""

    def __init__(self, columns: Sequence[Sequence]):
        self.columns = [tuple(c) for c in columns]
        self.ground_size = len(self.columns)
        self._rank: dict[int, int] = {}
        self._flats: list[int] | None = None
        self._mobius: dict[int, int] | None = None

    @classmethod
    def from_arrangement(cls, arr: Arrangement) -> "Matroid":
        return cls(arr.hyperplanes)

    @classmethod
    def uniform(cls, r: int, n: int) -> "Matroid":
        """``U_{r,n}`` realized by moment-curve columns ``(1, j, j^2, ...)``."""
        return cls([tuple(j ** k for k in range(r)) for j in range(1, n + 1)])

    def rank(self, subset: int | Sequence[int] | None = None) -> int:
        if subset is None:
            subset = (1 << self.ground_size) - 1
        if not isinstance(subset, int):
            subset = sum(1 << i for i in set(subset))
        if subset not in self._rank:
            cols = [self.columns[i] for i in range(self.ground_size) if subset >> i & 1]
            self._rank[subset] = ExactMatrix(cols).rank() if cols else 0
        return self._rank[subset]

    @property
    def full_rank(self) -> int:
        return self.rank(None)

    def loops(self) -> list[int]:
        return [i for i in range(self.ground_size) if self.rank(1 << i) == 0]

    def closure(self, subset: int) -> int:
        r = self.rank(subset)
        out = subset
        for i in range(self.ground_size):
            if not out >> i & 1 and self.rank(subset | 1 << i) == r:
                out |= 1 << i
        return out

    def flats(self) -> list[int]:
        """All flats, sorted by rank then bitmask."""
        if self._flats is None:
            found = {self.closure(0)}
            frontier = list(found)
            while frontier:
                nxt = []
                for f in frontier:
                    for i in range(self.ground_size):
                        if not f >> i & 1:
                            g = self.closure(f | 1 << i)
                            if g not in found:
                                found.add(g)
                                nxt.append(g)
                frontier = nxt
            self._flats = sorted(found, key=lambda f: (self.rank(f), f))
        return self._flats

    def mobius(self) -> dict[int, int]:
        """``mu(bottom, F)`` for every flat ``F``."""
        if self._mobius is None:
            flats = self.flats()
            mu: dict[int, int] = {}
            for f in flats:
                if f == flats[0]:
                    mu[f] = 1
                else:
                    mu[f] = -sum(v for g, v in mu.items() if g & f == g and g != f)
            self._mobius = mu
        return self._mobius

    def as_sets(self, mask: int) -> list[int]:
        return [i for i in range(self.ground_size) if mask >> i & 1]

    def to_json(self) -> dict:
        mu = self.mobius()
        return {
            "ground_size": self.ground_size,
            "rank": self.full_rank,
            "flats": [{"elements": self.as_sets(f), "rank": self.rank(f), "mobius": mu[f]} for f in self.flats()],
        }


def characteristic_polynomial(m: Matroid) -> list[int]:
    """Coefficients of ``chi(t)``, highest degree first."""
    if m.loops():
        raise LoopError(f"matroid has loops {m.loops()}")
    r = m.full_rank
    coeffs = [0] * (r + 1)
    for f, v in m.mobius().items():
        coeffs[m.rank(f)] += v
    return coeffs


def reduced_characteristic_polynomial(m: Matroid) -> list[int]:
    """``chi(t) / (t - 1)`` by synthetic division, highest degree first."""
    coeffs = characteristic_polynomial(m)
    out = []
    acc = 0
    for c in coeffs[:-1]:
        acc = acc + c
        out.append(acc)
    if acc + coeffs[-1] != 0:
        raise ArithmeticError("t - 1 does not divide the characteristic polynomial")
    return out


def complement_betti(m: Matroid) -> tuple:
    """Betti numbers of the projective complement (unsigned reduced coefficients)."""
    return tuple(abs(c) for c in reduced_characteristic_polynomial(m))


def format_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    deg = len(coeffs) - 1
    parts = []
    for k, c in enumerate(coeffs):
        p = deg - k
        if c == 0:
            continue
        mono = "" if p == 0 else (var if p == 1 else f"{var}^{p}")
        if not mono:
            s = str(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{c}*{mono}"
        parts.append(s)
    if not parts:
        return "0"
    text = parts[0]
    for s in parts[1:]:
        text += " - " + s[1:] if s.startswith("-") else " + " + s
    return text


# ---------------------------------------------------------------------------
# Bergman fans


@dataclass
class BergmanFan:
    """Cones ``cone(u_F : F in flag)`` in ``R^{E} / R(1,...,1)``, coordinates dropping the last element."""

    ambient_dim: int
    flags: list  # tuples of flats (bitmasks), increasing
    rays: dict  # flat -> u_F
    cones: list = field(default_factory=list)  # Polyhedron per flag
    lineality: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.flags)

    def maximal_flags(self) -> list:
        return [f for f in self.flags if len(f) == self.dimension]

    def to_tropical_complex(self) -> TropicalComplex:
        index = {f: i for i, f in enumerate(self.flags)}
        origin = tuple(Fraction(0) for _ in range(self.ambient_dim))
        cells = []
        for flag, cone in zip(self.flags, self.cones):
            faces = tuple(sorted(index[flag[:j] + flag[j + 1:]] for j in range(len(flag))))
            rays = tuple(self.rays[fl] for fl in flag)
            cells.append(PolyCell(index[flag], len(flag), (origin,), rays, faces, (), flag, _poly=cone))
        weights = {index[f]: 1 for f in self.maximal_flags()}
        return TropicalComplex(self.ambient_dim, PolyComplex(self.ambient_dim, cells), weights)


def flat_vector(mask: int, ground_size: int) -> tuple:
    """``u_F = sum_{i in F} e_i`` with ``e_last = -(e_0 + ... )``."""
    m = ground_size - 1
    u = [0] * m
    for i in range(ground_size):
        if mask >> i & 1:
            if i < m:
                u[i] += 1
            else:
                u = [x - 1 for x in u]
    return tuple(u)


def bergman_fan(m: Matroid) -> BergmanFan:
    if m.loops():
        raise LoopError(f"matroid has loops {m.loops()}")
    full = (1 << m.ground_size) - 1
    proper = [f for f in m.flats() if f != full and f != m.closure(0)]
    n = m.ground_size - 1
    rays = {f: flat_vector(f, m.ground_size) for f in proper}
    flags: list[tuple] = [()]

    def extend(flag):
        for f in proper:
            if not flag or (flag[-1] & f == flag[-1] and f != flag[-1]):
                new = flag + (f,)
                flags.append(new)
                extend(new)

    extend(())
    flags.sort(key=lambda fl: (len(fl), fl))
    origin = tuple(0 for _ in range(n))
    cones = [Polyhedron.from_points([origin], [rays[f] for f in flag]) if n else Polyhedron(0)
             for flag in flags]
    return BergmanFan(n, flags, rays, cones)
