"""Integral cellular homology via sparse unimodular elimination and Smith form."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from ..polyhedra.normal_forms import smith_int
from .cw import CWComplex


@dataclass(frozen=True)
class Homology:
    """Per-degree ``(rank, torsion)`` with torsion a divisibility chain."""

    groups: tuple

    @property
    def betti(self) -> tuple:
        return tuple(r for r, _ in self.groups)

    def rank(self, k: int) -> int:
        return self.groups[k][0] if 0 <= k < len(self.groups) else 0

    def torsion(self, k: int) -> tuple:
        return self.groups[k][1] if 0 <= k < len(self.groups) else ()

    def to_json(self) -> list:
        return [{"dim": k, "rank": r, "torsion": list(t)} for k, (r, t) in enumerate(self.groups)]

    def __str__(self) -> str:
        parts = []
        for k, (r, t) in enumerate(self.groups):
            s = " + ".join(([f"Z^{r}"] if r else []) + [f"Z/{x}" for x in t]) or "0"
            parts.append(f"H{k} = {s}")
        return ", ".join(parts)


def sparse_rank_and_divisors(columns: list[dict]) -> tuple[int, list[int]]:
    """Rank and non-unit elementary divisors of a sparse integer matrix.

    ``columns[j]`` maps row index to entry.  Unit pivots are eliminated with
    column operations (a Markowitz-style choice keeps fill-in low); the
    residual block goes through a dense Smith form.
    """
    cols = [dict(c) for c in columns if c]
    rows: dict[int, set[int]] = {}
    for j, c in enumerate(cols):
        for r in c:
            rows.setdefault(r, set()).add(j)
    alive = set(range(len(cols)))
    rank = 0
    progress = True
    while progress:
        progress = False
        heap = [(len(cols[j]), j) for j in alive]
        heapq.heapify(heap)
        while heap:
            size, j = heapq.heappop(heap)
            if j not in alive:
                continue
            col = cols[j]
            if len(col) != size:
                if col:
                    heapq.heappush(heap, (len(col), j))
                else:
                    alive.discard(j)
                continue
            if not col:
                alive.discard(j)
                continue
            best = None
            for r, v in col.items():
                if v in (1, -1):
                    cost = len(rows[r])
                    if best is None or cost < best[0]:
                        best = (cost, r)
            if best is None:
                continue
            r = best[1]
            u = col[r]
            for k in list(rows[r]):
                if k == j:
                    continue
                other = cols[k]
                f = other[r] * u  # u = ±1 so dividing equals multiplying
                for rr, v in col.items():
                    nv = other.get(rr, 0) - f * v
                    if nv:
                        if rr not in other:
                            rows[rr].add(k)
                        other[rr] = nv
                    elif rr in other:
                        del other[rr]
                        rows[rr].discard(k)
                heapq.heappush(heap, (len(other), k))
            for rr in col:
                rows[rr].discard(j)
            del rows[r]
            cols[j] = {}
            alive.discard(j)
            rank += 1
            progress = True
    rest = [cols[j] for j in sorted(alive) if cols[j]]
    if not rest:
        return rank, []
    row_ids = sorted({r for c in rest for r in c})
    index = {r: i for i, r in enumerate(row_ids)}
    dense = [[0] * len(rest) for _ in row_ids]
    for j, c in enumerate(rest):
        for r, v in c.items():
            dense[index[r]][j] = v
    _, d, _ = smith_int(dense, with_transforms=False)
    divs = [abs(d[i][i]) for i in range(min(len(d), len(d[0]))) if d[i][i]]
    return rank + len(divs), [x for x in divs if x > 1]


def homology(c: CWComplex) -> Homology:
    top = c.dimension()
    if top < 0:
        return Homology(())
    counts = [0] * (top + 1)
    for d in c.dims:
        counts[d] += 1
    ranks = [0] * (top + 2)
    divisors: list[list[int]] = [[] for _ in range(top + 2)]
    for k in range(1, top + 1):
        columns = [c.boundary[i] for i, d in enumerate(c.dims) if d == k]
        ranks[k], divisors[k] = sparse_rank_and_divisors(columns)
    groups = []
    for k in range(top + 1):
        betti = counts[k] - ranks[k] - ranks[k + 1]
        groups.append((betti, tuple(sorted(divisors[k + 1]))))
    return Homology(tuple(groups))
