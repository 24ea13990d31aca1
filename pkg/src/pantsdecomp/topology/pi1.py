"""Fundamental groups of CW complexes and finite-group hom counts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product

from ..polyhedra.normal_forms import elementary_divisors
from .cw import CWComplex


@dataclass
class GroupPresentation:
    generator_count: int
    relators: list = field(default_factory=list)  # words as lists of (generator, exponent)

    def to_json(self) -> dict:
        return {"generators": self.generator_count,
                "relators": [[[g, e] for g, e in w] for w in self.relators]}

    def __str__(self) -> str:
        names = generator_names(self.generator_count)

        def word(w):
            return "*".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in w) or "1"

        return "<" + ", ".join(names) + " | " + ", ".join(word(w) for w in self.relators) + ">"


def generator_names(k: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(k)] if k <= 26 else [f"g{i}" for i in range(k)]


# words are handled internally as lists of non-zero ints: +(g+1) or -(g+1)


def _free_reduce(w: list[int]) -> list[int]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _cyclic_reduce(w: list[int]) -> list[int]:
    w = _free_reduce(w)
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def _inverse(w: list[int]) -> list[int]:
    return [-x for x in reversed(w)]


def _to_runs(w: list[int]) -> list[tuple[int, int]]:
    runs: list[list[int]] = []
    for x in w:
        g, e = abs(x) - 1, (1 if x > 0 else -1)
        if runs and runs[-1][0] == g:
            runs[-1][1] += e
            if runs[-1][1] == 0:
                runs.pop()
        else:
            runs.append([g, e])
    return [(g, e) for g, e in runs]


def _from_runs(w) -> list[int]:
    out = []
    for g, e in w:
        out.extend([(g + 1) if e > 0 else -(g + 1)] * abs(e))
    return out


def _canonical_rotation(w: list[int]) -> tuple:
    if not w:
        return ()
    rots = [tuple(w[i:] + w[:i]) for i in range(len(w))]
    inv = _inverse(w)
    rots += [tuple(inv[i:] + inv[:i]) for i in range(len(inv))]
    return min(rots)


class DisconnectedError(ValueError):
    pass


def _edge_ends(c: CWComplex, e: int):
    b = c.boundary[e]
    if not b:
        return None
    heads = [v for v, k in b.items() if k == 1]
    tails = [v for v, k in b.items() if k == -1]
    if len(heads) != 1 or len(tails) != 1 or len(b) != 2:
        raise ValueError(f"edge {e} does not have one head and one tail")
    return tails[0], heads[0]


def _boundary_walk(c: CWComplex, cell: int, ends: dict) -> list[tuple[int, int]]:
    """The attaching loop of a 2-cell as ``(edge, ±1)`` steps."""
    b = c.boundary[cell]
    if any(abs(k) != 1 for k in b.values()):
        raise ValueError(f"2-cell {cell} has an edge with incidence other than ±1; refine first")
    loops = [e for e in b if ends[e] is None]
    if loops:
        if len(b) != 1:
            raise ValueError(f"2-cell {cell} mixes loop edges with others; refine first")
        e = loops[0]
        return [(e, b[e])]
    steps = []
    for e, k in b.items():
        t, h = ends[e]
        steps.append((e, k, t, h) if k > 0 else (e, k, h, t))
    by_start: dict[int, list] = {}
    for s in steps:
        by_start.setdefault(s[2], []).append(s)
    if any(len(v) != 1 for v in by_start.values()):
        raise ValueError(f"2-cell {cell} is not attached along an embedded circle")
    first = min(steps)
    walk = [first]
    while True:
        nxt = by_start[walk[-1][3]][0]
        if nxt == first:
            break
        walk.append(nxt)
        if len(walk) > len(steps):
            raise ValueError(f"2-cell {cell} boundary does not close up")
    if len(walk) != len(steps):
        raise ValueError(f"2-cell {cell} boundary consists of several circles")
    return [(e, k) for e, k, _, _ in walk]


def fundamental_group(c: CWComplex, basepoint: int | None = None, simplify: bool = True) -> GroupPresentation:
    """Edge-path presentation from a BFS spanning tree, then Tietze simplification."""
    verts = c.cells_of_dim(0)
    if not verts:
        raise ValueError("empty complex")
    base = min(verts) if basepoint is None else basepoint
    edges = c.cells_of_dim(1)
    ends = {e: _edge_ends(c, e) for e in edges}
    adj: dict[int, list] = {v: [] for v in verts}
    for e in edges:
        if ends[e] is not None:
            t, h = ends[e]
            adj[t].append((e, h))
            adj[h].append((e, t))
    seen = {base}
    tree = set()
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for e, w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                tree.add(e)
                queue.append(w)
    if len(seen) != len(verts):
        comps = _components(verts, adj)
        raise DisconnectedError(f"complex has {len(comps)} components; first vertices {[min(x) for x in comps]}")
    gens = [e for e in edges if e not in tree]
    gid = {e: i for i, e in enumerate(gens)}
    relators = []
    for cell in c.cells_of_dim(2):
        word = []
        for e, k in _boundary_walk(c, cell, ends):
            if e in gid:
                word.append((gid[e] + 1) * k)
        relators.append(_cyclic_reduce(word))
    if simplify:
        count, relators = tietze(len(gens), relators)
    else:
        count = len(gens)
        relators = [r for r in relators if r]
    return GroupPresentation(count, [_to_runs(r) for r in relators])


def _components(verts, adj):
    left = set(verts)
    comps = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for _, w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
        left -= comp
    return comps


def tietze(count: int, relators: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Eliminate generators occurring exactly once in some relator, shortest relator first."""
    rels = {}
    for r in relators:
        r = _cyclic_reduce(r)
        if r:
            rels.setdefault(_canonical_rotation(r), r)
    rels = list(rels.values())
    alive = set(range(count))
    while True:
        best = None
        for idx, r in enumerate(rels):
            if best is not None and len(r) >= len(rels[best[0]]):
                continue
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            single = sorted(g for g, k in counts.items() if k == 1)
            if single:
                best = (idx, single[0])
        if best is None:
            break
        idx, g = best
        r = rels.pop(idx)
        pos = next(i for i, x in enumerate(r) if abs(x) == g)
        rotated = r[pos:] + r[:pos]
        # rotated = g^s * rest  =>  g = rest^-1 (s=1) or g = rest (s=-1)
        rest = rotated[1:]
        image = _inverse(rest) if rotated[0] > 0 else rest
        inv_image = _inverse(image)
        new = {}
        for w in rels:
            if any(abs(x) == g for x in w):
                out = []
                for x in w:
                    if x == g:
                        out.extend(image)
                    elif x == -g:
                        out.extend(inv_image)
                    else:
                        out.append(x)
                w = _cyclic_reduce(out)
            if w:
                new.setdefault(_canonical_rotation(w), w)
        rels = list(new.values())
        alive.discard(g - 1)
    order = sorted(alive)
    renum = {g + 1: i + 1 for i, g in enumerate(order)}
    out = []
    for w in rels:
        out.append([renum[abs(x)] * (1 if x > 0 else -1) for x in w])
    out.sort(key=lambda w: (len(w), w))
    return len(order), out


def abelianization(p: GroupPresentation) -> tuple[int, tuple]:
    """``(free rank, torsion coefficients)`` of the abelianized group."""
    rows = []
    for w in p.relators:
        row = [0] * p.generator_count
        for g, e in w:
            row[g] += e
        if any(row):
            rows.append(row)
    if not rows or p.generator_count == 0:
        return p.generator_count, ()
    divs = elementary_divisors(rows)
    return p.generator_count - len(divs), tuple(d for d in divs if d > 1)


# ---------------------------------------------------------------------------
# finite groups and hom counting


@dataclass
class FiniteGroup:
    name: str
    table: list  # table[a][b] = a*b
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.table)

    def inverse(self, a: int) -> int:
        return next(b for b in range(self.order) if self.table[a][b] == self.identity)


def _group_from_elements(name, elements, mul, identity) -> FiniteGroup:
    elements = list(elements)
    idx = {e: i for i, e in enumerate(elements)}
    table = [[idx[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(name, table, idx[identity])


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def _closure(gens):
    ident = tuple(range(len(gens[0])))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _compose(a, g)
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(elems)


def _sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def symmetric_group_3() -> FiniteGroup:
    return _group_from_elements("S3", sorted(permutations(range(3))), _compose, (0, 1, 2))


def dihedral_group_4() -> FiniteGroup:
    return _group_from_elements("D4", _closure([(1, 2, 3, 0), (0, 3, 2, 1)]), _compose, (0, 1, 2, 3))


def alternating_group_4() -> FiniteGroup:
    elems = [p for p in sorted(permutations(range(4))) if _sign(p) == 1]
    return _group_from_elements("A4", elems, _compose, (0, 1, 2, 3))


def quaternion_group() -> FiniteGroup:
    # units (sign, basis) with basis in 1, i, j, k
    basis_mul = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def mul(a, b):
        s, u = basis_mul[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    elems = [(s, u) for s in (1, -1) for u in ("1", "i", "j", "k")]
    return _group_from_elements("Q8", elems, mul, (1, "1"))


GROUPS = {
    "s3": symmetric_group_3,
    "d4": dihedral_group_4,
    "q8": quaternion_group,
    "a4": alternating_group_4,
}


def count_homs(p: GroupPresentation, g: FiniteGroup, max_order: int = 24, max_generators: int = 6) -> int:
    """Number of homomorphisms from the presented group to ``g``, by backtracking."""
    if g.order > max_order:
        raise ValueError(f"group order {g.order} exceeds the bound {max_order}")
    if p.generator_count > max_generators:
        raise ValueError(f"{p.generator_count} generators exceed the bound {max_generators}")
    k = p.generator_count
    inv = [g.inverse(a) for a in range(g.order)]
    words = [_from_runs(w) for w in p.relators]
    # check each relator as soon as its largest generator is assigned
    by_last: dict[int, list] = {}
    for w in words:
        if w:
            by_last.setdefault(max(abs(x) for x in w) - 1, []).append(w)
    assign = [0] * k

    def evaluate(w) -> int:
        acc = g.identity
        for x in w:
            a = assign[abs(x) - 1]
            acc = g.table[acc][a if x > 0 else inv[a]]
        return acc

    def rec(i: int) -> int:
        if i == k:
            return 1
        total = 0
        for a in range(g.order):
            assign[i] = a
            if all(evaluate(w) == g.identity for w in by_last.get(i, ())):
                total += rec(i + 1)
        return total

    return rec(0)


def free_abelian_presentation(rank: int) -> GroupPresentation:
    rels = []
    for i in range(rank):
        for j in range(i + 1, rank):
            rels.append([(i, 1), (j, 1), (i, -1), (j, -1)])
    return GroupPresentation(rank, rels)


def commuting_tuples(g: FiniteGroup, k: int) -> int:
    """Brute-force count of pairwise commuting ``k``-tuples: the hom count from ``Z^k``."""
    count = 0
    for tup in product(range(g.order), repeat=k):
        if all(g.table[a][b] == g.table[b][a] for i, a in enumerate(tup) for b in tup[i + 1:]):
            count += 1
    return count
