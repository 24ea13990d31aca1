"""Integer Smith and Hermite normal forms.

The working representation is a list of lists of Python ints; the public
``smith_normal_form`` wraps it in :class:`ExactMatrix`.
"""

from __future__ import annotations

from typing import Sequence

from .matrix import ExactMatrix


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _as_int_rows(m) -> list[list[int]]:
    if isinstance(m, ExactMatrix):
        return m.to_int_list()
    rows = []
    for r in m:
        row = []
        for x in r:
            if int(x) != x:
                raise ValueError(f"non-integral entry {x}")
            row.append(int(x))
        rows.append(row)
    return rows


def smith_int(a: Sequence[Sequence[int]], with_transforms: bool = True):
    """Smith form of an integer matrix given as nested lists.

    Returns ``(left, diag, right)`` with ``left @ a @ right == diag``; when
    ``with_transforms`` is false the transforms are ``None``.
    """
    d = [list(r) for r in a]
    m = len(d)
    n = len(d[0]) if m else 0
    left = _identity(m) if with_transforms else None
    right = _identity(n) if with_transforms else None

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        if left is not None:
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        if right is not None:
            for r in right:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row dst += q * row src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        if left is not None:
            left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, q):
        for r in d:
            r[dst] += q * r[src]
        if right is not None:
            for r in right:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = d[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    if d[i][t]:
                        done = False
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    if d[t][j]:
                        done = False
            if not done:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            if left is not None:
                left[t] = [-x for x in left[t]]
    return left, d, right


def smith_normal_form(m):
    """``(left, diag, right)`` as ExactMatrix objects with ``left·m·right = diag``."""
    rows = _as_int_rows(m)
    cols = m.cols if isinstance(m, ExactMatrix) else (len(rows[0]) if rows else 0)
    if not rows or cols == 0:
        r = len(rows)
        return ExactMatrix.identity(r), ExactMatrix(rows, cols=cols), ExactMatrix.identity(cols)
    left, diag, right = smith_int(rows)
    return ExactMatrix(left), ExactMatrix(diag, cols=cols), ExactMatrix(right)


def elementary_divisors(a: Sequence[Sequence[int]]) -> list[int]:
    """Non-zero diagonal entries of the Smith form."""
    rows = _as_int_rows(a)
    if not rows or not rows[0]:
        return []
    _, d, _ = smith_int(rows, with_transforms=False)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Returned rows are in echelon form with positive pivots and entries
    above each pivot reduced into ``[0, pivot)``; zero rows are dropped.
    """
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        zero = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col]:
                    rest.append(r)
                elif any(r):
                    zero.append(r)
            nz = [p] + rest
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        out.append(p)
        rows = zero
        col += 1
    for i, r in enumerate(out):
        c = next(k for k, x in enumerate(r) if x)
        for j in range(i):
            q = out[j][c] // r[c]
            if q:
                out[j] = [x - q * y for x, y in zip(out[j], r)]
    return out


def hermite_normal_form(m) -> ExactMatrix:
    rows = _as_int_rows(m)
    cols = m.cols if isinstance(m, ExactMatrix) else len(rows[0])
    return ExactMatrix(hermite_rows(rows), cols=cols)


def saturated_basis(vectors: Sequence[Sequence], n: int) -> list[list[int]]:
    """Integer basis of ``span(vectors) ∩ Z^n``."""
    from .matrix import kernel_basis

    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    ortho = kernel_basis(ExactMatrix(vecs, cols=n)).to_int_list()
    if not ortho:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    # integer kernel of the orthogonal complement
    left, d, right = smith_int(ortho)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i])
    return hermite_rows([[right[i][j] for i in range(n)] for j in range(r, n)])


def lattice_index(sub: Sequence[Sequence[int]], n: int | None = None) -> int:
    """Index of the lattice spanned by ``sub`` inside its saturation."""
    sub = [list(map(int, v)) for v in sub]
    if not sub:
        return 1
    divs = elementary_divisors(sub)
    out = 1
    for x in divs:
        out *= x
    return out
