"""Exact matrices over Q (and over any exact field with +, -, *, /).

Entries are stored as :class:`fractions.Fraction` unless the caller passes
field elements of another exact type (e.g. Gaussian rationals); all
routines only use ring operations plus division by non-zero pivots.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; use Fraction or int")
    return Fraction(x)


def _coerce(x):
    # leave non-rational exact field elements (GaussQ) untouched
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; use Fraction or int")
    return x


class ExactMatrix:
    """A dense matrix with exact entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Sequence] = (), cols: int | None = None):
        data = [[_coerce(x) for x in row] for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self._data = data
        self.rows = len(data)
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> list:
        return list(self._data[i])

    def column(self, j: int) -> list:
        return [r[j] for r in self._data]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def to_int_list(self) -> list[list[int]]:
        out = []
        for r in self._data:
            row = []
            for x in r:
                if x.denominator != 1:
                    raise ValueError(f"non-integral entry {x}")
                row.append(int(x))
            out.append(row)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __hash__(self):
        return hash((self.cols, tuple(tuple(r) for r in self._data)))

    def __repr__(self) -> str:
        return f"ExactMatrix({[[str(x) for x in r] for r in self._data]})"

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self._data)] if self.rows else [], cols=self.rows)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = other.tolist()
        out = []
        for r in self._data:
            row = []
            for j in range(other.cols):
                s = 0
                for k, a in enumerate(r):
                    if a:
                        s = s + a * ocols[k][j]
                row.append(s)
            out.append(row)
        return ExactMatrix(out, cols=other.cols)

    def apply(self, v: Sequence) -> list:
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._data]

    def rref(self, pivot_from_right: bool = False):
        """Reduced row echelon form; returns (matrix, pivot_columns).

        With ``pivot_from_right`` the column order is reversed while
        eliminating, so pivots are chosen among the last columns first.
        """
        order = list(range(self.cols))
        if pivot_from_right:
            order.reverse()
        m = [list(r) for r in self._data]
        pivots = []
        r = 0
        for c in order:
            if r >= len(m):
                break
            p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            inv = 1 / m[r][c] if not isinstance(m[r][c], Fraction) else Fraction(1) / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return ExactMatrix(m, cols=self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        m = [list(r) for r in self._data]
        n = self.rows
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d = d * m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] / m[c][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return d

    def inverse(self) -> "ExactMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of non-square matrix")
        aug = ExactMatrix([r + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.tolist())])
        red, piv = aug.rref()
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return ExactMatrix([r[n:] for r in red.tolist()], cols=n)

    def solve(self, b: Sequence) -> list | None:
        """One solution of ``self @ x = b`` or ``None`` when inconsistent."""
        aug = ExactMatrix([r + [_coerce(bi)] for r, bi in zip(self.tolist(), b)], cols=self.cols + 1)
        red, piv = aug.rref()
        if self.cols in piv:
            return None
        x = [Fraction(0)] * self.cols
        for i, c in enumerate(piv):
            x[c] = red[i, self.cols]
        return x


def primitive_integer_vector(v: Sequence) -> list[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = [as_fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return ints
    return [a // g for a in ints]


def kernel_basis(m: ExactMatrix, integral: bool = True) -> ExactMatrix:
    """Rows form a basis of the right kernel ``{x : m x = 0}``.

    Pivots are taken from the rightmost columns so that for ``(1 1 1)``
    the basis is ``(1,0,-1), (0,1,-1)``.  With ``integral`` each row is
    rescaled to a primitive integer vector (only for rational input).
    """
    red, piv = m.rref(pivot_from_right=True)
    free = [c for c in range(m.cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -red[i, f]
        basis.append(v)
    if integral and all(isinstance(x, Fraction) for v in basis for x in v):
        basis = [primitive_integer_vector(v) for v in basis]
    return ExactMatrix(basis, cols=m.cols)


def rank_of(vectors: Sequence[Sequence]) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return ExactMatrix(vectors).rank()
