"""Gaussian rationals ``a + b i`` with exact arithmetic."""

from __future__ import annotations

from fractions import Fraction


class GaussQ:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussQ):
            re, im = re.re, re.im + Fraction(im)
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floating point input is not accepted")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x) -> "GaussQ":
        return x if isinstance(x, GaussQ) else GaussQ(x)

    def __add__(self, o):
        o = GaussQ.coerce(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussQ.coerce(o))

    def __rsub__(self, o):
        return GaussQ.coerce(o) - self

    def __mul__(self, o):
        o = GaussQ.coerce(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def __truediv__(self, o):
        o = GaussQ.coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        p = self * o.conjugate()
        return GaussQ(p.re / n, p.im / n)

    def __rtruediv__(self, o):
        return GaussQ.coerce(o) / self

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if isinstance(o, GaussQ):
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __ne__(self, o):
        r = self.__eq__(o)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def phase(self) -> Fraction:
        """Argument in half-turns, in ``[0, 2)``; only rational multiples are supported."""
        a, b = self.re, self.im
        if not self:
            raise ValueError("zero has no phase")
        if b == 0:
            return Fraction(0) if a > 0 else Fraction(1)
        if a == 0:
            return Fraction(1, 2) if b > 0 else Fraction(3, 2)
        if abs(a) == abs(b):
            table = {(1, 1): Fraction(1, 4), (-1, 1): Fraction(3, 4), (-1, -1): Fraction(5, 4), (1, -1): Fraction(7, 4)}
            return table[(1 if a > 0 else -1, 1 if b > 0 else -1)]
        raise ValueError(f"the argument of {self} is not a rational number of half-turns")

    def __repr__(self) -> str:
        return f"GaussQ({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i" if self.im != 1 else "i"
        return f"({self.re}+{self.im}*i)" if self.im > 0 else f"({self.re}{self.im}*i)"
