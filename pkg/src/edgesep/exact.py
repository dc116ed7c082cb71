"""Exact arithmetic for budgets of the form a + b*sqrt(d).

The tree-or-separator recursion works with radius budgets like
sqrt((h-1)*m/delta) and repeatedly subtracts integers from them.  All
size-versus-budget comparisons in contract assertions must be exact, so the
budgets are carried symbolically in the quadratic field Q[sqrt(d)] instead of
as floats.  Only the operations the recursion actually needs are provided.
"""

from __future__ import annotations

import math
from fractions import Fraction

_RationalLike = (int, Fraction)


class SqrtExpr:
    """Immutable exact value a + b*sqrt(d) with a, b, d rational and d >= 0."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a = Fraction(a)
        b = Fraction(b)
        d = Fraction(d)
        if d < 0:
            raise ValueError("negative radicand")
        if d == 0 or b == 0:
            # collapse the radical part so mixed-d comparisons stay legal
            b, d = Fraction(0), Fraction(0)
        else:
            root = _sqrt_if_exact(d)
            if root is not None:
                a, b, d = a + b * root, Fraction(0), Fraction(0)
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def sqrt(cls, q) -> "SqrtExpr":
        q = Fraction(q)
        return cls(0, 1, q)

    # -- arithmetic (only what the recursion needs) --

    def __add__(self, other):
        if isinstance(other, _RationalLike):
            return SqrtExpr(self.a + other, self.b, self.d)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _RationalLike):
            return SqrtExpr(self.a - other, self.b, self.d)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, _RationalLike):
            return SqrtExpr(self.a * other, self.b * other, self.d)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _RationalLike):
            return SqrtExpr(self.a / other, self.b / other, self.d)
        return NotImplemented

    # -- exact comparisons --

    def _cmp(self, other) -> int:
        """Sign of (self - other); other may be rational or same-field SqrtExpr."""
        if isinstance(other, _RationalLike):
            return _sign(self.a - other, self.b, self.d)
        if isinstance(other, SqrtExpr):
            if self.b == 0 or other.b == 0 or self.d == other.d:
                d = self.d if self.b != 0 else other.d
                return _sign(self.a - other.a, self.b - other.b, d)
            raise ValueError("cannot compare radicals over different fields")
        return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (SqrtExpr, *_RationalLike)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    # -- rounding --

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.d))

    def floor(self) -> int:
        f = math.floor(float(self))
        while self._cmp(f + 1) >= 0:
            f += 1
        while self._cmp(f) < 0:
            f -= 1
        return f

    def ceil(self) -> int:
        f = self.floor()
        return f if self._cmp(f) == 0 else f + 1

    def __repr__(self):
        if self.b == 0:
            return f"SqrtExpr({self.a})"
        return f"SqrtExpr({self.a} + {self.b}*sqrt({self.d}))"


def as_exact(value) -> SqrtExpr:
    """Coerce an int, Fraction, float or SqrtExpr into a SqrtExpr."""
    if isinstance(value, SqrtExpr):
        return value
    if isinstance(value, float):
        return SqrtExpr(Fraction(value))
    return SqrtExpr(Fraction(value))


def _sign(a: Fraction, b: Fraction, d: Fraction) -> int:
    """Sign of a + b*sqrt(d)."""
    if b == 0 or d == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    lhs = a * a
    rhs = b * b * d
    if a > 0:  # b < 0: positive iff a^2 > b^2 d
        return (lhs > rhs) - (lhs < rhs)
    return (rhs > lhs) - (rhs < lhs)


def _sqrt_if_exact(q: Fraction):
    """Return sqrt(q) as a Fraction when q is a perfect rational square, else None."""
    if q == 0:
        return Fraction(0)
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None
