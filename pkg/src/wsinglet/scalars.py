"""Exact arithmetic in the quadratic field Q(sqrt(2p))."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational

__all__ = ["ExactScalar", "as_fraction", "frac_str", "parse_frac", "scalar_pair"]


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


class ExactScalar:
    """``rat + surd * sqrt(2p)`` with exact rational parts.

    When ``2p`` is a perfect square the surd part is folded into the
    rational part on construction, so equality is a plain pair comparison.
    """

    __slots__ = ("rat", "surd", "p")

    def __init__(self, rat=0, surd=0, p: int = 2):
        if p < 1:
            raise ValueError("p must be positive")
        rat = Fraction(rat)
        surd = Fraction(surd)
        if surd and _is_square(2 * p):
            rat += surd * isqrt(2 * p)
            surd = Fraction(0)
        self.rat = rat
        self.surd = surd
        self.p = p

    # -- constructors -------------------------------------------------
    @classmethod
    def sqrt2p(cls, p: int) -> ExactScalar:
        return cls(0, 1, p)

    @classmethod
    def lambda_p(cls, p: int) -> ExactScalar:
        """(p-1)/sqrt(2p) = (p-1)/(2p) * sqrt(2p)."""
        return cls(0, Fraction(p - 1, 2 * p), p)

    # -- helpers ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, ExactScalar):
            if other.p != self.p:
                raise ValueError(f"field mismatch: Q(sqrt{2 * self.p}) vs Q(sqrt{2 * other.p})")
            return other
        if isinstance(other, (int, Rational)):
            return ExactScalar(other, 0, self.p)
        return None

    @property
    def is_rational(self) -> bool:
        return self.surd == 0

    def to_fraction(self) -> Fraction:
        if self.surd:
            raise ValueError(f"{self} is not rational")
        return self.rat

    def conjugate(self) -> ExactScalar:
        return ExactScalar(self.rat, -self.surd, self.p)

    def norm(self) -> Fraction:
        return self.rat * self.rat - 2 * self.p * self.surd * self.surd

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.rat + o.rat, self.surd + o.surd, self.p)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.rat, -self.surd, self.p)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.rat - o.rat, self.surd - o.surd, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.rat, self.surd, o.rat, o.surd
        return ExactScalar(a * c + 2 * self.p * b * d, a * d + b * c, self.p)

    __rmul__ = __mul__

    def inverse(self) -> ExactScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("ExactScalar division by zero")
        return ExactScalar(self.rat / n, -self.surd / n, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ExactScalar(1, 0, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.p == other.p and self.rat == other.rat and self.surd == other.surd
        if isinstance(other, (int, Rational)):
            return self.surd == 0 and self.rat == other
        return NotImplemented

    def __hash__(self):
        if self.surd == 0:
            return hash(self.rat)
        return hash((self.rat, self.surd, self.p))

    def __bool__(self):
        return bool(self.rat) or bool(self.surd)

    def __repr__(self):
        return f"ExactScalar({self.rat}, {self.surd}, p={self.p})"

    def __str__(self):
        if not self.surd:
            return str(self.rat)
        root = f"sqrt({2 * self.p})"
        if not self.rat:
            return f"{self.surd}*{root}"
        return f"{self.rat} + {self.surd}*{root}"


def as_fraction(x) -> Fraction:
    if isinstance(x, ExactScalar):
        return x.to_fraction()
    return Fraction(x)


def frac_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return f"{x.numerator}/1"
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def scalar_pair(x) -> list[str]:
    """JSON form ``["a_num/a_den", "b_num/b_den"]`` of a coefficient."""
    if isinstance(x, ExactScalar):
        return [frac_str(x.rat), frac_str(x.surd)]
    return [frac_str(x), "0/1"]
