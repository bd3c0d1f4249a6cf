"""Exact arithmetic in real quadratic fields Q(sqrt(D))."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import flint


@dataclass(frozen=True)
class QuadraticNumber:
    """``a + b*sqrt(D)`` with ``D`` squarefree; ``D == 1`` is reserved for rationals (``b == 0``)."""

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.D < 1:
            raise ValueError("only real quadratic fields are supported")
        if self.D == 1 and self.b != 0:
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))

    @classmethod
    def rational(cls, x, D: int = 1) -> QuadraticNumber:
        return cls(Fraction(x), Fraction(0), D)

    def in_field(self, D: int) -> QuadraticNumber:
        if self.b != 0 and D != self.D:
            raise ValueError(f"{self} does not lie in Q(sqrt({D}))")
        return QuadraticNumber(self.a, self.b, D)

    def _check(self, other: QuadraticNumber) -> int:
        if self.b == 0:
            return other.D
        if other.b == 0 or other.D == self.D:
            return self.D
        raise ValueError("operands lie in different quadratic fields")

    def __mul__(self, other: QuadraticNumber) -> QuadraticNumber:
        D = self._check(other)
        return QuadraticNumber(self.a * other.a + D * self.b * other.b,
                               self.a * other.b + self.b * other.a, D)

    def __add__(self, other: QuadraticNumber) -> QuadraticNumber:
        D = self._check(other)
        return QuadraticNumber(self.a + other.a, self.b + other.b, D)

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber(-self.a, -self.b, self.D)

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def inverse(self) -> QuadraticNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticNumber(self.a / n, -self.b / n, self.D)

    def __pow__(self, k: int) -> QuadraticNumber:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = QuadraticNumber.rational(1, self.D)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def arb(self, prec: int = 128):
        """Certified real enclosure (value under the embedding sqrt(D) > 0)."""
        with _precision(prec):
            a = flint.arb(flint.fmpq(self.a.numerator, self.a.denominator))
            if self.b == 0:
                return a
            b = flint.arb(flint.fmpq(self.b.numerator, self.b.denominator))
            return a + b * flint.arb(self.D).sqrt()

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.D**0.5

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.D})"


class _precision:
    def __init__(self, prec: int):
        self.prec = prec

    def __enter__(self):
        self.saved = flint.ctx.prec
        flint.ctx.prec = max(self.prec, self.saved)

    def __exit__(self, *exc):
        flint.ctx.prec = self.saved
        return False


working_precision = _precision
