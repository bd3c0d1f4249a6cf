"""Sturm-sequence real root isolation with rational intervals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import LaurentPolynomial, poly_divmod
from .poly import poly_gcd


def squarefree_part(p: LaurentPolynomial) -> LaurentPolynomial:
    """Monic squarefree part of an ordinary polynomial (a root at 0 is kept)."""
    f = p.scale(1 / p.leading_coefficient)
    if f.max_exp == 0:
        return f
    q, r = poly_divmod(f, poly_gcd(f, f.derivative()))
    assert r.is_zero()
    return q


def sturm_sequence(p: LaurentPolynomial) -> list[LaurentPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        _, r = poly_divmod(seq[-2], seq[-1])
        seq.append(-r)
    return seq[:-1]


def _variations(seq: list[LaurentPolynomial], x: Fraction) -> int:
    signs = [s for s in (q(x) for q in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def count_roots(seq: list[LaurentPolynomial], a: Fraction, b: Fraction) -> int:
    """Distinct real roots of ``seq[0]`` in the half-open interval ``(a, b]``."""
    return _variations(seq, a) - _variations(seq, b)


@dataclass(frozen=True)
class AlgebraicReal:
    """The unique root of squarefree ``poly`` in ``(lo, hi]``, or exactly ``lo`` if ``lo == hi``."""

    poly: LaurentPolynomial
    lo: Fraction
    hi: Fraction

    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self, width: Fraction) -> AlgebraicReal:
        if self.is_exact() or self.width <= width:
            return self
        seq = sturm_sequence(self.poly)
        lo, hi = self.lo, self.hi
        while hi - lo > width:
            mid = (lo + hi) / 2
            if self.poly(mid) == 0:
                return AlgebraicReal(self.poly, mid, mid)
            if count_roots(seq, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        return AlgebraicReal(self.poly, lo, hi)

    def contains(self, x: Fraction) -> bool:
        return x == self.lo if self.is_exact() else self.lo < x <= self.hi

    def same_number(self, other: AlgebraicReal) -> bool:
        """Exact equality test via a common factor with a root in both intervals."""
        if self.is_exact() and other.is_exact():
            return self.lo == other.lo
        if self.is_exact():
            return other.contains(self.lo) and other.poly(self.lo) == 0
        if other.is_exact():
            return self.contains(other.lo) and self.poly(other.lo) == 0
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo >= hi:
            return False
        g = poly_gcd(self.poly, other.poly)
        if g.max_exp == 0:
            return False
        return count_roots(sturm_sequence(g), lo, hi) == 1

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def isolate_real_roots(p: LaurentPolynomial, a: Fraction, b: Fraction) -> list[AlgebraicReal]:
    """Isolating intervals for the distinct roots of ``p`` in the open interval ``(a, b)``, ascending."""
    f = squarefree_part(p)
    if f.max_exp == 0:
        return []
    seq = sturm_sequence(f)
    a, b = Fraction(a), Fraction(b)
    out: list[AlgebraicReal] = []

    def rec(lo: Fraction, hi: Fraction, n: int):
        if n == 0:
            return
        if n == 1:
            if f(hi) == 0:
                out.append(AlgebraicReal(f, hi, hi))
            else:
                out.append(AlgebraicReal(f, lo, hi))
            return
        mid = (lo + hi) / 2
        left = count_roots(seq, lo, mid)
        rec(lo, mid, left)
        rec(mid, hi, n - left)

    total = count_roots(seq, a, b)
    if f(b) == 0:
        total -= 1
        # the root at b is excluded; isolate on (a, b') with b' below it
        gap = b - a
        bb = b - gap / 2
        while count_roots(seq, bb, b) > 1:
            bb = (bb + b) / 2
        rec(a, bb, count_roots(seq, a, bb))
        return out
    rec(a, b, total)
    return out
