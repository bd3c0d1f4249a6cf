"""Laurent polynomials in one variable ``t`` with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import lcm, gcd
from typing import Iterable, Mapping

import flint

from ..errors import ZeroPolynomial

Number = int | Fraction


class LaurentPolynomial:
    """Immutable element of Q[t, t^-1].

    Terms are kept as a sorted tuple of ``(exponent, coefficient)`` pairs with no
    zero coefficients; the zero polynomial has no terms.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | Iterable[tuple[int, Number]] = ()):
        acc: dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else (
            terms.items() if isinstance(terms, Mapping) else terms)
        for e, c in items:
            if type(e) is not int:
                if not isinstance(e, int):
                    raise TypeError(f"exponent must be int, got {e!r}")
                e = int(e)
            if type(c) is not Fraction:
                c = Fraction(c)
            acc[e] = acc[e] + c if e in acc else c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> LaurentPolynomial:
        return cls({0: c})

    @classmethod
    def monomial(cls, c: Number, e: int) -> LaurentPolynomial:
        return cls({e: c})

    @classmethod
    def t(cls) -> LaurentPolynomial:
        return cls({1: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number], shift: int = 0) -> LaurentPolynomial:
        """Build from coefficients listed from low to high degree."""
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    @classmethod
    def from_flint(cls, p) -> LaurentPolynomial:
        out = {}
        for i, c in enumerate(p.coeffs()):
            if hasattr(c, "q"):
                out[i] = Fraction(int(c.p), int(c.q))
            else:
                out[i] = Fraction(int(c))
        return cls(out)

    # -- accessors --------------------------------------------------------
    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coefficient(self, e: int) -> Fraction:
        for ee, c in self._terms:
            if ee == e:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def _nonzero(self) -> None:
        if not self._terms:
            raise ZeroPolynomial("operation undefined on the zero polynomial")

    @property
    def min_exp(self) -> int:
        self._nonzero()
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        self._nonzero()
        return self._terms[-1][0]

    @property
    def span(self) -> int:
        """Width ``max_exp - min_exp``; the degree of the normalized form."""
        return self.max_exp - self.min_exp

    @property
    def leading_coefficient(self) -> Fraction:
        self._nonzero()
        return self._terms[-1][1]

    @property
    def trailing_coefficient(self) -> Fraction:
        self._nonzero()
        return self._terms[0][1]

    def coeffs(self) -> list[Fraction]:
        """Dense coefficient list from ``t^min_exp`` upward."""
        if not self._terms:
            return []
        lo = self.min_exp
        out = [Fraction(0)] * (self.max_exp - lo + 1)
        for e, c in self._terms:
            out[e - lo] = c
        return out

    def integer_coeffs(self) -> list[int]:
        """Dense primitive integer coefficients (content removed, sign kept)."""
        cs = self.coeffs()
        den = lcm(*(c.denominator for c in cs))
        ints = [int(c * den) for c in cs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        return [x // g for x in ints]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> LaurentPolynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial((e, -c) for e, c in self._terms)

    def __sub__(self, other) -> LaurentPolynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPolynomial:
        return (-self) + other

    def __mul__(self, other) -> LaurentPolynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPolynomial:
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers exist only for monomials")
            (e, c), = self._terms
            return LaurentPolynomial({e * k: Fraction(1) / c ** (-k)})
        result = LaurentPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Number) -> LaurentPolynomial:
        return LaurentPolynomial((e, v * c) for e, v in self._terms)

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by ``t^k``."""
        return LaurentPolynomial((e + k, c) for e, c in self._terms)

    def substitute_power(self, n: int) -> LaurentPolynomial:
        """Return ``p(t^n)``."""
        if n == 0:
            raise ValueError("substitution t -> t^0 collapses the polynomial")
        return LaurentPolynomial((e * n, c) for e, c in self._terms)

    def reciprocal(self) -> LaurentPolynomial:
        """Return ``p(t^-1)``."""
        return self.substitute_power(-1)

    def derivative(self) -> LaurentPolynomial:
        return LaurentPolynomial((e - 1, c * e) for e, c in self._terms if e != 0)

    def __call__(self, x: Number) -> Fraction:
        x = Fraction(x)
        if x == 0 and self._terms and self.min_exp < 0:
            raise ZeroDivisionError("negative exponent evaluated at 0")
        return sum((c * x**e for e, c in self._terms), Fraction(0))

    def to_flint(self):
        """Dense ``fmpq_poly`` of ``t^-min_exp * p``."""
        return flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in self.coeffs()])

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            coeff = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            if e == 0:
                body = coeff
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if a == 1 else f"{coeff}*{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPolynomial.constant(x)
    return NotImplemented


def poly_divmod(a: LaurentPolynomial, b: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """Euclidean division of ordinary polynomials (all exponents >= 0)."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return a, a
    if a.min_exp < 0 or b.min_exp < 0:
        raise ValueError("poly_divmod expects ordinary polynomials")
    rem = dict(a.items())
    db, lb = b.max_exp, b.leading_coefficient
    quo: dict[int, Fraction] = {}
    while rem:
        da = max(rem)
        if da < db:
            break
        c = rem[da] / lb
        quo[da - db] = c
        for e, bc in b.items():
            k = e + da - db
            v = rem.get(k, 0) - c * bc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPolynomial(quo), LaurentPolynomial(rem)


def exact_quotient(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Quotient in Q[t, t^-1]; raises if ``b`` does not divide ``a``."""
    sa, sb = a.shift(-a.min_exp), b.shift(-b.min_exp)
    q, r = poly_divmod(sa, sb)
    if not r.is_zero():
        raise ArithmeticError(f"{b} does not divide {a}")
    return q.shift(a.min_exp - b.min_exp)
