"""Unit normalization, gcds and small number-theoretic helpers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

import flint
from sympy import factorint

from ..errors import ZeroPolynomial
from .laurent import LaurentPolynomial, exact_quotient, poly_divmod


def normalize(p: LaurentPolynomial) -> LaurentPolynomial:
    """Representative of ``p`` up to units ``±t^k``.

    The result has minimum exponent 0 (so a nonzero constant term) and a
    positive leading coefficient.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    q = p.shift(-p.min_exp)
    return -q if q.leading_coefficient < 0 else q


def monic(p: LaurentPolynomial) -> LaurentPolynomial:
    q = normalize(p)
    return q.scale(1 / q.leading_coefficient)


def units_equal(p: LaurentPolynomial, q: LaurentPolynomial) -> bool:
    """``p ≐ q``: equal up to multiplication by ``±t^k``."""
    return normalize(p) == normalize(q)


def lp_gcd(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    """Monic normalized gcd in Q[t, t^-1]; the constant 1 means coprime."""
    if p.is_zero() and q.is_zero():
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    if p.is_zero():
        return monic(q)
    if q.is_zero():
        return monic(p)
    g = normalize(p).to_flint().gcd(normalize(q).to_flint())
    return monic(LaurentPolynomial.from_flint(g))


def poly_gcd(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    """Monic gcd of ordinary polynomials in Q[x] (powers of x are not units here)."""
    if p.is_zero() and q.is_zero():
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    for f in (p, q):
        if not f.is_zero() and f.min_exp < 0:
            raise ValueError("poly_gcd expects ordinary polynomials")
    a = _dense_flint(p).gcd(_dense_flint(q))
    g = LaurentPolynomial.from_flint(a)
    return g.scale(1 / g.leading_coefficient)


def _dense_flint(p: LaurentPolynomial):
    if p.is_zero():
        return flint.fmpq_poly([])
    cs = [Fraction(0)] * p.min_exp + p.coeffs()
    return flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in cs])


def is_symmetric(p: LaurentPolynomial) -> bool:
    """True iff ``p(t) ≐ p(t^-1)``."""
    return normalize(p) == normalize(p.reciprocal())


def is_perfect_square(n: int) -> bool:
    if n < 0:
        raise ValueError("is_perfect_square expects n >= 0")
    r = isqrt(n)
    return r * r == n


def squarefree_decomposition(p: LaurentPolynomial) -> list[tuple[LaurentPolynomial, int]]:
    """Yun's algorithm on ``normalize(p)``.

    Returns ``[(f_i, i), ...]`` with each ``f_i`` monic, squarefree, pairwise
    coprime and nonconstant, such that ``normalize(p) ≐ prod f_i^i``.
    """
    f = monic(p)
    if f.is_constant():
        return []
    out = []
    df = f.derivative()
    a = lp_gcd(f, df)
    b = exact_quotient(f, a)
    c = exact_quotient(df, a) - b.derivative()
    i = 1
    while not b.is_constant():
        d = lp_gcd(b, c) if not c.is_zero() else monic(b)
        if not d.is_constant():
            out.append((d, i))
        b = exact_quotient(b, d)
        c = exact_quotient(c, d) - b.derivative() if not c.is_zero() else c
        i += 1
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> LaurentPolynomial:
    """The n-th cyclotomic polynomial, by dividing ``t^n - 1`` by its proper factors."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = LaurentPolynomial({n: 1, 0: -1})
    for d in range(1, n):
        if n % d == 0:
            num, r = poly_divmod(num, cyclotomic(d))
            assert r.is_zero()
    return num


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    out = n
    for p in factor_integer(n):
        out -= out // p
    return out


def totient_bounded(d: int) -> list[int]:
    """All ``n >= 1`` with ``φ(n) <= d``.

    Uses ``φ(n) >= sqrt(n/2)``, so ``n <= 2 d^2`` suffices.
    """
    return [n for n in range(1, 2 * d * d + 3) if totient(n) <= d]


def factor_integer(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` (empty for 0 and ±1)."""
    n = abs(n)
    if n <= 1:
        return {}
    return {int(p): int(e) for p, e in factorint(n).items()}


def squarefree_kernel(n: int) -> tuple[int, int]:
    """Write ``n > 0`` as ``s^2 * D`` with ``D`` squarefree; returns ``(s, D)``."""
    if n <= 0:
        raise ValueError("squarefree_kernel expects n > 0")
    s, d = 1, 1
    for p, e in factor_integer(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


def rational_valuation(x: Fraction, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def substitute_power_flint(p: LaurentPolynomial, n: int):
    """``fmpz_poly`` proportional (up to units) to ``normalize(p)(t^n)``, any ``n != 0``."""
    return spread_coeffs(normalize(p).integer_coeffs(), n)


def spread_coeffs(coeffs: list[int], n: int):
    """``fmpz_poly`` of ``f(t^n)`` (reversed for ``n < 0``) from low-to-high integer coefficients."""
    if n < 0:
        coeffs = coeffs[::-1]
        n = -n
    out = [0] * (n * (len(coeffs) - 1) + 1)
    out[::n] = coeffs
    return flint.fmpz_poly(out)
