"""Shared generators for property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from knotcert.algebra import LaurentPolynomial
from knotcert.seifert import SeifertMatrix

small_ints = st.integers(-9, 9)
nonzero_ints = small_ints.filter(bool)


@st.composite
def laurent_polys(draw, max_terms=5, min_exp=-4, max_exp=6, nonzero=True):
    exps = draw(st.lists(st.integers(min_exp, max_exp), min_size=1 if nonzero else 0,
                         max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.fractions(-9, 9, max_denominator=4).filter(bool),
                           min_size=len(exps), max_size=len(exps)))
    return LaurentPolynomial(dict(zip(exps, coeffs)))


@st.composite
def nonconstant_polys(draw):
    p = draw(laurent_polys(max_terms=4, min_exp=0, max_exp=4))
    if p.span == 0:
        p = p * LaurentPolynomial({1: 1, 0: draw(nonzero_ints)})
    return p


@st.composite
def linear_factor(draw):
    a, b = draw(nonzero_ints), draw(nonzero_ints)
    return LaurentPolynomial({1: a, 0: b})


@st.composite
def quadratic_factor(draw):
    a, c = draw(nonzero_ints), draw(nonzero_ints)
    return LaurentPolynomial({2: a, 1: draw(small_ints), 0: c})


@st.composite
def factor_products(draw):
    """Products of at most two linear and two quadratic integer factors."""
    fs = draw(st.lists(linear_factor(), max_size=2)) + draw(st.lists(quadratic_factor(), max_size=2))
    if not fs:
        fs = [draw(linear_factor())]
    out = LaurentPolynomial.constant(1)
    for f in fs:
        out = out * f
    return out


def seifert_from(genus: int, sym: list[int]) -> SeifertMatrix:
    """``S + J`` with ``S`` symmetric from ``sym`` and ``J`` the standard half-symplectic form."""
    n = 2 * genus
    m = [[0] * n for _ in range(n)]
    it = iter(sym)
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(it)
    for k in range(genus):
        m[2 * k][2 * k + 1] += 1
    return SeifertMatrix(tuple(tuple(r) for r in m))


@st.composite
def seifert_matrices(draw, max_genus=2, bound=3):
    g = draw(st.integers(1, max_genus))
    n = 2 * g
    sym = draw(st.lists(st.integers(-bound, bound), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
    return seifert_from(g, sym)


def frac(x) -> Fraction:
    return Fraction(x)
