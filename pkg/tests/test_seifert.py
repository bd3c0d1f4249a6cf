import json
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from knotcert.algebra import LaurentPolynomial, is_symmetric, normalize, parse_poly
from knotcert.errors import InvalidSeifertMatrix, SingularSeifertMatrix, ZeroTwist
from knotcert.seifert import (
    TREFOIL,
    UNKNOT,
    SeifertMatrix,
    alexander,
    arf,
    connected_sum,
    e_matrix,
    invariants_json,
    mirror,
    numeric_signature,
    reverse,
    rho_zero,
    signature_profile,
    symmetrized,
    t_star,
)

from .strategies import seifert_matrices

T = sympy.Symbol("t")


def sympy_alexander(v):
    m = sympy.Matrix(v.entries)
    d = sympy.Poly(sympy.expand((m - T * m.T).det()), T)
    coeffs = {i: Fraction(int(c)) for (i,), c in d.terms()}
    return normalize(LaurentPolynomial(coeffs))


def test_e_matrix():
    assert e_matrix(1).entries == ((1, 0), (-1, -1))
    assert e_matrix(3).entries == ((3, 0), (-1, -3))
    with pytest.raises(ZeroTwist):
        e_matrix(0)


def test_validation():
    with pytest.raises(InvalidSeifertMatrix):
        SeifertMatrix(((1, 0), (0, 1)))
    with pytest.raises(InvalidSeifertMatrix):
        SeifertMatrix(((1,),))


def test_alexander_examples():
    assert alexander(e_matrix(1)) == parse_poly("t^2-3*t+1")
    assert alexander(e_matrix(2)) == parse_poly("4*t^2-9*t+4")
    assert alexander(UNKNOT) == LaurentPolynomial.constant(1)
    assert alexander(TREFOIL) == parse_poly("t^2-t+1")
    assert alexander(connected_sum(e_matrix(1), e_matrix(1))) == parse_poly("(t^2-3*t+1)^2")


@given(seifert_matrices())
def test_alexander_against_sympy(v):
    d = alexander(v)
    assert d == sympy_alexander(v)
    assert abs(d(1)) == 1
    assert is_symmetric(d)
    assert alexander(reverse(v)) == d


@given(seifert_matrices(max_genus=1), seifert_matrices(max_genus=1))
def test_alexander_multiplicative(v, w):
    assert alexander(connected_sum(v, w)) == normalize(alexander(v) * alexander(w))


def test_connected_sum_with_unknot():
    assert connected_sum(TREFOIL, UNKNOT) == TREFOIL


def test_arf_examples():
    assert arf(TREFOIL) == 1
    assert arf(connected_sum(TREFOIL, TREFOIL)) == 0
    assert arf(UNKNOT) == 0


def test_symmetrized_chebyshev():
    # t^2 - 3t + 1 = t (x - 3) with x = t + 1/t
    assert symmetrized(parse_poly("t^2-3*t+1")) == parse_poly("t-3")
    assert symmetrized(parse_poly("t^4-t^3+t^2-t+1")) == parse_poly("t^2-t-1")


# -- signature ----------------------------------------------------------------------

def test_trefoil_profile():
    prof = signature_profile(TREFOIL)
    assert prof.arc_values == (0, -2)
    assert prof.classical_signature == -2
    assert len(prof.jumps) == 1 and prof.jumps[0].theta_exact == Fraction(1, 3)
    assert prof.value_at_jump(0) == -1


def test_e_matrix_profile():
    for m in (1, 2, -3, 7):
        prof = signature_profile(e_matrix(m))
        assert prof.arc_values == (0,) and not prof.jumps


def test_sum_and_mirror_signatures():
    assert signature_profile(connected_sum(TREFOIL, TREFOIL)).classical_signature == -4
    assert signature_profile(mirror(TREFOIL)).classical_signature == 2
    assert mirror(mirror(TREFOIL)) == TREFOIL


def test_unknot_profile():
    prof = signature_profile(UNKNOT)
    assert prof.arc_values == (0,) and not prof.jumps


@given(seifert_matrices())
def test_mirror_negates_profile(v):
    a, b = signature_profile(v), signature_profile(mirror(v))
    assert b.arc_values == tuple(-x for x in a.arc_values)
    assert [j.x.poly for j in a.jumps] == [j.x.poly for j in b.jumps]


@given(seifert_matrices())
def test_profile_against_numeric(v):
    prof = signature_profile(v)
    for k, value in enumerate(prof.arc_values):
        lo = prof.jumps[k - 1].theta_hi if k else Fraction(0)
        hi = prof.jumps[k].theta_lo if k < len(prof.jumps) else Fraction(1)
        for s in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            theta = float(lo + s * (hi - lo)) * math.pi
            if 1e-6 < theta < math.pi:
                assert numeric_signature(v, theta) == value


# -- rho_0 ----------------------------------------------------------------------------

def test_rho_zero_golden():
    assert rho_zero(UNKNOT).value == 0
    r = rho_zero(TREFOIL)
    assert r.value == Fraction(-4, 3)
    assert r.lo <= Fraction(-4, 3) <= r.hi
    assert rho_zero(connected_sum(TREFOIL, TREFOIL)).value == Fraction(-8, 3)
    assert rho_zero(mirror(TREFOIL)).value == Fraction(4, 3)
    for m in range(1, 6):
        assert rho_zero(e_matrix(m)).value == 0


def numeric_rho(v, samples=20000):
    h = math.pi / samples
    return sum(numeric_signature(v, (k + 0.5) * h) for k in range(samples)) / samples


@given(seifert_matrices(max_genus=1, bound=4))
def test_rho_zero_enclosure_matches_quadrature(v):
    r = rho_zero(v)
    assert r.width <= Fraction(1, 10**9)
    assert abs(float(r) - numeric_rho(v, 4000)) < 2e-3 * max(1, v.size)


@given(seifert_matrices(max_genus=1), seifert_matrices(max_genus=1))
def test_rho_zero_additive(v, w):
    assert rho_zero(connected_sum(v, w)).exact_equals(rho_zero(v) + rho_zero(w))


@given(seifert_matrices())
def test_rho_zero_slice_form(v):
    assert rho_zero(connected_sum(v, mirror(reverse(v)))).exact_equals(rho_zero(UNKNOT))
    assert rho_zero(mirror(v)).exact_equals(-rho_zero(v))


def test_irrational_jump_enclosure():
    # Δ = 2t^2 - 3t + 2 has unit-circle roots at θ = arccos(3/4)
    v = SeifertMatrix(((-2, -1), (-2, -2)))
    assert alexander(v) == parse_poly("2*t^2-3*t+2")
    r = rho_zero(v, Fraction(1, 10**30))
    assert not r.is_rational
    assert r.width <= Fraction(1, 10**30)
    expect = -2 + 2 * math.acos(0.75) / math.pi
    assert r.lo - Fraction(1, 10**12) <= Fraction(expect) <= r.hi + Fraction(1, 10**12)


# -- t_star ---------------------------------------------------------------------------

def test_t_star_examples():
    assert t_star(e_matrix(1)) == ((2, 1), (1, 1))
    assert t_star(e_matrix(2)) == ((Fraction(5, 4), Fraction(1, 2)), (Fraction(1, 2), 1))
    for m in range(1, 8):
        (a, b), (c, d) = t_star(e_matrix(m))
        assert a * d - b * c == 1
    with pytest.raises(SingularSeifertMatrix):
        t_star(SeifertMatrix(((0, 1), (0, 0))))


def test_invariants_json_is_json():
    out = invariants_json(TREFOIL)
    assert json.loads(json.dumps(out)) == out
    assert out["alexander"] == "t^2 - t + 1"
    assert out["rho_zero"]["exact"]["constant"] == "-4/3"
