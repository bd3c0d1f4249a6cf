"""Seifert-matrix invariants: Alexander polynomial, Arf, Levine-Tristram
signature profile and its circle average rho_0.

Sign convention: the right-handed trefoil ``[[-1, 1], [0, -1]]`` has
classical signature -2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import math
from math import floor, gcd, isqrt

import flint
import numpy as np

from .algebra import (
    AlgebraicReal,
    LaurentPolynomial,
    as_matrix,
    block_diag,
    cyclotomic,
    det,
    inertia,
    inverse,
    isolate_real_roots,
    mat_mul,
    normalize,
    transpose,
)
from .algebra.poly import poly_gcd, totient_bounded
from .algebra.quadratic import working_precision
from .algebra.realroots import count_roots, sturm_sequence
from .errors import InvalidSeifertMatrix, MalformedInput, SingularSeifertMatrix, ZeroTwist

DEFAULT_TOL = Fraction(1, 10**9)


@dataclass(frozen=True)
class SeifertMatrix:
    """Square integer matrix ``V`` of even size with ``det(V - V^T) = 1``.

    The empty (size 0) matrix is the unknot.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = as_matrix(self.entries)
        object.__setattr__(self, "entries", m)
        n = len(m)
        if any(len(r) != n for r in m):
            raise InvalidSeifertMatrix("Seifert matrix must be square")
        if n % 2:
            raise InvalidSeifertMatrix(f"Seifert matrix must have even size, got {n}")
        if any(not isinstance(x, int) or isinstance(x, bool) for r in m for x in r):
            raise InvalidSeifertMatrix("Seifert matrix entries must be integers")
        d = det(tuple(tuple(m[i][j] - m[j][i] for j in range(n)) for i in range(n)))
        if d != 1:
            raise InvalidSeifertMatrix(f"det(V - V^T) = {d}, expected 1")

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def to_json(self) -> dict:
        return {"size": self.size, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> SeifertMatrix:
        try:
            entries = obj["entries"]
            size = obj.get("size", len(entries))
        except (KeyError, TypeError, AttributeError) as exc:
            raise MalformedInput(f"Seifert matrix JSON needs 'entries': {exc}") from None
        if size != len(entries):
            raise MalformedInput(f"'size' is {size} but 'entries' has {len(entries)} rows")
        return cls(tuple(tuple(r) for r in entries))

    def __str__(self) -> str:
        return str([list(r) for r in self.entries])


UNKNOT = SeifertMatrix(())
TREFOIL = SeifertMatrix(((-1, 1), (0, -1)))


def e_matrix(m: int) -> SeifertMatrix:
    """Seifert matrix ``[[m, 0], [-1, -m]]`` of the twisted knot E^m."""
    if m == 0:
        raise ZeroTwist("E^m requires m != 0")
    return SeifertMatrix(((m, 0), (-1, -m)))


def connected_sum(v1: SeifertMatrix, v2: SeifertMatrix) -> SeifertMatrix:
    return SeifertMatrix(block_diag(v1.entries, v2.entries))


def mirror(v: SeifertMatrix) -> SeifertMatrix:
    return SeifertMatrix(tuple(tuple(-x for x in r) for r in transpose(v.entries)))


def reverse(v: SeifertMatrix) -> SeifertMatrix:
    return SeifertMatrix(transpose(v.entries))


@lru_cache(maxsize=4096)
def alexander(v: SeifertMatrix) -> LaurentPolynomial:
    """``normalize(det(V - t V^T))``, by exact evaluation and interpolation."""
    n = v.size
    if n == 0:
        return LaurentPolynomial.constant(1)
    m, mt = v.entries, transpose(v.entries)
    xs = list(range(n + 1))
    ys = [det(tuple(tuple(m[i][j] - x * mt[i][j] for j in range(n)) for i in range(n))) for x in xs]
    return normalize(_interpolate(xs, ys))


def _interpolate(xs: list[int], ys: list[int]) -> LaurentPolynomial:
    result = LaurentPolynomial()
    t = LaurentPolynomial.t()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        term = LaurentPolynomial.constant(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term = term * (t - xj).scale(Fraction(1, xi - xj))
        result = result + term
    return result


def arf(v: SeifertMatrix) -> int:
    """Arf invariant by the determinant criterion: 0 iff |Δ(-1)| ≡ ±1 (mod 8)."""
    d = abs(alexander(v)(-1))
    return 0 if d % 8 in (1, 7) else 1


def t_star(v: SeifertMatrix):
    """``(V^-1)^T V``, the action of t on the Alexander module in the band basis."""
    if det(v.entries) == 0:
        raise SingularSeifertMatrix("t_star needs det(V) != 0")
    return mat_mul(transpose(inverse(v.entries)), v.entries)


# -- x = t + 1/t reduction --------------------------------------------------

def symmetrized(delta: LaurentPolynomial) -> LaurentPolynomial:
    """The polynomial ``P`` in ``x`` with ``t^-g Δ(t) = P(t + 1/t)``.

    Returned in the variable ``t`` of :class:`LaurentPolynomial`, read as ``x``.
    """
    d = normalize(delta)
    if d.span % 2:
        raise ValueError(f"{delta} is not symmetric")
    g = d.span // 2
    centered = d.shift(-g)
    if centered.reciprocal() != centered:
        raise ValueError(f"{delta} is not symmetric")
    x = LaurentPolynomial.t()
    cheb = [LaurentPolynomial.constant(2), x]  # t^j + t^-j as polynomials in x
    while len(cheb) <= g:
        cheb.append(x * cheb[-1] - cheb[-2])
    out = LaurentPolynomial.constant(centered.coefficient(0))
    for j in range(1, g + 1):
        out = out + cheb[j].scale(centered.coefficient(j))
    return out


@lru_cache(maxsize=None)
def _cyclotomic_x(n: int) -> LaurentPolynomial:
    return symmetrized(cyclotomic(n))


# -- signature profile --------------------------------------------------------

@dataclass(frozen=True)
class Jump:
    """A jump of the signature function at ``θ ∈ (0, π)`` with ``x = 2 cos θ``."""

    x: AlgebraicReal
    theta_lo: Fraction  # certified enclosure of θ/π
    theta_hi: Fraction
    theta_exact: Fraction | None = None  # θ/π when e^{iθ} is a root of unity

    def to_json(self) -> dict:
        out = {
            "x_poly": str(self.x.poly),
            "x_interval": [str(self.x.lo), str(self.x.hi)],
            "theta_over_pi": [_dec(self.theta_lo, floor=True), _dec(self.theta_hi, floor=False)],
        }
        if self.theta_exact is not None:
            out["theta_over_pi_exact"] = str(self.theta_exact)
        return out


@dataclass(frozen=True)
class SignatureProfile:
    """Step function ``θ ↦ σ_{e^{iθ}}`` on ``(0, π]``; symmetric under ``θ ↦ -θ``."""

    jumps: tuple[Jump, ...]
    arc_values: tuple[int, ...]
    classical_signature: int
    genus: int
    sample_points: tuple[Fraction, ...] = field(default=(), compare=False)

    def value_at_jump(self, j: int) -> Fraction:
        return Fraction(self.arc_values[j] + self.arc_values[j + 1], 2)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.arc_values)

    def value(self, theta_over_pi: float) -> float:
        """Value at a numeric angle; jump points get the average convention."""
        t = abs(theta_over_pi) % 2
        if t > 1:
            t = 2 - t
        if t == 0:
            return 0.0
        for j, jump in enumerate(self.jumps):
            if jump.theta_exact is not None and t == jump.theta_exact:
                return float(self.value_at_jump(j))
            if t < float(jump.theta_lo):
                return float(self.arc_values[j])
            if t <= float(jump.theta_hi):
                return float(self._side_of_jump(j, 2 * math.cos(math.pi * t)))
        return float(self.arc_values[-1])

    def _side_of_jump(self, j: int, x: float) -> Fraction:
        # θ below the jump means x = 2cos θ above the root; refine until x is outside
        root = self.jumps[j].x
        target = Fraction(1, 2**60)
        while True:
            if x > root.hi:
                return Fraction(self.arc_values[j])
            if x < root.lo:
                return Fraction(self.arc_values[j + 1])
            if root.is_exact() or root.width <= target:
                return self.value_at_jump(j)
            root = root.refine(root.width / 1024)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "jumps": [j.to_json() for j in self.jumps],
            "arc_values": list(self.arc_values),
            "jump_values": [str(self.value_at_jump(j)) for j in range(len(self.jumps))],
            "classical_signature": self.classical_signature,
        }


def _acos_over_pi(x: Fraction, prec: int):
    with working_precision(prec):
        return (flint.arb(flint.fmpq(x.numerator, x.denominator)) / 2).acos() / flint.arb.pi()


def _arb_to_fraction(a) -> Fraction:
    man, exp = a.man_exp()
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def _theta_enclosure(x: AlgebraicReal, prec: int = 128) -> tuple[Fraction, Fraction]:
    """θ/π = arccos(x/2)/π is decreasing in x, so (lo, hi] maps to [f(hi), f(lo))."""
    with working_precision(prec):
        lo = _arb_to_fraction(_acos_over_pi(x.hi, prec).lower())
        hi = _arb_to_fraction(_acos_over_pi(x.lo, prec).upper())
    return lo, hi


def _root_of_unity_angle(x: AlgebraicReal, p: LaurentPolynomial) -> Fraction | None:
    """θ/π if ``e^{iθ}`` is a root of unity, found via cyclotomic factors of ``Δ``."""
    deg = 2 * max(p.max_exp, 1)
    for n in totient_bounded(deg):
        if n < 3:
            continue
        psi = _cyclotomic_x(n)
        if poly_gcd(p, psi).max_exp == 0:
            continue
        roots = isolate_real_roots(psi, Fraction(-2), Fraction(2))
        if not any(r.same_number(x) for r in roots):
            continue
        # x = 2cos(2πk/n) for the unique k in (0, n/2) coprime to n that lands in x's interval
        fine = x.refine(Fraction(1, 10**6))
        for k in range(1, (n + 1) // 2):
            if gcd(k, n) != 1:
                continue
            with working_precision(128):
                val = 2 * (flint.arb(2 * k) * flint.arb.pi() / n).cos()
            lo, hi = _arb_to_fraction(val.lower()), _arb_to_fraction(val.upper())
            if fine.is_exact():
                if lo <= fine.lo <= hi:
                    return Fraction(2 * k, n)
            elif fine.lo < lo and hi <= fine.hi:
                return Fraction(2 * k, n)
        raise AssertionError("root of unity angle not located")  # pragma: no cover
    return None


def _sqrt_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 2^-bits`` (roughly)."""
    scale = 1 << bits
    r = isqrt(q.numerator * scale * scale // q.denominator)
    return Fraction(r, scale), Fraction(r + 1, scale)


def _circle_parameter(x_lo: Fraction, x_hi: Fraction) -> Fraction:
    """A rational ``u > 0`` with ``x(u) = 2(1 - u^2)/(1 + u^2)`` strictly inside ``(x_lo, x_hi)``.

    The point ``ω = (1 - u^2 + 2iu)/(1 + u^2)`` is then a rational point of the
    unit circle whose angle lies on the requested arc.
    """
    assert -2 <= x_lo < x_hi <= 2
    bits = 8
    while True:
        # u(x) = sqrt((2 - x)/(2 + x)) is decreasing in x
        u_small = _sqrt_bounds((2 - x_hi) / (2 + x_hi), bits)[1] if x_hi < 2 else Fraction(0)
        u_big = _sqrt_bounds((2 - x_lo) / (2 + x_lo), bits)[0] if x_lo > -2 else Fraction(1 << bits)
        if u_small < u_big:
            u = _simplest_between(u_small, u_big)
            x = 2 * (1 - u * u) / (1 + u * u)
            if u > 0 and x_lo < x < x_hi:
                return u
        bits *= 2


def _simplest_between(a: Fraction, b: Fraction) -> Fraction:
    """A small-denominator fraction strictly between ``0 <= a < b`` (continued-fraction descent)."""
    fl = floor(a)
    if fl + 1 < b:
        return Fraction(fl + 1)
    lo, hi = a - fl, b - fl
    if lo == 0:
        return fl + Fraction(1, floor(1 / hi) + 1)
    return fl + 1 / _simplest_between(1 / hi, 1 / lo)


def _arc_signature(v: SeifertMatrix, u: Fraction) -> int:
    """Signature of ``(1-ω)V + (1-ω̄)V^T`` at ``ω = ((1-u^2) + 2iu)/(1+u^2)``.

    After scaling by ``(1+u^2)/(2u) > 0`` the Hermitian matrix is ``uS - iA`` with
    ``S = V + V^T`` and ``A = V - V^T``; its real form ``[[uS, A], [-A, uS]]``
    has twice its signature.
    """
    n = v.size
    m = v.entries
    p, q = u.numerator, u.denominator
    s = [[m[i][j] + m[j][i] for j in range(n)] for i in range(n)]
    a = [[m[i][j] - m[j][i] for j in range(n)] for i in range(n)]
    big = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            big[i][j] = big[n + i][n + j] = p * s[i][j]
            big[i][n + j] = q * a[i][j]
            big[n + i][j] = -q * a[i][j]
    inn = inertia(as_matrix(big))
    if inn.zero:
        raise AssertionError("sample point hit a root of the Alexander polynomial")
    assert inn.signature % 2 == 0
    return inn.signature // 2


@lru_cache(maxsize=4096)
def signature_profile(v: SeifertMatrix) -> SignatureProfile:
    """Levine-Tristram signature function of ``V`` on the upper half circle."""
    if v.size == 0:
        return SignatureProfile((), (0,), 0, 0)
    poly_x = symmetrized(alexander(v))
    roots = isolate_real_roots(poly_x, Fraction(-2), Fraction(2))
    roots = _separate(roots)
    roots.sort(key=lambda r: r.lo, reverse=True)  # ascending θ
    jumps = []
    for r in roots:
        exact = _root_of_unity_angle(r, poly_x)
        if exact is not None:
            jumps.append(Jump(r, exact, exact, exact))
        else:
            lo, hi = _theta_enclosure(r)
            jumps.append(Jump(r, lo, hi, None))
    # arc k lies between jump k-1 and jump k in θ, i.e. between their x-intervals
    arc_values, samples = [], []
    for k in range(len(roots) + 1):
        x_hi = Fraction(2) if k == 0 else roots[k - 1].lo
        x_lo = Fraction(-2) if k == len(roots) else roots[k].hi
        u = _circle_parameter(x_lo, x_hi)
        samples.append(u)
        arc_values.append(_arc_signature(v, u))
    classical = inertia(tuple(tuple(v.entries[i][j] + v.entries[j][i] for j in range(v.size))
                              for i in range(v.size))).signature
    return SignatureProfile(tuple(jumps), tuple(arc_values), classical, v.genus, tuple(samples))


def _separate(roots: list[AlgebraicReal]) -> list[AlgebraicReal]:
    """Refine isolating intervals until closures are pairwise disjoint and inside (-2, 2)."""
    roots = sorted(roots, key=lambda r: r.lo)
    for i, r in enumerate(roots):
        while not r.is_exact() and (r.hi >= 2 or r.lo <= -2):
            r = r.refine(r.width / 4)
        roots[i] = r
    changed = True
    while changed:
        changed = False
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            if a.hi >= b.lo and not (a.is_exact() and b.is_exact()):
                roots[i] = a.refine(a.width / 4) if not a.is_exact() else a
                roots[i + 1] = b.refine(b.width / 4) if not b.is_exact() else b
                changed = True
    return roots


# -- rho_0 ------------------------------------------------------------------------

@dataclass(frozen=True)
class RhoZero:
    """``ρ_0 = constant + Σ coeff · arccos(x/2)/π`` with a certified numeric enclosure."""

    constant: Fraction
    terms: tuple[tuple[int, AlgebraicReal], ...]
    lo: Fraction
    hi: Fraction

    @property
    def is_rational(self) -> bool:
        return not self.terms

    @property
    def value(self) -> Fraction:
        if self.terms:
            raise ValueError("ρ_0 has transcendental terms; use the enclosure")
        return self.constant

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __neg__(self) -> RhoZero:
        return RhoZero(-self.constant, tuple((-c, x) for c, x in self.terms), -self.hi, -self.lo)

    def __add__(self, other: RhoZero) -> RhoZero:
        terms = list(self.terms)
        for c, x in other.terms:
            terms = _merge_term(terms, c, x)
        return RhoZero(self.constant + other.constant, tuple(terms), self.lo + other.lo, self.hi + other.hi)

    def exact_equals(self, other: RhoZero) -> bool:
        diff = self + (-other)
        return diff.constant == 0 and not diff.terms

    def abs_lower(self) -> Fraction:
        if self.is_rational:
            return abs(self.constant)
        if self.lo > 0:
            return self.lo
        if self.hi < 0:
            return -self.hi
        return Fraction(0)

    def to_json(self) -> dict:
        return {
            "exact": {
                "constant": str(self.constant),
                "terms": [{"coeff": c, "arccos_half_x_over_pi": {"x_poly": str(x.poly),
                                                                "x_interval": [str(x.lo), str(x.hi)]}}
                          for c, x in self.terms],
            },
            "numeric": [_dec(self.lo, floor=True), _dec(self.hi, floor=False)],
        }


def _merge_term(terms: list, c: int, x: AlgebraicReal) -> list:
    for i, (cc, xx) in enumerate(terms):
        if xx.same_number(x):
            new = cc + c
            # keep the tighter enclosure of the shared number
            keep = xx if xx.width <= x.width else x
            return terms[:i] + ([(new, keep)] if new else []) + terms[i + 1:]
    return terms + [(c, x)]


def _dec(q: Fraction, floor: bool, digits: int = 15) -> str:
    """Fixed-width decimal rounded outward (floor for lower, ceiling for upper bounds)."""
    scaled = q * 10**digits
    n = scaled.numerator // scaled.denominator
    if not floor and n * scaled.denominator != scaled.numerator:
        n += 1
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 10**digits}.{n % 10**digits:0{digits}d}"


def rho_from_profile(profile: SignatureProfile, tol: Fraction = DEFAULT_TOL) -> RhoZero:
    """Circle average of the profile, using conjugation symmetry (average over (0, π])."""
    arcs = profile.arc_values
    constant = Fraction(arcs[-1])
    terms: list = []
    for j, jump in enumerate(profile.jumps):
        c = arcs[j] - arcs[j + 1]
        if c == 0:
            continue
        if jump.theta_exact is not None:
            constant += c * jump.theta_exact
        else:
            terms = _merge_term(terms, c, jump.x)
    return _enclose(constant, terms, Fraction(tol))


def _enclose(constant: Fraction, terms: list, tol: Fraction) -> RhoZero:
    if not terms:
        return RhoZero(constant, (), constant, constant)
    total = sum(abs(c) for c, _ in terms)
    xs = [x for _, x in terms]
    target = tol / (4 * total)
    prec = 128
    while True:
        lo = hi = constant
        for c, x in zip((c for c, _ in terms), xs):
            a, b = _theta_enclosure(x, prec)
            if c > 0:
                lo, hi = lo + c * a, hi + c * b
            else:
                lo, hi = lo + c * b, hi + c * a
        if hi - lo <= tol:
            return RhoZero(constant, tuple((c, x) for (c, _), x in zip(terms, xs)), lo, hi)
        # dθ/dx <= 1/(π sqrt(4 - x^2)); shrinking x-intervals geometrically converges
        xs = [x.refine(x.width / 16 if x.width > target else x.width) for x in xs]
        prec = min(prec * 2, 4096) if all(x.width <= target for x in xs) else prec


@lru_cache(maxsize=4096)
def rho_zero(v: SeifertMatrix, tol: Fraction = DEFAULT_TOL) -> RhoZero:
    return rho_from_profile(signature_profile(v), tol)


def numeric_signature(v: SeifertMatrix, theta: float) -> int:
    """Floating-point cross-check: eigenvalue signs of ``(1-ω)V + (1-ω̄)V^T``."""
    if v.size == 0:
        return 0
    m = np.array(v.entries, dtype=float)
    w = np.exp(1j * theta)
    h = (1 - w) * m + (1 - np.conj(w)) * m.T
    ev = np.linalg.eigvalsh(h)
    return int(np.sum(ev > 1e-9) - np.sum(ev < -1e-9))


def invariants_json(v: SeifertMatrix, tol: Fraction = DEFAULT_TOL) -> dict:
    prof = signature_profile(v)
    return {
        "seifert": v.to_json(),
        "alexander": str(alexander(v)),
        "arf": arf(v),
        "signature_profile": prof.to_json(),
        "rho_zero": rho_zero(v, tol).to_json(),
    }
