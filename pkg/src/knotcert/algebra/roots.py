"""Classification of the nonzero complex roots of a Laurent polynomial.

Supported root classes are rational numbers, roots of unity and real
quadratic irrationals.  Everything else is reported as :class:`Unsupported`
rather than guessed at.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import flint

from ..errors import ConstantPolynomial
from .laurent import LaurentPolynomial
from .poly import normalize, squarefree_kernel
from .quadratic import QuadraticNumber


class RootDescriptor:
    """Common base of the four root kinds; every kind carries ``multiplicity``."""

    multiplicity: int

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class RationalRoot(RootDescriptor):
    value: Fraction
    multiplicity: int = 1

    def __post_init__(self):
        if self.value == 0:
            raise ValueError("zero roots are stripped by normalization")

    def as_quadratic(self) -> QuadraticNumber:
        return QuadraticNumber.rational(self.value)

    def to_json(self) -> dict:
        return {"kind": "RationalRoot", "value": str(self.value), "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class RootOfUnity(RootDescriptor):
    order: int
    multiplicity: int = 1

    def to_json(self) -> dict:
        return {"kind": "RootOfUnity", "order": self.order, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class QuadraticRoot(RootDescriptor):
    """The real number ``a + b*sqrt(D)``."""

    a: Fraction
    b: Fraction
    D: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.b == 0 or self.D <= 1:
            raise ValueError("QuadraticRoot needs b != 0 and squarefree D > 1")

    def as_quadratic(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, self.b, self.D)

    def minimal_polynomial(self) -> LaurentPolynomial:
        return LaurentPolynomial({2: 1, 1: -2 * self.a, 0: self.a**2 - self.b**2 * self.D})

    def to_json(self) -> dict:
        return {"kind": "QuadraticRoot", "a": str(self.a), "b": str(self.b), "D": self.D,
                "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class Unsupported(RootDescriptor):
    """Roots of an irreducible-looking factor outside the supported classes."""

    degree: int
    factor: LaurentPolynomial
    multiplicity: int = 1

    def to_json(self) -> dict:
        return {"kind": "Unsupported", "degree": self.degree, "factor": str(self.factor),
                "multiplicity": self.multiplicity}


def _classify_quadratic(g: LaurentPolynomial, mult: int) -> list[RootDescriptor]:
    c2, c1, c0 = (g.coefficient(2), g.coefficient(1), g.coefficient(0))
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return [Unsupported(2, normalize(g), mult)]
    # disc = num/den; sqrt(disc) = sqrt(num*den)/den
    s, D = squarefree_kernel(disc.numerator * disc.denominator)
    root_scale = Fraction(s, disc.denominator)
    a = -c1 / (2 * c2)
    b = root_scale / (2 * c2)
    if D == 1:  # rational roots; only reachable when called on reducible input
        return [RationalRoot(a + b, mult), RationalRoot(a - b, mult)]
    return [QuadraticRoot(a, b, D, mult), QuadraticRoot(a, -b, D, mult)]


def classify_roots(p: LaurentPolynomial) -> list[RootDescriptor]:
    """Every nonzero complex root of ``normalize(p)``, classified.

    Each root appears once with its multiplicity; roots of unity of order n
    appear as φ(n) separate descriptors, one per primitive root.  The
    irreducible factors over Z come from FLINT; linear factors give rational
    roots, cyclotomic factors roots of unity, real quadratics ``a + b√D``.
    """
    q = normalize(p)
    if q.is_constant():
        raise ConstantPolynomial(f"{p} has no roots")
    out: list[RootDescriptor] = []
    _, factors = flint.fmpz_poly(q.integer_coeffs()).factor()
    for f, mult in sorted(factors, key=lambda fm: (fm[0].degree(), [int(c) for c in fm[0].coeffs()])):
        deg = f.degree()
        order = f.is_cyclotomic()
        if order:
            out.extend(RootOfUnity(order, mult) for _ in range(deg))
        elif deg == 1:
            c0, c1 = (int(c) for c in f.coeffs())
            out.append(RationalRoot(Fraction(-c0, c1), mult))
        elif deg == 2:
            out.extend(_classify_quadratic(LaurentPolynomial.from_flint(f), mult))
        else:
            out.append(Unsupported(deg, LaurentPolynomial.from_flint(f), mult))
    return out


def root_count(descriptors: list[RootDescriptor]) -> int:
    """Roots counted with multiplicity; Unsupported entries count their degree."""
    total = 0
    for d in descriptors:
        total += d.multiplicity * (d.degree if isinstance(d, Unsupported) else 1)
    return total
