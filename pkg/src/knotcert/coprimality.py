"""Plain and strong coprimality of Laurent polynomials.

Two polynomials ``p, q`` are strongly coprime when ``p(t^n)`` and ``q(t^k)`` are
coprime for every pair of nonzero integers ``n, k``.  Equivalently, no nonzero
roots ``r`` of ``p`` and ``s`` of ``q`` satisfy ``r^k = s^n`` with ``gcd(k, n) = 1``.
The engine decides the root relation exactly for rational roots, roots of
unity and real quadratic irrationals; anything else is reported as
``Undecidable`` instead of guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd

import flint

from .algebra import (
    LaurentPolynomial,
    QuadraticNumber,
    QuadraticRoot,
    RationalRoot,
    RootDescriptor,
    RootOfUnity,
    Unsupported,
    classify_roots,
    lp_gcd,
    normalize,
)
from .algebra.poly import factor_integer, rational_valuation, spread_coeffs
from .algebra.quadratic import working_precision
from .errors import LengthMismatch, ZeroPolynomial


class Relation(str, Enum):
    COPRIME = "Coprime"
    NOT_COPRIME = "NotCoprime"
    STRONGLY_COPRIME = "StronglyCoprime"
    NOT_STRONGLY_COPRIME = "NotStronglyCoprime"
    UNDECIDABLE = "Undecidable"


class _Undecidable:
    """Third truth value of :func:`multiplicatively_dependent`."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        raise TypeError("Undecidable has no truth value; compare with `is UNDECIDABLE`")

    def __repr__(self) -> str:
        return "UNDECIDABLE"


UNDECIDABLE = _Undecidable()


# -- witnesses -------------------------------------------------------------------

@dataclass(frozen=True)
class CommonFactor:
    factor: LaurentPolynomial

    def to_json(self) -> dict:
        return {"common_factor": str(self.factor)}


@dataclass(frozen=True)
class DependenceWitness:
    """``root_p^k = root_q^n``; coprime exponents except for two roots of unity,
    where ``(k, n)`` are their orders."""

    root_p: RootDescriptor
    root_q: RootDescriptor
    k: int
    n: int

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "root_p": _root_json(self.root_p), "root_q": _root_json(self.root_q)}


@dataclass(frozen=True)
class BlockingRoot:
    """An unsupported root that prevented a decision."""

    root_p: RootDescriptor
    root_q: RootDescriptor

    def to_json(self) -> dict:
        return {"blocking": [_root_json(self.root_p), _root_json(self.root_q)]}


@dataclass(frozen=True)
class SequenceWitness:
    """Per-index verdicts behind a sequence decision; ``index`` is 1-based."""

    index: int | None
    entries: tuple[CoprimalityVerdict, ...]

    def to_json(self) -> dict:
        return {"index": self.index, "entries": [e.to_json() for e in self.entries]}


def _root_json(r: RootDescriptor) -> dict:
    d = r.to_json()
    d.pop("multiplicity", None)
    return d


@dataclass(frozen=True)
class CoprimalityVerdict:
    relation: Relation
    witness: CommonFactor | DependenceWitness | BlockingRoot | SequenceWitness | None = None

    @property
    def is_strongly_coprime(self) -> bool:
        return self.relation is Relation.STRONGLY_COPRIME

    def to_json(self) -> dict:
        out: dict = {"relation": self.relation.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


# -- plain coprimality -------------------------------------------------------------

def _nonzero(*ps: LaurentPolynomial) -> None:
    for p in ps:
        if p.is_zero():
            raise ZeroPolynomial("coprimality is undefined for the zero polynomial")


def coprime(p: LaurentPolynomial, q: LaurentPolynomial) -> CoprimalityVerdict:
    _nonzero(p, q)
    g = lp_gcd(p, q)
    if g.is_constant():
        return CoprimalityVerdict(Relation.COPRIME)
    return CoprimalityVerdict(Relation.NOT_COPRIME, CommonFactor(g))


# -- multiplicative dependence of two roots --------------------------------------------

def _valuation_pair(x: QuadraticNumber, p: int) -> tuple[Fraction, Fraction]:
    """Valuations at ``p`` of ``x`` and its conjugate, read off the Newton polygon
    of ``t^2 - T t + N``.  Irrational ``x`` may get half-integral values."""
    if x.is_rational():
        v = Fraction(rational_valuation(x.a, p))
        return v, v
    T, N = x.trace(), x.norm()
    vn = Fraction(rational_valuation(N, p))
    if T != 0:
        vt = Fraction(rational_valuation(T, p))
        if 2 * vt < vn:
            return vt, vn - vt
    return vn / 2, vn / 2


def _relevant_primes(x: QuadraticNumber) -> set[int]:
    out = set()
    for value in (x.norm(), x.trace()):
        if value != 0:
            out |= set(factor_integer(value.numerator)) | set(factor_integer(value.denominator))
    return out


def _ratios(alpha: tuple[Fraction, Fraction], beta: tuple[Fraction, Fraction]):
    """``k/n`` values with ``k*alpha_i = n*beta_σ(i)`` for some matching σ.

    Returns ``None`` for "no constraint", else a set of nonzero fractions.
    """
    out: set[Fraction] = set()
    free = False
    for b in (beta, beta[::-1]):
        ratio = None
        ok = True
        for a_i, b_i in zip(alpha, b):
            if a_i == 0 and b_i == 0:
                continue
            if a_i == 0 or b_i == 0:
                ok = False
                break
            c = b_i / a_i
            if ratio is None:
                ratio = c
            elif ratio != c:
                ok = False
                break
        if not ok:
            continue
        if ratio is None:
            free = True
        else:
            out.add(ratio)
    return None if free else out


def _coprime_exponents(ratio: Fraction) -> tuple[int, int]:
    """``(k, n)`` with ``k/n = ratio``, ``k > 0`` and ``gcd = 1``."""
    k, n = ratio.numerator, ratio.denominator
    if k < 0:
        k, n = -k, -n
    return k, n


def _unit_candidates(x: QuadraticNumber, y: QuadraticNumber) -> list[tuple[int, int]]:
    """Candidate ``(k, n)`` for two units of the same real quadratic field.

    Both are ``±ε^a`` for the fundamental unit ``ε >= (1+√5)/2``, so
    ``|n| <= log|x| / log φ``; the log ratio pins ``k`` for each ``n``.
    """
    prec = 256
    with working_precision(prec):
        lx = abs(x.arb(prec)).log()
        ly = abs(y.arb(prec)).log()
        log_phi = ((1 + flint.arb(5).sqrt()) / 2).log()
        ratio = ly / lx
        bound = int((abs(lx) / log_phi).upper().floor().unique_fmpz()) + 1
        out = []
        for n in range(1, bound + 1):
            kn = ratio * n
            lo = int(kn.lower().floor().unique_fmpz())
            hi = int(kn.upper().ceil().unique_fmpz())
            for k in range(lo, hi + 1):
                if k != 0 and gcd(k, n) == 1 and kn.contains(k):
                    out.append((k, n) if k > 0 else (-k, -n))
    return out


def _as_unity(r: RootDescriptor) -> RootDescriptor:
    # ±1 built directly as rational roots are roots of unity of order 1 and 2
    if isinstance(r, RationalRoot) and abs(r.value) == 1:
        return RootOfUnity(1 if r.value == 1 else 2, r.multiplicity)
    return r


def _dependence(r: RootDescriptor, s: RootDescriptor):
    """``(k, n)`` with ``r^k = s^n`` and ``gcd(k, n) = 1``, ``None``, or ``UNDECIDABLE``."""
    r, s = _as_unity(r), _as_unity(s)
    r_unity, s_unity = isinstance(r, RootOfUnity), isinstance(s, RootOfUnity)
    if r_unity and s_unity:
        # r^a = 1 = s^b; a coprime pair also exists, but the descriptors do not
        # say which primitive roots they are, so the orders are the witness
        return r.order, s.order
    if r_unity or s_unity:
        # r^k = s^n with one side a root of unity forces the other to be one;
        # Unsupported roots are never roots of unity (cyclotomic factors were removed)
        return None
    if isinstance(r, Unsupported) or isinstance(s, Unsupported):
        return UNDECIDABLE
    x, y = r.as_quadratic(), s.as_quadratic()
    if not x.is_rational() and not y.is_rational() and x.D != y.D:
        # a power in Q(√D) equal to one in Q(√D') must be rational; the valuation
        # parities of the squares then make the exponents incompatible
        return None
    D = max(x.D, y.D)
    x, y = x.in_field(D), y.in_field(D)
    candidates: set[Fraction] | None = None
    for p in sorted(_relevant_primes(x) | _relevant_primes(y)):
        c = _ratios(_valuation_pair(x, p), _valuation_pair(y, p))
        if c is None:
            continue
        candidates = c if candidates is None else candidates & c
        if not candidates:
            return None
    if candidates is None:
        pairs = _unit_candidates(x, y)
    else:
        pairs = [_coprime_exponents(c) for c in sorted(candidates)]
    for k, n in pairs:
        if x**k == y**n:
            return k, n
    return None


def multiplicatively_dependent(r: RootDescriptor, s: RootDescriptor):
    """``True``/``False`` for ``r^k = s^n`` with coprime nonzero ``k, n``, or ``UNDECIDABLE``."""
    res = _dependence(r, s)
    if res is UNDECIDABLE:
        return UNDECIDABLE
    return res is not None


def dependence_exponents(r: RootDescriptor, s: RootDescriptor) -> tuple[int, int] | None:
    """The witness ``(k, n)`` behind :func:`multiplicatively_dependent`, when it is true."""
    res = _dependence(r, s)
    return None if res is UNDECIDABLE else res


# -- strong coprimality -------------------------------------------------------------

def _distinct_roots(p: LaurentPolynomial) -> list[RootDescriptor]:
    seen, out = set(), []
    for d in classify_roots(p):
        key = _root_key(d)
        if key not in seen:
            seen.add(key)
            out.append(d)
    return out


def _root_key(d: RootDescriptor):
    if isinstance(d, RationalRoot):
        return ("r", d.value)
    if isinstance(d, RootOfUnity):
        return ("u", d.order)
    if isinstance(d, QuadraticRoot):
        return ("q", d.a, d.b, d.D)
    return ("x", str(d.factor))


def strongly_coprime(p: LaurentPolynomial, q: LaurentPolynomial) -> CoprimalityVerdict:
    _nonzero(p, q)
    if normalize(p).is_constant() or normalize(q).is_constant():
        return CoprimalityVerdict(Relation.STRONGLY_COPRIME)
    blocking = None
    for r in _distinct_roots(p):
        for s in _distinct_roots(q):
            res = _dependence(r, s)
            if res is UNDECIDABLE:
                blocking = blocking or BlockingRoot(r, s)
            elif res is not None:
                k, n = res
                return CoprimalityVerdict(Relation.NOT_STRONGLY_COPRIME, DependenceWitness(r, s, k, n))
    if blocking is not None:
        return CoprimalityVerdict(Relation.UNDECIDABLE, blocking)
    return CoprimalityVerdict(Relation.STRONGLY_COPRIME)


@lru_cache(maxsize=None)
def _oracle_pairs(bound: int) -> tuple[tuple[int, int], ...]:
    """Coprime ``(n, k)`` with ``1 <= n, |k| <= bound``, ordered by ``max(n, |k|)``.

    A common root of ``p(t^n)`` and ``q(t^k)`` reappears at ``(n/g, k/g)`` and
    at ``(-n, -k)``, so these pairs cover every sign and common divisor.
    """
    pairs = [(n, k) for n in range(1, bound + 1) for k in range(-bound, bound + 1)
             if k != 0 and gcd(n, abs(k)) == 1]
    return tuple(sorted(pairs, key=lambda nk: (max(nk[0], abs(nk[1])), nk[0], nk[1])))


def oracle_first_failure(p: LaurentPolynomial, q: LaurentPolynomial, bound: int) -> int | None:
    """Smallest ``B <= bound`` at which the brute-force gcd search finds a common root."""
    _nonzero(p, q)
    if normalize(p).is_constant() or normalize(q).is_constant():
        return None
    cp, cq = normalize(p).integer_coeffs(), normalize(q).integer_coeffs()
    cache_p: dict[int, object] = {}
    cache_q: dict[int, object] = {}
    for n, k in _oracle_pairs(bound):
        fp = cache_p.get(n)
        if fp is None:
            fp = cache_p[n] = spread_coeffs(cp, n)
        fq = cache_q.get(k)
        if fq is None:
            fq = cache_q[k] = spread_coeffs(cq, k)
        if fp.gcd(fq).degree() > 0:
            return max(n, abs(k))
    return None


def strongly_coprime_oracle(p: LaurentPolynomial, q: LaurentPolynomial, B: int) -> bool:
    """True iff ``gcd(p(t^n), q(t^k))`` is constant for all ``1 <= |n|, |k| <= B``."""
    if B < 1:
        raise ValueError("oracle bound must be positive")
    return oracle_first_failure(p, q, B) is None


def sequence_strongly_coprime(P: list[LaurentPolynomial], Q: list[LaurentPolynomial]) -> CoprimalityVerdict:
    if len(P) != len(Q):
        raise LengthMismatch(f"sequences have lengths {len(P)} and {len(Q)}")
    if not P:
        raise LengthMismatch("sequences must be nonempty")
    _nonzero(*P, *Q)
    first = coprime(P[0], Q[0])
    entries = [first]
    if first.relation is Relation.COPRIME:
        return CoprimalityVerdict(Relation.STRONGLY_COPRIME, SequenceWitness(1, tuple(entries)))
    undecided = False
    for idx in range(1, len(P)):
        v = strongly_coprime(P[idx], Q[idx])
        entries.append(v)
        if v.relation is Relation.STRONGLY_COPRIME:
            return CoprimalityVerdict(Relation.STRONGLY_COPRIME, SequenceWitness(idx + 1, tuple(entries)))
        undecided |= v.relation is Relation.UNDECIDABLE
    rel = Relation.UNDECIDABLE if undecided else Relation.NOT_STRONGLY_COPRIME
    return CoprimalityVerdict(rel, SequenceWitness(None, tuple(entries)))
