"""Certificates for the checkable hypotheses behind the independence results.

Each function verifies finite, exact conditions and records which published
result turns them into a concordance statement.  No certificate claims to
prove a filtration statement itself.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from math import floor
from typing import Iterable, Mapping

from .algebra import LaurentPolynomial, is_perfect_square, is_symmetric, matrix_power, normalize
from .certificate import (
    LEMMA_TSTAR,
    PROP_IRREDUCIBLE,
    PROP_ORDER_TWO,
    THM_INDEPENDENCE,
    THM_MAIN,
    THM_MEMBERSHIP,
    Certificate,
    Verdict,
    combine,
)
from .coprimality import Relation, sequence_strongly_coprime
from .errors import (
    AsymmetricP1,
    IntervalTooWide,
    LengthMismatch,
    MalformedInput,
    MissingBound,
    ZeroTwist,
)
from .family import (
    KnotExpr,
    build_K,
    delta,
    family_shape,
    operator_polynomial_sequence,
    order_two_certificate,
    rho_zero_expr,
    structural_hash,
    trefoil_sum,
)
from .seifert import DEFAULT_TOL, e_matrix, t_star

TOL_CAP = Fraction(1, 10**60)


# -- Cheeger-Gromov bounds ------------------------------------------------------------

@dataclass(frozen=True)
class CGBoundTable:
    """User-supplied upper bounds for Cheeger-Gromov constants, by operator name."""

    entries: Mapping[str, Fraction]

    def __post_init__(self):
        clean = {}
        for name, value in dict(self.entries).items():
            v = _parse_bound(name, value)
            if v <= 0:
                raise MalformedInput(f"bound for {name!r} must be positive, got {value}")
            clean[str(name)] = v
        object.__setattr__(self, "entries", clean)

    def bound(self, name: str) -> Fraction:
        try:
            return self.entries[name]
        except KeyError:
            raise MissingBound(f"no Cheeger-Gromov bound for operator {name!r}") from None

    @classmethod
    def uniform(cls, names: Iterable[str], value) -> CGBoundTable:
        return cls({n: value for n in names})

    @classmethod
    def from_json(cls, obj) -> CGBoundTable:
        if not isinstance(obj, dict):
            raise MalformedInput("bounds table must be a JSON object mapping names to decimal strings")
        return cls(obj)

    def to_json(self) -> dict:
        return {k: _fmt(v) for k, v in sorted(self.entries.items())}


def _parse_bound(name, value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise MalformedInput(f"bound for {name!r} is not a number")
    try:
        return Fraction(Decimal(str(value)))
    except (InvalidOperation, ValueError):
        raise MalformedInput(f"bound for {name!r} is not a decimal: {value!r}") from None


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else str(q)


# -- main hypotheses --------------------------------------------------------------------

def _abs_upper(rho) -> Fraction:
    return max(abs(rho.lo), abs(rho.hi))


def check_main_hypotheses(e: KnotExpr, bounds: CGBoundTable, tol: Fraction = DEFAULT_TOL) -> Certificate:
    """Hypotheses (1) ``m_n != 0``, (2) generating, nontrivial inner operators and
    (3) ``|ρ₀(K0)| > 2 Σ bounds`` over the ``n`` operators, decided strictly."""
    shape = family_shape(e)
    ops = [shape.outer_op] + list(reversed(shape.inner_ops))
    used = {op.name: bounds.bound(op.name) for op in ops}
    threshold = 2 * sum(bounds.bound(op.name) for op in ops)

    m_n = shape.twists[-1]
    hyp1 = {"id": 1, "statement": "m_n != 0", "m_n": m_n, "ok": m_n != 0}

    inner = []
    for op in reversed(shape.inner_ops):
        nontrivial = not normalize(op.alexander_poly).is_constant()
        inner.append({"operator": op.name, "alexander": str(op.alexander_poly),
                      "generates_module": op.curves_generate_module, "nontrivial": nontrivial,
                      "ok": op.curves_generate_module and nontrivial})
    hyp2 = {"id": 2, "statement": "each inner curve generates a nontrivial rational Alexander module",
            "operators": inner, "ok": all(x["ok"] for x in inner)}

    tol = Fraction(tol)
    while True:
        rho = rho_zero_expr(shape.K0, tol)
        if rho.is_rational:
            ok3 = abs(rho.value) > threshold
            break
        if rho.abs_lower() > threshold:
            ok3 = True
            break
        if _abs_upper(rho) <= threshold:
            ok3 = False
            break
        if tol <= TOL_CAP:
            raise IntervalTooWide(
                f"|rho_0(K0)| enclosure [{rho.lo}, {rho.hi}] cannot be separated from {threshold}")
        tol /= 10**6
    hyp3 = {"id": 3, "statement": "|rho_0(K0)| > 2 * sum of Cheeger-Gromov bounds",
            "rho_zero": rho.to_json(), "threshold": _fmt(threshold), "bounds": {k: _fmt(v) for k, v in used.items()},
            "ok": ok3}

    hyps = [hyp1, hyp2, hyp3]
    failing = [h["id"] for h in hyps if not h["ok"]]
    evidence = {
        "n": shape.n,
        "twists": list(shape.twists),
        "k0_hash": structural_hash(shape.K0),
        "hypotheses": hyps,
        "failing": failing,
    }
    verdict = Verdict.FAIL if failing else Verdict.PASS
    return Certificate("MainHypotheses", verdict, evidence, (THM_MAIN,))


# -- trefoil budget ----------------------------------------------------------------------

def trefoil_budget(threshold) -> int:
    """Least even ``N >= 2`` with ``N * 4/3 > threshold``."""
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    n = floor(threshold * 3 / 4) + 1
    n += n % 2
    return max(n, 2)


def budget_k0(twists, bounds: CGBoundTable) -> KnotExpr:
    """Connected sum of ``trefoil_budget(2 Σ bounds)`` trefoils for the given twists."""
    names = [f"FrakR({twists[-1]})"] + [f"RibbonR({m})" for m in reversed(twists[:-1])]
    threshold = 2 * sum(bounds.bound(n) for n in names)
    return trefoil_sum(trefoil_budget(threshold))


# -- independence ---------------------------------------------------------------------------

def _cell(args):
    i, j, P, Q = args
    v = sequence_strongly_coprime(P, Q)
    index = v.witness.index if v.witness is not None else None
    return i, j, v.relation.value, index


def independence_certificate(entries, bounds: CGBoundTable, jobs: int = 1,
                             tol: Fraction = DEFAULT_TOL) -> Certificate:
    """Combinatorial hypotheses of the independence theorem for a list of family knots.

    ``entries`` holds twist tuples or ``(twists, K0)`` pairs; a missing ``K0`` is
    chosen by :func:`trefoil_budget`.
    """
    items = []
    for entry in entries:
        if isinstance(entry, (tuple, list)) and len(entry) == 2 and not isinstance(entry[1], int):
            twists, K0 = tuple(int(m) for m in entry[0]), entry[1]
        else:
            twists, K0 = tuple(int(m) for m in entry), None
        items.append((twists, K0))
    if not items:
        raise MalformedInput("need at least one tuple")
    n = len(items[0][0])
    for twists, _ in items:
        if len(twists) != n:
            raise LengthMismatch(f"tuples have different lengths ({n} and {len(twists)})")
        if any(m <= 0 for m in twists):
            raise MalformedInput(f"tuple {list(twists)} has a non-positive entry")
    if n < 2:
        raise MalformedInput("tuples must have length n >= 2")

    tuples = [list(t) for t, _ in items]
    citations = (THM_INDEPENDENCE, THM_MAIN, PROP_ORDER_TWO)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i][0] == items[j][0]:
                evidence = {"tuples": tuples, "reason": "DuplicateTuple", "duplicate": [i, j]}
                return Certificate("Independence", Verdict.FAIL, evidence, citations)

    knots = []
    for twists, K0 in items:
        if K0 is None:
            K0 = budget_k0(twists, bounds)
        knots.append(build_K(n, twists, K0))
    seqs = [operator_polynomial_sequence(e) for e in knots]

    tasks = [(i, j, seqs[i], seqs[j]) for i in range(len(knots)) for j in range(len(knots)) if i != j]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_cell, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        cells = [_cell(t) for t in tasks]
    size = len(knots)
    matrix = [[None] * size for _ in range(size)]
    via = [[None] * size for _ in range(size)]
    for i, j, rel, index in cells:
        matrix[i][j] = rel
        via[i][j] = index
    bad = [(i, j, rel) for i, j, rel, _ in cells if rel != Relation.STRONGLY_COPRIME.value]

    per_tuple = []
    for twists, e in zip(tuples, knots):
        main = check_main_hypotheses(e, bounds, tol)
        order = order_two_certificate(e, tol)
        per_tuple.append({
            "twists": twists,
            "k0": _describe_k0(family_shape(e).K0),
            "operator_sequence": [str(p) for p in operator_polynomial_sequence(e)],
            "main_hypotheses": {"verdict": main.verdict.value, "failing": main.evidence["failing"],
                                "threshold": main.evidence["hypotheses"][2]["threshold"],
                                "rho_zero_k0": main.evidence["hypotheses"][2]["rho_zero"]},
            "order_two": {"verdict": order.verdict.value, "checks": order.evidence["checks"]},
        })

    verdicts = [Verdict.PASS]
    for rel in (b[2] for b in bad):
        verdicts.append(Verdict.UNDECIDABLE if rel == Relation.UNDECIDABLE.value else Verdict.FAIL)
    for t in per_tuple:
        verdicts.append(Verdict(t["main_hypotheses"]["verdict"]))
        verdicts.append(Verdict(t["order_two"]["verdict"]))
    verdict = combine(verdicts)

    evidence = {
        "n": n,
        "tuples": tuples,
        "bounds": bounds.to_json(),
        "coprimality_matrix": matrix,
        "coprimality_via_index": via,
        "per_tuple": per_tuple,
        "blocking": [{"i": i, "j": j, "relation": rel} for i, j, rel in bad[:1]],
        "cited_conclusions": [
            "the knots represent linearly independent elements of order two in F_n / F_{n.5}",
        ],
        "note": "hypotheses are verified here; the filtration conclusion is the cited theorem's",
    }
    return Certificate("Independence", verdict, evidence, citations)


def _describe_k0(K0: KnotExpr) -> dict:
    rho = rho_zero_expr(K0)
    return {"hash": structural_hash(K0), "rho_zero": rho.to_json()["exact"]}


# -- membership hint ------------------------------------------------------------------------

def membership_hint(e: KnotExpr, P: list[LaurentPolynomial]) -> Certificate:
    seq = operator_polynomial_sequence(e)
    if len(P) != len(seq):
        raise LengthMismatch(f"P has length {len(P)} but the family knot has n = {len(seq)}")
    if not is_symmetric(P[0]):
        raise AsymmetricP1(f"p_1 = {P[0]} is not symmetric up to units")
    v = sequence_strongly_coprime(list(P), seq)
    verdict = {
        Relation.STRONGLY_COPRIME: Verdict.PASS,
        Relation.NOT_STRONGLY_COPRIME: Verdict.FAIL,
        Relation.UNDECIDABLE: Verdict.UNDECIDABLE,
    }[v.relation]
    evidence = {
        "P": [str(p) for p in P],
        "operator_sequence": [str(p) for p in seq],
        "sequence_coprimality": v.to_json(),
        "cited_conclusion": f"K lies in F_{{{len(seq) + 1}}}^P" if verdict is Verdict.PASS else None,
    }
    return Certificate("MembershipHint", verdict, evidence, (THM_MEMBERSHIP,))


# -- t_* lemma -------------------------------------------------------------------------------

def tstar_check(m: int, k_max: int) -> Certificate:
    """Exact cone check for ``t_* = M / m^2`` with ``M = [[m^2+1, m], [m, m^2]]``."""
    if m == 0:
        raise ZeroTwist("t_* check requires m != 0")
    if k_max < 1:
        raise ValueError("k_max must be positive")
    M = ((m * m + 1, m), (m, m * m))
    ts = t_star(e_matrix(m))
    scaled = tuple(tuple(Fraction(x) * m * m for x in row) for row in ts)
    formula_ok = scaled == tuple(tuple(Fraction(x) for x in row) for row in M)
    # diag(1, -1) M diag(1, -1) flips the off-diagonal sign and keeps M^k's diagonal
    s = 1 if m > 0 else -1
    cone = ((M[0][0], s * M[0][1]), (s * M[1][0], M[1][1]))
    positive = all(x > 0 for row in cone for x in row)
    trace, det = M[0][0] + M[1][1], M[0][0] * M[1][1] - M[0][1] * M[1][0]
    d11, d22 = [], []
    power = ((1, 0), (0, 1))
    for _ in range(k_max):
        power = tuple(tuple(sum(power[i][k] * M[k][j] for k in range(2)) for j in range(2)) for i in range(2))
        d11.append(power[0][0])
        d22.append(power[1][1])
    nonzero = all(a != 0 for a in d11) and all(b != 0 for b in d22)
    # Cayley-Hamilton: a_{k+1} = tr(M) a_k - det(M) a_{k-1}, with a_0 = 1
    seq = [1] + d22
    recurrence = all(seq[k + 1] == trace * seq[k] - det * seq[k - 1] for k in range(1, len(seq) - 1))
    assert matrix_power(M, k_max)[1][1] == d22[-1]
    checks = {"t_star_formula": formula_ok, "cone_entries_positive": positive,
              "diagonal_entries_nonzero": nonzero, "recurrence": recurrence}
    evidence = {
        "m": m,
        "k_max": k_max,
        "M": [list(r) for r in M],
        "conjugated_M": [list(r) for r in cone],
        "trace": trace,
        "det": det,
        "M_k_11": [str(a) for a in d11],
        "M_k_22": [str(b) for b in d22],
        "checks": checks,
    }
    verdict = Verdict.PASS if all(checks.values()) else Verdict.FAIL
    return Certificate("TStar", verdict, evidence, (LEMMA_TSTAR,))


# -- irreducibility of Δ_m -----------------------------------------------------------------

def irreducibility_scan(m_max: int, pair_limit: int = 40) -> Certificate:
    """``4m^2 + 1`` is never a square, so every ``Δ_m`` is irreducible over Q; sampled
    pairs confirm ``Δ_m`` and ``Δ_n`` are not unit multiples for ``m != n``."""
    if m_max < 1:
        raise ValueError("m_max must be positive")
    first_square = None
    for m in range(1, m_max + 1):
        if is_perfect_square(4 * m * m + 1):
            first_square = m
            break
    # Δ_m ≐ q Δ_n forces q = m^2/n^2 and 2m^2 + 1 = q(2n^2 + 1), i.e. m^2 = n^2
    top = min(m_max, pair_limit)
    bad_pair = None
    pairs = 0
    for a in range(1, top + 1):
        for b in range(a + 1, top + 1):
            pairs += 1
            q = Fraction(a * a, b * b)
            if 2 * a * a + 1 == q * (2 * b * b + 1):
                bad_pair = [a, b]
            da, db = delta(a), delta(b)
            if da.scale(1) == db.scale(q):
                bad_pair = [a, b]
    checks = {"discriminants_not_square": first_square is None, "pairwise_not_associate": bad_pair is None}
    evidence = {
        "m_max": m_max,
        "discriminant": "4*m^2 + 1",
        "first_square_discriminant": first_square,
        "pairs_checked": pairs,
        "counterexample_pair": bad_pair,
        "checks": checks,
    }
    verdict = Verdict.PASS if all(checks.values()) else Verdict.FAIL
    return Certificate("Irreducibility", verdict, evidence, (PROP_IRREDUCIBLE,))
