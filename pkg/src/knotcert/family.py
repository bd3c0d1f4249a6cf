"""Symbolic knot expressions built from doubling operators.

An expression tree has five node kinds: ``Base`` (a Seifert matrix with
flags), ``Sum``, ``Mirror``, ``Reverse`` and ``Infect`` (a ribbon pattern with
null-homologous curves, each tied into an input knot).  Infection along such
curves has winding number zero, so the classical invariants of an ``Infect``
node are those of its pattern; the inputs only matter for higher-order data.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import LaurentPolynomial, normalize, parse_poly
from .certificate import PROP_ORDER_TWO, Certificate, Verdict
from .errors import (
    ArfNonzero,
    ArfUnknown,
    IndexOutOfRange,
    InvalidOperator,
    LengthMismatch,
    MalformedInput,
    NotAFamilyExpression,
    NotCertifiedAmphichiral,
    ZeroTwist,
)
from .seifert import (
    DEFAULT_TOL,
    TREFOIL,
    RhoZero,
    SeifertMatrix,
    alexander,
    connected_sum,
    e_matrix,
    mirror,
    reverse,
    rho_zero,
    signature_profile,
)


# -- operators -------------------------------------------------------------------

@dataclass(frozen=True)
class OperatorDesc:
    """A doubling operator: ribbon pattern ``R`` with ``curve_count`` infection curves."""

    name: str
    pattern_seifert: SeifertMatrix
    alexander_poly: LaurentPolynomial
    curve_count: int
    curves_null_homologous: bool = True
    curves_generate_module: bool = False
    is_ribbon: bool = True
    family: str = "custom"  # "FrakR", "RibbonR" or "custom"
    m: int | None = None

    def __post_init__(self):
        if self.curve_count < 1:
            raise InvalidOperator(f"{self.name}: curve_count must be positive")
        if normalize(self.alexander_poly) != alexander(self.pattern_seifert):
            raise InvalidOperator(
                f"{self.name}: alexander_poly {self.alexander_poly} does not match the pattern "
                f"({alexander(self.pattern_seifert)})")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pattern_seifert": self.pattern_seifert.to_json(),
            "alexander_poly": str(self.alexander_poly),
            "curve_count": self.curve_count,
            "curves_null_homologous": self.curves_null_homologous,
            "curves_generate_module": self.curves_generate_module,
            "is_ribbon": self.is_ribbon,
        }

    @classmethod
    def from_json(cls, obj: dict) -> OperatorDesc:
        try:
            return cls(
                name=str(obj["name"]),
                pattern_seifert=SeifertMatrix.from_json(obj["pattern_seifert"]),
                alexander_poly=parse_poly(obj["alexander_poly"]),
                curve_count=int(obj["curve_count"]),
                curves_null_homologous=bool(obj.get("curves_null_homologous", True)),
                curves_generate_module=bool(obj.get("curves_generate_module", False)),
                is_ribbon=bool(obj.get("is_ribbon", True)),
            )
        except KeyError as exc:
            raise MalformedInput(f"operator description is missing field {exc}") from None


def delta(m: int) -> LaurentPolynomial:
    """``Δ_m = m^2 t^2 - (2m^2 + 1) t + m^2``."""
    return LaurentPolynomial({2: m * m, 1: -(2 * m * m + 1), 0: m * m})


def q_poly(m: int) -> LaurentPolynomial:
    """``q_m = (m t - (m+1)) ((m+1) t - m)``, normalized."""
    return normalize(LaurentPolynomial({1: m, 0: -(m + 1)}) * LaurentPolynomial({1: m + 1, 0: -m}))


def _e_pattern(m: int) -> SeifertMatrix:
    # E^0 is still a valid (trivial) Seifert matrix; only the catalog gate rejects it
    return SeifertMatrix(((m, 0), (-1, -m)))


def frak_r(m: int, allow_zero: bool = False) -> OperatorDesc:
    """``E^m # E^m`` with its two band curves η₁, η₂."""
    if m == 0 and not allow_zero:
        raise ZeroTwist("FrakR(m) requires m != 0")
    pattern = connected_sum(_e_pattern(m), _e_pattern(m))
    return OperatorDesc(f"FrakR({m})", pattern, normalize(delta(m) * delta(m)) if m else alexander(pattern),
                        curve_count=2, curves_generate_module=True, family="FrakR", m=m)


def ribbon_r(m: int, allow_zero: bool = False) -> OperatorDesc:
    """Genus-one ribbon pattern with Alexander polynomial ``q_m`` and generating curve α."""
    if m == 0 and not allow_zero:
        raise ZeroTwist("RibbonR(m) requires m != 0")
    # det(V - tV^T) = -(mt - (m+1))((m+1)t - m)
    pattern = SeifertMatrix(((0, m + 1), (m, 0)))
    poly = q_poly(m) if m else alexander(pattern)
    return OperatorDesc(f"RibbonR({m})", pattern, poly, curve_count=1,
                        curves_generate_module=True, family="RibbonR", m=m)


for _m in (-3, -1, 1, 2, 5):  # catalog contract, checked at import
    assert alexander(ribbon_r(_m).pattern_seifert) == q_poly(_m)
    assert alexander(frak_r(_m).pattern_seifert) == normalize(delta(_m) ** 2)


# -- expressions -----------------------------------------------------------------------

@dataclass(frozen=True)
class Base:
    seifert: SeifertMatrix
    arf_known: int | None = None
    negative_amphichiral: bool = False
    label: str | None = None


@dataclass(frozen=True)
class Infect:
    op: OperatorDesc
    inputs: tuple[KnotExpr, ...]
    depth: int | None = None  # n, recorded by build_K on the outermost node

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if len(self.inputs) != self.op.curve_count:
            raise InvalidOperator(f"{self.op.name} takes {self.op.curve_count} inputs, got {len(self.inputs)}")


@dataclass(frozen=True)
class Sum:
    left: KnotExpr
    right: KnotExpr


@dataclass(frozen=True)
class Mirror:
    child: KnotExpr


@dataclass(frozen=True)
class Reverse:
    child: KnotExpr


KnotExpr = Union[Base, Infect, Sum, Mirror, Reverse]


def E(m: int) -> Base:
    return Base(e_matrix(m), negative_amphichiral=True, label=f"E({m})")


def trefoil() -> Base:
    return Base(TREFOIL, label="trefoil")


def trefoil_sum(count: int) -> KnotExpr:
    """Left-nested connected sum of ``count >= 1`` trefoils."""
    if count < 1:
        raise ValueError("need at least one trefoil")
    out: KnotExpr = trefoil()
    for _ in range(count - 1):
        out = Sum(out, trefoil())
    return out


def granny() -> KnotExpr:
    return trefoil_sum(2)


# -- JSON and hashing ------------------------------------------------------------

def to_json(e: KnotExpr) -> dict:
    if isinstance(e, Base):
        flags = {"negative_amphichiral": e.negative_amphichiral}
        if e.arf_known is not None:
            flags["arf_known"] = e.arf_known
        out = {"node": "base", "seifert": e.seifert.to_json(), "flags": flags}
        if e.label is not None:
            out["label"] = e.label
        return out
    if isinstance(e, Infect):
        out = {"node": "infect", "inputs": [to_json(c) for c in e.inputs]}
        if e.op.family in ("FrakR", "RibbonR"):
            out["op"], out["m"] = e.op.family, e.op.m
        else:
            out["op"], out["desc"] = "custom", e.op.to_json()
        if e.depth is not None:
            out["depth"] = e.depth
        return out
    if isinstance(e, Sum):
        return {"node": "sum", "left": to_json(e.left), "right": to_json(e.right)}
    if isinstance(e, Mirror):
        return {"node": "mirror", "child": to_json(e.child)}
    if isinstance(e, Reverse):
        return {"node": "reverse", "child": to_json(e.child)}
    raise TypeError(f"not a knot expression: {e!r}")


def from_json(obj: dict) -> KnotExpr:
    if not isinstance(obj, dict) or "node" not in obj:
        raise MalformedInput("knot expression must be an object with a 'node' field")
    kind = obj["node"]
    try:
        if kind == "base":
            flags = obj.get("flags", {})
            arf_known = flags.get("arf_known")
            if arf_known not in (None, 0, 1):
                raise MalformedInput(f"flags.arf_known must be 0 or 1, got {arf_known!r}")
            return Base(SeifertMatrix.from_json(obj["seifert"]), arf_known,
                        bool(flags.get("negative_amphichiral", False)), obj.get("label"))
        if kind == "infect":
            op = obj["op"]
            if op == "FrakR":
                desc = frak_r(int(obj["m"]), allow_zero=True)
            elif op == "RibbonR":
                desc = ribbon_r(int(obj["m"]), allow_zero=True)
            elif op == "custom":
                desc = OperatorDesc.from_json(obj["desc"])
            else:
                raise MalformedInput(f"unknown operator {op!r}")
            return Infect(desc, tuple(from_json(c) for c in obj["inputs"]), obj.get("depth"))
        if kind == "sum":
            return Sum(from_json(obj["left"]), from_json(obj["right"]))
        if kind == "mirror":
            return Mirror(from_json(obj["child"]))
        if kind == "reverse":
            return Reverse(from_json(obj["child"]))
    except KeyError as exc:
        raise MalformedInput(f"'{kind}' node is missing field {exc}") from None
    raise MalformedInput(f"unknown node kind {kind!r}")


def canonical_json(e: KnotExpr) -> str:
    return json.dumps(to_json(e), sort_keys=True, separators=(",", ":"))


_HASHES: dict[int, tuple[KnotExpr, str]] = {}


def structural_hash(e: KnotExpr) -> str:
    """sha256 of the canonical JSON; cached per live node."""
    hit = _HASHES.get(id(e))
    if hit is not None and hit[0] is e:
        return hit[1]
    h = hashlib.sha256(canonical_json(e).encode()).hexdigest()
    _HASHES[id(e)] = (e, h)
    return h


# -- classical invariants ---------------------------------------------------------------

# memo tables keyed by structural hash; recomputation is idempotent, so
# concurrent writers can only store equal values
_ALEX_MEMO: dict[str, LaurentPolynomial] = {}
_RHO_MEMO: dict[tuple[str, Fraction], RhoZero] = {}


def _check_operator(op: OperatorDesc) -> None:
    if not op.curves_null_homologous:
        raise InvalidOperator(f"{op.name}: infection curves must be null-homologous")


def classical_alexander(e: KnotExpr) -> LaurentPolynomial:
    key = structural_hash(e)
    hit = _ALEX_MEMO.get(key)
    if hit is not None:
        return hit
    if isinstance(e, Base):
        out = alexander(e.seifert)
    elif isinstance(e, Sum):
        out = normalize(classical_alexander(e.left) * classical_alexander(e.right))
    elif isinstance(e, (Mirror, Reverse)):
        out = classical_alexander(e.child)
    else:
        _check_operator(e.op)
        out = normalize(e.op.alexander_poly)
    _ALEX_MEMO[key] = out
    return out


def arf_expr(e: KnotExpr) -> int:
    """Arf invariant from the classical Alexander polynomial; a Base flag must agree."""
    if isinstance(e, Base) and e.arf_known is not None:
        computed = _arf_of(alexander(e.seifert))
        if computed != e.arf_known:
            raise MalformedInput(f"flag arf_known={e.arf_known} contradicts the Seifert matrix (Arf {computed})")
    try:
        poly = classical_alexander(e)
    except InvalidOperator as exc:
        raise ArfUnknown(f"Arf invariant not computable: {exc}") from None
    return _arf_of(poly)


def _arf_of(poly: LaurentPolynomial) -> int:
    return 0 if abs(poly(-1)) % 8 in (1, 7) else 1


def rho_zero_expr(e: KnotExpr, tol: Fraction = DEFAULT_TOL) -> RhoZero:
    tol = Fraction(tol)
    key = (structural_hash(e), tol)
    hit = _RHO_MEMO.get(key)
    if hit is not None:
        return hit
    if isinstance(e, Base):
        out = rho_zero(e.seifert, tol)
    elif isinstance(e, Sum):
        out = rho_zero_expr(e.left, tol) + rho_zero_expr(e.right, tol)
    elif isinstance(e, Mirror):
        out = -rho_zero_expr(e.child, tol)
    elif isinstance(e, Reverse):
        out = rho_zero_expr(e.child, tol)
    else:
        _check_operator(e.op)
        out = rho_zero(e.op.pattern_seifert, tol)
    _RHO_MEMO[key] = out
    return out


def seifert_model(e: KnotExpr) -> SeifertMatrix:
    """A Seifert matrix with the classical invariants of ``e`` (pattern for infections)."""
    if isinstance(e, Base):
        return e.seifert
    if isinstance(e, Sum):
        return connected_sum(seifert_model(e.left), seifert_model(e.right))
    if isinstance(e, Mirror):
        return mirror(seifert_model(e.child))
    if isinstance(e, Reverse):
        return reverse(seifert_model(e.child))
    _check_operator(e.op)
    return e.op.pattern_seifert


# -- the recursive family ------------------------------------------------------------

def build_K(n: int, twists, K0: KnotExpr, check: bool = True) -> Infect:
    """``FrakR(m_n)(J, Mirror(Reverse(J)))`` with ``J = RibbonR(m_{n-1}) ∘ … ∘ RibbonR(m_1)(K0)``.

    ``check=False`` skips the twist and Arf gates so that hypothesis failures
    can be reported by a certificate instead of raised.
    """
    twists = tuple(int(m) for m in twists)
    if n < 1:
        raise ValueError("n must be at least 1")
    if len(twists) != n:
        raise LengthMismatch(f"n = {n} but {len(twists)} twists were given")
    if check:
        for i, m in enumerate(twists, 1):
            if m == 0:
                raise ZeroTwist(f"twist m_{i} is 0")
        if arf_expr(K0) != 0:
            raise ArfNonzero("the input knot must have Arf invariant zero")
    J = K0
    for m in twists[:-1]:
        J = Infect(ribbon_r(m, allow_zero=not check), (J,))
    return Infect(frak_r(twists[-1], allow_zero=not check), (J, Mirror(Reverse(J))), depth=n)


@dataclass(frozen=True)
class FamilyShape:
    """Decomposition of a ``build_K`` output."""

    n: int
    twists: tuple[int, ...]  # (m_1, ..., m_n)
    inner_ops: tuple[OperatorDesc, ...]  # operators applied to K0, innermost first
    outer_op: OperatorDesc
    K0: KnotExpr


def _is_mirror_reverse(a: KnotExpr, b: KnotExpr) -> bool:
    return ((isinstance(b, Mirror) and isinstance(b.child, Reverse) and b.child.child == a)
            or (isinstance(b, Reverse) and isinstance(b.child, Mirror) and b.child.child == a))


def family_shape(e: KnotExpr) -> FamilyShape:
    if not (isinstance(e, Infect) and e.op.family == "FrakR"):
        raise NotAFamilyExpression("expected an outer FrakR infection")
    J, J_bar = e.inputs
    if not _is_mirror_reverse(J, J_bar):
        raise NotAFamilyExpression("second FrakR input must be the mirror-reverse of the first")
    inner = []
    node = J
    limit = None if e.depth is None else e.depth - 1
    while isinstance(node, Infect) and node.op.curve_count == 1 and (limit is None or len(inner) < limit):
        inner.append(node.op)
        node = node.inputs[0]
    if limit is not None and len(inner) != limit:
        raise NotAFamilyExpression(f"expected {limit} inner operators, found {len(inner)}")
    inner.reverse()
    twists = tuple(op.m if op.m is not None else 0 for op in inner) + (e.op.m,)
    return FamilyShape(len(inner) + 1, twists, tuple(inner), e.op, node)


def operator_polynomial_sequence(e: KnotExpr) -> list[LaurentPolynomial]:
    """``(Δ_{m_n}, p_{n-1}, …, p_1)``: the E-factor of the outer operator, then the
    inner operators' Alexander polynomials from the outside in."""
    shape = family_shape(e)
    first = delta(shape.outer_op.m)
    return [normalize(first)] + [normalize(op.alexander_poly) for op in reversed(shape.inner_ops)]


def higher_order_summands(e: KnotExpr, i: int) -> tuple[tuple[LaurentPolynomial, str], tuple[LaurentPolynomial, str]]:
    """The two cyclic summands of order ``q_{m_{n-i}}`` at level ``i``, tagged ``x1``, ``x2``."""
    seq = operator_polynomial_sequence(e)
    n = len(seq)
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"i must satisfy 1 <= i <= {n - 1}, got {i}")
    return (seq[i], "x1"), (seq[i], "x2")


# -- amphichirality -----------------------------------------------------------------

def is_negative_amphichiral(e: KnotExpr) -> bool:
    """Structural certificate; ``False`` means "not certified", not "chiral"."""
    if isinstance(e, Base):
        return e.negative_amphichiral
    if isinstance(e, Sum):
        return is_negative_amphichiral(e.left) and is_negative_amphichiral(e.right)
    if isinstance(e, (Mirror, Reverse)):
        return is_negative_amphichiral(e.child)
    if isinstance(e, Infect) and e.op.family == "FrakR":
        return _is_mirror_reverse(*e.inputs)
    return False


def _fox_milnor_witness(poly: LaurentPolynomial) -> LaurentPolynomial | None:
    """``f`` with ``poly ≐ f(t) f(t^-1)`` found from square roots of symmetric factors."""
    import flint

    _, factors = flint.fmpz_poly(normalize(poly).integer_coeffs()).factor()
    f = LaurentPolynomial.constant(1)
    pending: dict[str, tuple[LaurentPolynomial, int]] = {}
    for g, mult in factors:
        g = LaurentPolynomial.from_flint(g)
        if normalize(g.reciprocal()) == normalize(g):
            if mult % 2:
                return None
            f = f * g ** (mult // 2)
        else:
            pending[str(normalize(g))] = (g, mult)
    while pending:
        key, (g, mult) = pending.popitem()
        partner = pending.pop(str(normalize(g.reciprocal())), None)
        if partner is None or partner[1] != mult:
            return None
        f = f * g**mult
    if normalize(f * f.reciprocal()) != normalize(poly):
        return None
    return normalize(f)


def order_two_certificate(e: KnotExpr, tol: Fraction = DEFAULT_TOL) -> Certificate:
    if not is_negative_amphichiral(e):
        raise NotCertifiedAmphichiral("expression carries no negative-amphichirality certificate")
    doubled = Sum(e, e)
    poly = classical_alexander(doubled)
    f = _fox_milnor_witness(poly)
    rho = rho_zero_expr(doubled, tol)
    rho_ok = rho.is_rational and rho.value == 0
    profile = signature_profile(seifert_model(doubled))
    checks = {
        "fox_milnor": f is not None,
        "rho_zero_vanishes": rho_ok,
        "signature_profile_vanishes": profile.is_zero(),
    }
    evidence = {
        "identity": "K # K is isotopic to K # r(mirror K), which is slice",
        "alexander_of_sum": str(poly),
        "fox_milnor_factor": None if f is None else str(f),
        "rho_zero_of_sum": rho.to_json(),
        "signature_arc_values_of_sum": list(profile.arc_values),
        "checks": checks,
        "cited_conclusions": [
            "K is slice in a rational homology 4-ball",
            "K has order at most two in the concordance group",
        ],
    }
    verdict = Verdict.PASS if all(checks.values()) else Verdict.FAIL
    return Certificate("OrderTwo", verdict, evidence, (PROP_ORDER_TWO,))


def family_summary(e: KnotExpr, tol: Fraction = DEFAULT_TOL) -> dict:
    """Derived data reported next to a family expression."""
    seq = operator_polynomial_sequence(e)
    summands = []
    for i in range(1, len(seq)):
        (p1, x1), (p2, x2) = higher_order_summands(e, i)
        summands.append({"i": i, "summands": [{"order": str(p1), "variable": x1},
                                              {"order": str(p2), "variable": x2}]})
    return {
        "classical_alexander": str(classical_alexander(e)),
        "rho_zero": rho_zero_expr(e, tol).to_json(),
        "operator_sequence": [str(p) for p in seq],
        "higher_order_summands": summands,
        "negative_amphichiral": is_negative_amphichiral(e),
    }

