"""Command-line interface.

Exit codes: 0 pass/success, 1 fail verdict, 2 undecidable, 3 usage or input error.
All output is JSON with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import parse_poly
from .algebra.parse import GRAMMAR
from .certificate import Verdict
from .coprimality import Relation, coprime, oracle_first_failure, strongly_coprime
from .errors import KnotCertError, MalformedInput
from .family import (
    Base,
    build_K,
    family_summary,
    from_json,
    order_two_certificate,
    structural_hash,
    to_json,
    trefoil_sum,
)
from .obstruction import (
    CGBoundTable,
    check_main_hypotheses,
    independence_certificate,
    irreducibility_scan,
    membership_hint,
    trefoil_budget,
    tstar_check,
)
from .seifert import SeifertMatrix, invariants_json, signature_profile

EXIT_PASS, EXIT_FAIL, EXIT_UNDECIDABLE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tol(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tolerance {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def _twists(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"twists must be comma-separated integers, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--expr", help="family expression JSON file (as written by 'family build')")
    p.add_argument("--n", type=int, help="number of operators")
    p.add_argument("--twists", type=_twists, help="comma-separated m_1,...,m_n")
    k0 = p.add_mutually_exclusive_group()
    k0.add_argument("--k0", help="KnotExpr or Seifert-matrix JSON file for the input knot")
    k0.add_argument("--k0-trefoils", type=int, metavar="N", help="use the connected sum of N trefoils")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="knotcert",
        description="Exact knot invariants, strong coprimality and certificates for "
                    "doubling-operator knot families.",
        epilog="Polynomial grammar:\n" + GRAMMAR + "\nExit codes: 0 pass, 1 fail, 2 undecidable, 3 usage/input error.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", parents=[common], help="Alexander polynomial, Arf, signature profile, rho_0")
    p.add_argument("--seifert", required=True, help='JSON file {"size": 2g, "entries": [[...], ...]}')
    p.add_argument("--tol", type=_tol, default=Fraction(1, 10**9), help="rho_0 enclosure width (default 1e-9)")
    p.add_argument("--dump-profile", action="store_true", help="add step-function data for plotting")

    p = sub.add_parser("family", help="build family knots")
    fam = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    b = fam.add_parser("build", parents=[common], help="K^n(m_1..m_n, K0) with derived data")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--twists", type=_twists, required=True)
    k0 = b.add_mutually_exclusive_group(required=True)
    k0.add_argument("--k0", help="KnotExpr or Seifert-matrix JSON file")
    k0.add_argument("--k0-trefoils", type=int, metavar="N", help="connected sum of N trefoils")
    b.add_argument("--tol", type=_tol, default=Fraction(1, 10**9))

    p = sub.add_parser("coprime", parents=[common], help="coprimality verdicts",
                       epilog="Polynomial grammar:\n" + GRAMMAR,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--p", required=True, help="first polynomial")
    p.add_argument("--q", required=True, help="second polynomial")
    p.add_argument("--strong", action="store_true", help="decide strong coprimality")
    p.add_argument("--oracle", type=int, metavar="B", help="also run the brute-force gcd oracle up to B")

    p = sub.add_parser("certify", help="emit certificates")
    cert = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = cert.add_parser("independence", parents=[common])
    c.add_argument("--tuples", required=True, help='JSON list of twist lists, or of {"twists": [...], "k0": {...}}')
    c.add_argument("--bounds", required=True, help="JSON map operator name -> decimal bound")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--tol", type=_tol, default=Fraction(1, 10**9))
    c = cert.add_parser("main", parents=[common])
    _add_family_args(c)
    c.add_argument("--bounds", required=True)
    c.add_argument("--tol", type=_tol, default=Fraction(1, 10**9))
    c = cert.add_parser("membership", parents=[common])
    _add_family_args(c)
    c.add_argument("--P", action="append", required=True, metavar="POLY", help="one entry of P; repeat n times")
    c = cert.add_parser("order-two", parents=[common])
    _add_family_args(c)

    p = sub.add_parser("tstar", parents=[common], help="exact t_* cone check")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)

    p = sub.add_parser("budget", parents=[common], help="trefoil count for a rho_0 threshold")
    p.add_argument("--threshold", type=_rational, required=True)

    p = sub.add_parser("scan", parents=[common], help="irreducibility scan of Delta_m")
    p.add_argument("--mmax", type=int, required=True)
    return parser


# -- command handlers ---------------------------------------------------------------

def _k0_from(args) -> object:
    if getattr(args, "k0_trefoils", None) is not None:
        if args.k0_trefoils < 1:
            raise MalformedInput("--k0-trefoils must be positive")
        return trefoil_sum(args.k0_trefoils)
    if getattr(args, "k0", None) is None:
        raise UsageError("an input knot is required: --k0 FILE or --k0-trefoils N")
    obj = _load_json(args.k0)
    if isinstance(obj, dict) and "node" in obj:
        return from_json(obj)
    return Base(SeifertMatrix.from_json(obj))


def _family_expr(args, check: bool = True):
    if args.expr is not None:
        obj = _load_json(args.expr)
        if isinstance(obj, dict) and "node" not in obj and "expr" in obj:
            obj = obj["expr"]  # accept the full 'family build' output
        return from_json(obj)
    if args.n is None or args.twists is None:
        raise UsageError("give --expr FILE, or --n, --twists and an input knot")
    return build_K(args.n, args.twists, _k0_from(args), check=check)


def _verdict_code(v: Verdict) -> int:
    return {Verdict.PASS: EXIT_PASS, Verdict.FAIL: EXIT_FAIL, Verdict.UNDECIDABLE: EXIT_UNDECIDABLE}[v]


def _cmd_invariants(args):
    v = SeifertMatrix.from_json(_load_json(args.seifert))
    out = invariants_json(v, args.tol)
    if args.dump_profile:
        prof = signature_profile(v)
        out["profile_steps"] = {
            "theta_over_pi_breaks": [[str(j.theta_lo), str(j.theta_hi)] for j in prof.jumps],
            "values": list(prof.arc_values),
        }
    return out, EXIT_PASS


def _cmd_family(args):
    e = build_K(args.n, args.twists, _k0_from(args))
    out = {"expr": to_json(e), "hash": structural_hash(e)}
    out.update(family_summary(e, args.tol))
    return out, EXIT_PASS


_RELATION_CODE = {
    Relation.COPRIME: EXIT_PASS,
    Relation.STRONGLY_COPRIME: EXIT_PASS,
    Relation.NOT_COPRIME: EXIT_FAIL,
    Relation.NOT_STRONGLY_COPRIME: EXIT_FAIL,
    Relation.UNDECIDABLE: EXIT_UNDECIDABLE,
}


def _cmd_coprime(args):
    p, q = parse_poly(args.p), parse_poly(args.q)
    verdict = strongly_coprime(p, q) if args.strong else coprime(p, q)
    out = verdict.to_json()
    code = _RELATION_CODE[verdict.relation]
    if args.oracle is not None:
        if args.oracle < 1:
            raise UsageError("--oracle bound must be positive")
        first = oracle_first_failure(p, q, args.oracle)
        out["oracle"] = {"B": args.oracle, "result": first is None, "first_failing_B": first}
    return out, code


def _cmd_certify(args) -> tuple[dict, int]:
    if args.action == "independence":
        raw = _load_json(args.tuples)
        if not isinstance(raw, list):
            raise MalformedInput("--tuples must hold a JSON list")
        entries = []
        for item in raw:
            if isinstance(item, dict):
                if "twists" not in item:
                    raise MalformedInput("tuple objects need a 'twists' field")
                k0 = from_json(item["k0"]) if "k0" in item else None
                entries.append((tuple(item["twists"]), k0) if k0 is not None else tuple(item["twists"]))
            elif isinstance(item, list) and all(isinstance(x, int) for x in item):
                entries.append(tuple(item))
            else:
                raise MalformedInput(f"bad tuple entry {item!r}")
        bounds = CGBoundTable.from_json(_load_json(args.bounds))
        cert = independence_certificate(entries, bounds, jobs=max(1, args.jobs), tol=args.tol)
    elif args.action == "main":
        bounds = CGBoundTable.from_json(_load_json(args.bounds))
        cert = check_main_hypotheses(_family_expr(args, check=False), bounds, args.tol)
    elif args.action == "membership":
        cert = membership_hint(_family_expr(args), [parse_poly(s) for s in args.P])
    else:
        cert = order_two_certificate(_family_expr(args))
    return cert.to_json(), _verdict_code(cert.verdict)


def _cmd_tstar(args):
    cert = tstar_check(args.m, args.kmax)
    return cert.to_json(), _verdict_code(cert.verdict)


def _cmd_budget(args):
    if args.threshold <= 0:
        raise UsageError("--threshold must be positive")
    return {"N": trefoil_budget(args.threshold)}, EXIT_PASS


def _cmd_scan(args):
    if args.mmax < 1:
        raise UsageError("--mmax must be positive")
    cert = irreducibility_scan(args.mmax)
    return cert.to_json(), _verdict_code(cert.verdict)


_HANDLERS = {
    "invariants": _cmd_invariants,
    "family": _cmd_family,
    "coprime": _cmd_coprime,
    "certify": _cmd_certify,
    "tstar": _cmd_tstar,
    "budget": _cmd_budget,
    "scan": _cmd_scan,
}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        out, code = _HANDLERS[args.command](args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"knotcert: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (KnotCertError, ValueError, KeyError, TypeError) as exc:
        print(f"knotcert: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    text = dumps(out)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
