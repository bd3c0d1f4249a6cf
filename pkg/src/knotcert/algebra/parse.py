"""Text grammar for Laurent polynomials.

::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" ["-"|"+"] INT)?
    atom    := INT ["/" INT] | "t" | "(" expr ")"

Coefficients are integers or ``a/b`` rationals, the variable is ``t``, and
exponents may be negative.  Whitespace is ignored.  Negative powers are only
allowed on monomials.  Examples: ``4*t^2 - 9*t + 4``, ``t^-1 + 1 + t``,
``(t - 2)*(2*t - 1)``, ``1/2*t^3``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import PolynomialParseError
from .laurent import LaurentPolynomial

GRAMMAR = """\
    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" ["-"|"+"] INT)?
    atom    := INT ["/" INT] | "t" | "(" expr ")"

Coefficients are integers or a/b rationals, the variable is t, exponents may
be negative (on monomials only), whitespace is ignored and multiplication is
always written with '*'.  Examples: "4*t^2 - 9*t + 4", "t^-1 + 1 + t",
"(t - 2)*(2*t - 1)", "1/2*t^3".
"""

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*/^()t":
                raise PolynomialParseError(f"unexpected character {ch!r}", m.start(2), text)
            tokens.append((ch, ch, m.start(2)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, pos: int | None = None):
        raise PolynomialParseError(msg, self.tok[2] if pos is None else pos, self.text)

    def parse(self) -> LaurentPolynomial:
        if self.tok[0] == "end":
            self.fail("empty polynomial")
        p = self.expr()
        if self.tok[0] != "end":
            self.fail(f"unexpected token {self.tok[1]!r}")
        return p

    def expr(self) -> LaurentPolynomial:
        p = self.term()
        while self.tok[0] in ("+", "-"):
            op = self.advance()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> LaurentPolynomial:
        p = self.unary()
        while self.tok[0] == "*":
            self.advance()
            p = p * self.unary()
        return p

    def unary(self) -> LaurentPolynomial:
        if self.tok[0] in ("+", "-"):
            op = self.advance()[0]
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self) -> LaurentPolynomial:
        start = self.tok[2]
        base = self.atom()
        if self.tok[0] != "^":
            return base
        self.advance()
        sign = 1
        if self.tok[0] in ("+", "-"):
            sign = -1 if self.advance()[0] == "-" else 1
        if self.tok[0] != "int":
            self.fail("expected integer exponent")
        k = sign * int(self.advance()[1])
        if k < 0 and not base.is_monomial():
            self.fail("negative exponent applied to a non-monomial", start)
        return base**k

    def atom(self) -> LaurentPolynomial:
        kind, val, pos = self.tok
        if kind == "int":
            self.advance()
            num = int(val)
            if self.tok[0] == "/":
                self.advance()
                if self.tok[0] != "int":
                    self.fail("expected integer denominator")
                den = int(self.advance()[1])
                if den == 0:
                    self.fail("zero denominator", pos)
                value = LaurentPolynomial.constant(Fraction(num, den))
            else:
                value = LaurentPolynomial.constant(num)
            if self.tok[0] in ("t", "(", "int"):
                self.fail("missing '*' (implicit multiplication is not supported)")
            return value
        if kind == "t":
            self.advance()
            if self.tok[0] in ("int", "t", "("):
                self.fail("missing '*' (implicit multiplication is not supported)")
            return LaurentPolynomial.t()
        if kind == "(":
            self.advance()
            p = self.expr()
            if self.tok[0] != ")":
                self.fail("expected ')'")
            self.advance()
            return p
        if kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected token {val!r}")


def parse_poly(text: str) -> LaurentPolynomial:
    """Parse ``text`` into a :class:`LaurentPolynomial`.

    >>> str(parse_poly("t^-1 + 1 + t"))
    't + 1 + t^-1'
    """
    return _Parser(text).parse()
