"""Exception hierarchy shared by every module.

Each class maps to one named error condition of the library contract, so the
CLI can report ``type(exc).__name__`` verbatim.
"""


class KnotCertError(Exception):
    """Base class for all library errors."""


class PolynomialParseError(KnotCertError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = ""
        if text:
            pointer = f"\n  {text}\n  {' ' * position}^"
        super().__init__(f"{message} at position {position}{pointer}")


class ZeroPolynomial(KnotCertError, ValueError):
    pass


class ConstantPolynomial(KnotCertError, ValueError):
    pass


class NotSquare(KnotCertError, ValueError):
    pass


class Singular(KnotCertError, ValueError):
    pass


class InvalidSeifertMatrix(KnotCertError, ValueError):
    pass


class SingularSeifertMatrix(Singular):
    pass


class ZeroTwist(KnotCertError, ValueError):
    pass


class LengthMismatch(KnotCertError, ValueError):
    pass


class ArfNonzero(KnotCertError, ValueError):
    pass


class ArfUnknown(KnotCertError, ValueError):
    pass


class InvalidOperator(KnotCertError, ValueError):
    pass


class NotCertifiedAmphichiral(KnotCertError, ValueError):
    pass


class NotAFamilyExpression(KnotCertError, ValueError):
    pass


class IndexOutOfRange(KnotCertError, IndexError):
    pass


class MissingBound(KnotCertError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class IntervalTooWide(KnotCertError, ArithmeticError):
    pass


class AsymmetricP1(KnotCertError, ValueError):
    pass


class MalformedInput(KnotCertError, ValueError):
    """Structurally invalid JSON input (wrong node type, missing field)."""
