"""Dense exact matrices as tuples of rows (int or Fraction entries)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import NotSquare, Singular

Matrix = tuple[tuple, ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = tuple(tuple(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def _square(m: Matrix) -> int:
    r, c = shape(m)
    if r != c:
        raise NotSquare(f"matrix is {r}x{c}")
    return r


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    top = tuple(tuple(r) + (0,) * nb for r in a)
    bottom = tuple((0,) * na + tuple(r) for r in b)
    return top + bottom


def det(m: Matrix):
    """Exact determinant.  Bareiss (fraction-free) for integer input."""
    n = _square(m)
    if n == 0:
        return 1
    if all(isinstance(x, int) for r in m for x in r):
        return _bareiss(m)
    a = [[Fraction(x) for x in r] for r in m]
    sign, result = 1, Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        result *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return sign * result


def _bareiss(m: Matrix) -> int:
    n = len(m)
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse over Q."""
    n = _square(m)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return tuple(tuple(_simplify(x) for x in r[n:]) for r in a)


def _simplify(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def matrix_power(m: Matrix, k: int) -> Matrix:
    """Exact ``m^k`` by repeated squaring; negative ``k`` inverts first."""
    n = _square(m)
    if k < 0:
        if det(m) == 0:
            raise Singular("negative power of a singular matrix")
        m, k = inverse(m), -k
    result = identity(n)
    base = m
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return tuple(tuple(_simplify(x) for x in r) for r in result)


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative


def inertia(m: Matrix) -> Inertia:
    """Inertia of a symmetric rational matrix by exact congruence diagonalization.

    A zero diagonal with a nonzero off-diagonal entry ``a_ij`` is repaired by the
    congruence ``e_i <- e_i + e_j`` (or ``e_i - e_j``), which makes the pivot
    ``a_ii ± 2 a_ij + a_jj`` nonzero.
    """
    n = _square(m)
    a = [[Fraction(x) for x in r] for r in m]
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("inertia requires a symmetric matrix")
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            s = 1 if a[i][i] + 2 * a[i][j] + a[j][j] != 0 else -1
            for c in range(n):
                a[i][c] += s * a[j][c]
            for r in range(n):
                a[r][i] += s * a[r][j]
            k = i
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        row = a[k][:]  # pivot row, read before any entry of it is cleared
        for i in active:
            f = a[i][k] / p
            if f:
                for j in active:
                    a[i][j] -= f * row[j]
                a[i][k] = Fraction(0)
                a[k][i] = Fraction(0)
    return Inertia(pos, neg, n - pos - neg)
