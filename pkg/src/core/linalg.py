"""
Exact linear algebra over the rationals. Matrices come in as nested sequences of ints/Fractions and
results go out as Fractions; sympy does the elimination in between.
"""
import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

import sympy

log = logging.getLogger(__name__)

Number = Union[int, Fraction]


def _entry(value: Number) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _to_sympy(matrix: Sequence[Sequence[Number]]) -> sympy.Matrix:
    rows = [[_entry(entry) for entry in row] for row in matrix]
    if not rows:
        return sympy.zeros(0, 0)
    return sympy.Matrix(rows)


def _to_fraction(value: sympy.Expr) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def exact_det(matrix: Sequence[Sequence[Number]]) -> Fraction:
    """
    Determinant via Bareiss' fraction-free elimination.
    """
    m = _to_sympy(matrix)
    if m.rows != m.cols:
        raise ValueError(f"Determinant needs a square matrix but got shape {m.shape}.")
    if m.rows == 0:
        return Fraction(1)
    return _to_fraction(m.det(method="bareiss"))


def exact_solve(
    matrix: Sequence[Sequence[Number]], rhs: Sequence[Number]
) -> list[Fraction]:
    """
    The unique solution of ``matrix @ x = rhs``. Raises RuntimeError for a singular matrix.
    """
    m = _to_sympy(matrix)
    b = sympy.Matrix([_entry(entry) for entry in rhs])
    if m.rows != m.cols or m.rows != len(rhs):
        raise ValueError(
            f"Cannot solve a system with matrix shape {m.shape} and {len(rhs)} right-hand sides."
        )
    if m.det(method="bareiss") == 0:
        raise RuntimeError(f"Matrix of shape {m.shape} is singular, cannot solve.")
    solution = m.LUsolve(b)
    return [_to_fraction(entry) for entry in solution]


def exact_inverse(matrix: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    m = _to_sympy(matrix)
    if m.det(method="bareiss") == 0:
        raise RuntimeError(f"Matrix of shape {m.shape} is singular, cannot invert.")
    inverse = m.inv(method="LU")
    return [[_to_fraction(inverse[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def exact_nullspace(
    matrix: Sequence[Sequence[Number]], num_cols: int
) -> list[list[Fraction]]:
    """
    A basis of the right nullspace. ``num_cols`` is needed because a matrix without rows still has columns.
    """
    if not matrix:
        return [[Fraction(int(i == j)) for j in range(num_cols)] for i in range(num_cols)]
    m = _to_sympy(matrix)
    if m.cols != num_cols:
        raise ValueError(f"Expected {num_cols} columns but got {m.cols}.")
    return [[_to_fraction(entry) for entry in vector] for vector in m.nullspace()]


def primitive_integer_vector(vector: Sequence[Number]) -> list[int]:
    """
    Scales a rational vector to integer entries with content 1. The sign of the first nonzero entry is kept.
    """
    fractions = [Fraction(entry) for entry in vector]
    denominator = lcm(*(f.denominator for f in fractions)) if fractions else 1
    integers = [int(f * denominator) for f in fractions]
    content = 0
    for entry in integers:
        content = gcd(content, entry)
    if content == 0:
        return integers
    return [entry // content for entry in integers]


def clear_denominators(vector: Sequence[Number]) -> tuple[list[int], int]:
    """
    Multiplies by the least common multiple c of the denominators, returns the integer vector and c.
    """
    fractions = [Fraction(entry) for entry in vector]
    c = lcm(*(f.denominator for f in fractions)) if fractions else 1
    return [int(f * c) for f in fractions], c
