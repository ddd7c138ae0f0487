# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Exact linear algebra over the integers, the rationals and the library's base fields.

Every routine here works on plain lists of field elements together with an object
exposing the field operations (`zero`, `one`, `add`, `sub`, `mul`, `inv`, `is_zero`),
so the same elimination code serves Q, F_p, Kummer fields and rational function fields.
"""
import logging
from fractions import Fraction
from math import lcm
from typing import Any, List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

# The unique library identifier, never change it
LIBID = "b2c4d6e8f0a14c3e9d7b5a3c1e2f4a6b"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


class RationalOps:
    """Field operations on `Fraction` values."""

    @staticmethod
    def zero() -> Fraction:
        """Additive identity."""
        return Fraction(0)

    @staticmethod
    def one() -> Fraction:
        """Multiplicative identity."""
        return Fraction(1)

    @staticmethod
    def add(a: Fraction, b: Fraction) -> Fraction:
        """Sum."""
        return a + b

    @staticmethod
    def sub(a: Fraction, b: Fraction) -> Fraction:
        """Difference."""
        return a - b

    @staticmethod
    def mul(a: Fraction, b: Fraction) -> Fraction:
        """Product."""
        return a * b

    @staticmethod
    def neg(a: Fraction) -> Fraction:
        """Additive inverse."""
        return -a

    @staticmethod
    def inv(a: Fraction) -> Fraction:
        """Multiplicative inverse."""
        return 1 / Fraction(a)

    @staticmethod
    def is_zero(a: Fraction) -> bool:
        """Whether a is zero."""
        return a == 0


RATIONAL_OPS = RationalOps()


def to_fraction(value: Any) -> Fraction:
    """Convert ints, strings like "p/q" and Fractions into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def common_denominator(rows: Sequence[Sequence[Fraction]]) -> int:
    """Least common multiple of all the denominators of a rational matrix."""
    denominator = 1
    for row in rows:
        for entry in row:
            denominator = lcm(denominator, Fraction(entry).denominator)
    return denominator


def hermite_rows(rows: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Row-style Hermite reduction of an integer matrix.

    Returns (H, U) with U unimodular and U * A = H, H in row echelon form with positive
    pivots. The rows of U whose H row is zero form a basis of the integer left kernel.
    """
    h = [list(map(int, row)) for row in rows]
    m = len(h)
    n = len(h[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]

    def combine(target: int, source: int, factor: int) -> None:
        h[target] = [x - factor * y for x, y in zip(h[target], h[source])]
        u[target] = [x - factor * y for x, y in zip(u[target], u[source])]

    row = 0
    for col in range(n):
        if row >= m:
            break

        found = False
        while True:
            nonzero = [r for r in range(row, m) if h[r][col] != 0]
            if not nonzero:
                break

            found = True
            pivot = min(nonzero, key=lambda r: abs(h[r][col]))
            h[row], h[pivot] = h[pivot], h[row]
            u[row], u[pivot] = u[pivot], u[row]

            reduced = True
            for r in range(row + 1, m):
                if h[r][col] != 0:
                    combine(r, row, h[r][col] // h[row][col])
                    reduced = reduced and h[r][col] == 0
            if reduced:
                break

        if not found:
            continue

        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]

        for r in range(row):
            combine(r, row, h[r][col] // h[row][col])

        row += 1

    return h, u


def integer_left_kernel(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis of {y in Z^m : y * A = 0} for an integer matrix A with m rows."""
    h, u = hermite_rows(rows)
    return [u[i] for i, row in enumerate(h) if not any(row)]


def integer_row_basis(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis of the integer row lattice spanned by the rows of A."""
    h, _ = hermite_rows(rows)
    return [row for row in h if any(row)]


def smith_invariants(rows: Sequence[Sequence[int]], columns: int) -> List[int]:
    """Invariant factors (different from 1) of Z^columns / row lattice; 0 marks a free factor."""
    if not rows:
        return [0] * columns

    snf = smith_normal_form(Matrix([list(map(int, row)) for row in rows]), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    rank = sum(1 for d in diagonal if d != 0)
    return [d for d in diagonal if d not in (0, 1)] + [0] * (columns - rank)


def row_reduce(rows: Sequence[Sequence[Any]], ops: Any) -> Tuple[List[List[Any]], List[int]]:
    """Reduced row echelon form over a field, with the list of pivot columns."""
    m = [list(row) for row in rows]
    ncols = len(m[0]) if m else 0
    pivots: List[int] = []

    r = 0
    for c in range(ncols):
        if r == len(m):
            break

        p = next((i for i in range(r, len(m)) if not ops.is_zero(m[i][c])), None)
        if p is None:
            continue

        m[r], m[p] = m[p], m[r]
        inverse = ops.inv(m[r][c])
        m[r] = [ops.mul(inverse, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not ops.is_zero(m[i][c]):
                factor = m[i][c]
                m[i] = [ops.sub(x, ops.mul(factor, y)) for x, y in zip(m[i], m[r])]

        pivots.append(c)
        r += 1

    return m, pivots


def rank(rows: Sequence[Sequence[Any]], ops: Any) -> int:
    """Rank of a matrix over a field."""
    return len(row_reduce(rows, ops)[1])


def determinant(rows: Sequence[Sequence[Any]], ops: Any) -> Any:
    """Determinant of a square matrix over a field, by Gaussian elimination."""
    m = [list(row) for row in rows]
    n = len(m)
    det = ops.one()

    for c in range(n):
        p = next((i for i in range(c, n) if not ops.is_zero(m[i][c])), None)
        if p is None:
            return ops.zero()

        if p != c:
            m[c], m[p] = m[p], m[c]
            det = ops.neg(det)

        det = ops.mul(det, m[c][c])
        inverse = ops.inv(m[c][c])
        for i in range(c + 1, n):
            if not ops.is_zero(m[i][c]):
                factor = ops.mul(m[i][c], inverse)
                m[i] = [ops.sub(x, ops.mul(factor, y)) for x, y in zip(m[i], m[c])]

    return det


def nullspace(rows: Sequence[Sequence[Any]], ncols: int, ops: Any) -> List[List[Any]]:
    """Basis of the right kernel {x : A x = 0} over a field."""
    if not rows:
        return [[ops.one() if i == j else ops.zero() for i in range(ncols)] for j in range(ncols)]

    reduced, pivots = row_reduce(rows, ops)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vector = [ops.zero() for _ in range(ncols)]
        vector[free] = ops.one()
        for row_index, pivot in enumerate(pivots):
            vector[pivot] = ops.neg(reduced[row_index][free])
        basis.append(vector)

    return basis


def transpose(rows: Sequence[Sequence[Any]]) -> List[List[Any]]:
    """Transpose of a rectangular matrix."""
    return [list(column) for column in zip(*rows)]


def solve_combination(
    generators: Sequence[Sequence[Any]], target: Sequence[Any], ops: Any
) -> Optional[List[Any]]:
    """Coefficients c with sum(c_i * generators_i) = target, or None when inconsistent.

    Free variables are set to zero, so the answer is unique for independent generators.
    """
    k = len(generators)
    augmented = [
        [generators[i][row] for i in range(k)] + [target[row]] for row in range(len(target))
    ]
    if not augmented:
        return [ops.zero() for _ in range(k)]

    reduced, pivots = row_reduce(augmented, ops)
    if k in pivots:
        return None

    solution = [ops.zero() for _ in range(k)]
    for row_index, pivot in enumerate(pivots):
        solution[pivot] = reduced[row_index][k]
    return solution
