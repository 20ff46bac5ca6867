# SPDX-License-Identifier: MIT
import logging, math
from fractions import Fraction

log = logging.getLogger("hyperbolic_weyl.core")

class HyperbolicWeylError(Exception):
    pass

class UnknownAlgebra(HyperbolicWeylError):
    pass

class TwistUnavailable(HyperbolicWeylError):
    pass

class NotSymmetrizable(HyperbolicWeylError):
    pass

class SingularMatrix(HyperbolicWeylError):
    pass

class SingularB(SingularMatrix):
    pass

class NotFiniteType(HyperbolicWeylError):
    pass

class NotHyperbolic(HyperbolicWeylError):
    pass

class DimensionMismatch(HyperbolicWeylError):
    pass

class DimensionCap(HyperbolicWeylError):
    pass

class InvalidSampleCount(HyperbolicWeylError):
    pass

class DivergentPoint(HyperbolicWeylError):
    pass

class CatalogFormatError(HyperbolicWeylError):
    pass

class ReferenceFormatError(HyperbolicWeylError):
    pass

class ConfigError(HyperbolicWeylError):
    pass

class UnknownAlias(HyperbolicWeylError):
    pass

class ParseError(HyperbolicWeylError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position

class BudgetExhausted(HyperbolicWeylError):
    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate

# Exact matrices are tuples of tuples of Fraction; they are never mutated.

def frac_matrix(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)

def frac_vector(xs):
    return tuple(Fraction(x) for x in xs)

def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))

def is_square(m):
    return all(len(row) == len(m) for row in m)

def transpose(m):
    return tuple(zip(*m)) if m else ()

def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0))
                       for col in bt) for row in a)

def mat_vec(a, v):
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)

def quad_form(a, v):
    return sum((x * y for x, y in zip(v, mat_vec(a, v))), Fraction(0))

def is_symmetric(m):
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))

def permute(m, perm):
    "Simultaneous row/column permutation: result[i][j] = m[perm[i]][perm[j]]."
    return tuple(tuple(m[pi][pj] for pj in perm) for pi in perm)

def format_fraction(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"

def format_matrix(m):
    return [[format_fraction(x) for x in row] for row in m]

def parse_fraction_matrix(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)

def integer_scaled(m):
    "Return (integer rows, L) with m = rows / L."
    scale = 1
    for row in m:
        for x in row:
            scale = math.lcm(scale, Fraction(x).denominator)
    rows = [[int(Fraction(x) * scale) for x in row] for row in m]
    return rows, scale

def determinant(m):
    "Exact determinant by Bareiss fraction-free elimination."
    if not is_square(m):
        raise ValueError("determinant of a non-square matrix")
    n = len(m)
    if n == 0:
        return Fraction(1)
    a, scale = integer_scaled(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j], rem = divmod(num, prev)
                assert rem == 0
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale ** n)

def invert_exact(m, error=SingularMatrix):
    """
    Exact inverse by fraction-free Gauss-Jordan elimination on the
    integer-scaled matrix augmented with the identity.

    Every intermediate entry is a minor of the augmented matrix, so the
    divisions by the previous pivot are exact.
    """
    if not is_square(m):
        raise ValueError("invert_exact needs a square matrix")
    n = len(m)
    ints, scale = integer_scaled(m)
    a = [row + [int(i == j) for j in range(n)] for i, row in enumerate(ints)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    break
            else:
                raise error(f"matrix of size {n} is singular")
        pivot = a[k]
        for i in range(n):
            if i == k:
                continue
            row = a[i]
            f = row[k]
            for j in range(2 * n):
                num = pivot[k] * row[j] - f * pivot[j]
                row[j], rem = divmod(num, prev)
                assert rem == 0
        prev = pivot[k]

    det = a[0][0]
    return tuple(tuple(Fraction(a[i][n + j] * scale, det) for j in range(n))
                 for i in range(n))

def leading_minors(m):
    return [determinant(tuple(row[:k] for row in m[:k])) for k in range(1, len(m) + 1)]

def is_positive_definite(m):
    return is_symmetric(m) and all(d > 0 for d in leading_minors(m))
