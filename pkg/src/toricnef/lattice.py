"""Exact integer and rational linear algebra.

Vectors are plain tuples of ``int`` (lattice points of N or M) or of
``fractions.Fraction`` (points of the rational extensions); matrices are
tuples of row tuples.  Nothing here ever touches floating point.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple

from .errors import DimensionMismatch, NoSolution, Underdetermined

LatticeVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]
IntMatrix = Tuple[LatticeVector, ...]

# When set, solve_exact substitutes every solution back into the system.
SELF_CHECK = bool(os.environ.get("TORICNEF_SELF_CHECK"))


def vector(coords) -> LatticeVector:
    out = tuple(int(c) for c in coords)
    if not out:
        raise DimensionMismatch("vectors must have length >= 1")
    return out


def rational_vector(coords) -> RationalVector:
    return tuple(Fraction(c) for c in coords)


def matrix(rows) -> IntMatrix:
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    if rows and len({len(r) for r in rows}) != 1:
        raise DimensionMismatch("matrix rows have unequal lengths")
    return rows


def pairing(m: Sequence, u: Sequence):
    """The pairing <m, u> = sum m_i u_i between M and N."""
    if len(m) != len(u):
        raise DimensionMismatch(f"cannot pair vectors of lengths {len(m)} and {len(u)}")
    return sum(a * b for a, b in zip(m, u))


def add(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch("length mismatch")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch("length mismatch")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence):
    return tuple(c * a for a in u)


def neg(u: Sequence):
    return tuple(-a for a in u)


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def primitive(v: Sequence) -> LatticeVector:
    """Smallest lattice vector on the ray through ``v``.

    Accepts rational input; the result is the positive multiple of ``v``
    whose entries are coprime integers.
    """
    fr = [Fraction(x) for x in v]
    if not any(fr):
        raise ValueError("zero vector has no primitive generator")
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def transpose(A: Sequence[Sequence]) -> tuple:
    return tuple(zip(*A))


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = transpose(B)
    return tuple(tuple(pairing(row, col) for col in Bt) for row in A)


def mat_vec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(pairing(row, x) for row in A)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def hermite_normal_form(A: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H = U A``.  ``H`` is in
    row echelon form, every pivot is positive, entries above a pivot lie
    in ``[0, pivot)`` and zero rows sit at the bottom.  The rank of ``A`` is
    the number of nonzero rows of ``H``.
    """
    H = [list(map(int, row)) for row in A]
    if not H:
        raise ValueError("hermite_normal_form needs a nonempty matrix")
    m, n = len(H), len(H[0])
    U = [list(row) for row in identity(m)]

    def combine(i, j, q):
        # row_i -= q * row_j
        if q:
            H[i] = [a - q * b for a, b in zip(H[i], H[j])]
            U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    r = 0
    for col in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if H[i][col]]
            if not rows:
                break
            p = min(rows, key=lambda i: abs(H[i][col]))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][col]:
                    combine(i, r, H[i][col] // H[r][col])
                    clean = clean and H[i][col] == 0
            if clean:
                break
        if not H[r][col]:
            continue
        if H[r][col] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            combine(i, r, H[i][col] // H[r][col])
        r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, U))


def _bareiss(A: Sequence[Sequence]) -> Tuple[list, int]:
    """Fraction-free elimination; returns (echelon rows, rank)."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return M, 0
    m, n = len(M), len(M[0])
    # Clear denominators row by row so the elimination stays in Z.
    for i, row in enumerate(M):
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        M[i] = [int(x * lcm) for x in row]
    prev = 1
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, m):
            M[i] = [(M[r][col] * M[i][j] - M[i][col] * M[r][j]) // prev for j in range(n)]
        prev = M[r][col]
        r += 1
        if r == m:
            break
    return M, r


def rank(A: Sequence[Sequence]) -> int:
    """Rank over Q."""
    if not A:
        return 0
    return _bareiss(A)[1]


def det(A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    if any(len(row) != n for row in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _rref(A, b=None):
    """Gauss-Jordan over Q.  Returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    if b is not None:
        for row, bi in zip(M, b):
            row.append(Fraction(bi))
    m = len(M)
    n = len(M[0]) if M else 0
    ncols = n - (1 if b is not None else 0)
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return M, pivots


def solve_exact(A: Sequence[Sequence], b: Sequence) -> RationalVector:
    """Unique rational solution ``m`` of ``A m = b``.

    ``A`` may be overdetermined as long as it is consistent.  Raises
    ``NoSolution`` for inconsistent systems and ``Underdetermined`` when
    the solution is not unique.
    """
    if not A:
        raise Underdetermined("empty system")
    if len(A) != len(b):
        raise DimensionMismatch(f"{len(A)} equations but {len(b)} right-hand sides")
    n = len(A[0])
    M, pivots = _rref(A, b)
    for row in M[len(pivots):]:
        if row[n]:
            raise NoSolution("inconsistent linear system")
    if len(pivots) < n:
        raise Underdetermined(f"solution space has dimension {n - len(pivots)}")
    x = tuple(M[i][n] for i in range(n))
    if SELF_CHECK:
        assert mat_vec(A, x) == tuple(Fraction(v) for v in b), "solve_exact substitution failed"
    return x


def kernel(A: Sequence[Sequence]) -> Tuple[LatticeVector, ...]:
    """Basis of the rational null space {x : A x = 0}, as primitive integer vectors."""
    n = len(A[0])
    M, pivots = _rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -M[i][f]
        basis.append(primitive(x))
    return tuple(basis)


def integral_solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> LatticeVector:
    """Like :func:`solve_exact` but insists on an integral solution."""
    x = solve_exact(A, b)
    if not is_integral(x):
        raise NoSolution(f"no integral solution (rational solution {[str(c) for c in x]})")
    return tuple(int(c) for c in x)
