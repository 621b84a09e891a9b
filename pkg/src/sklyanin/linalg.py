"""Exact dense linear algebra over Q or Q(zeta_m)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactfield import CycNum

Matrix = list[list]


def _simp(v):
    if isinstance(v, CycNum) and v.is_rational():
        return v.to_fraction()
    if isinstance(v, int):
        return Fraction(v)
    return v


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [[_simp(x) for x in r] for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][col]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = 1 / M[r][col]
        M[r] = [_simp(x * inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [_simp(x - f * y) for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of {v : M v = 0}, one vector per free column with a 1 there."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols or 0)]
    ncols = len(rows[0]) if ncols is None else ncols
    R, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = _simp(-R[i][f])
        out.append(v)
    return out


def solve(A: Sequence[Sequence], b: Sequence) -> tuple[list | None, list[list]]:
    """A particular solution of A x = b (None if inconsistent) and a kernel basis."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bb] for r, bb in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None, nullspace(A, n) if A else []
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x, nullspace(A, n) if A else []


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return [[_simp(sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)))
             for j in range(len(B[0]))] for i in range(len(A))]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[_simp(x + y) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, s) -> Matrix:
    return [[_simp(x * s) for x in r] for r in A]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def trace(A: Matrix):
    return _simp(sum((A[i][i] for i in range(len(A))), Fraction(0)))


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def is_scalar_matrix(A: Matrix):
    """Return the scalar if A = s*I, else None."""
    n = len(A)
    s = A[0][0] if n else Fraction(0)
    for i in range(n):
        for j in range(n):
            if (A[i][j] != s) if i == j else A[i][j]:
                return None
    return _simp(s)


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return all(x == y for ra, rb in zip(A, B) for x, y in zip(ra, rb))
