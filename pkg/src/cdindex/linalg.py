"""Exact linear algebra over the rationals and prime fields.

Matrices are lists of integer rows. Rank uses Bareiss elimination for small
dense inputs and a sparse row-echelon pass for large sparse ones (boundary
matrices of order complexes are mostly zeros). Nothing here touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]

DENSE_LIMIT = 2500  # rows*cols at or below this go through Bareiss


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """``Field()`` is Q; ``Field(p)`` is F_p for an odd prime ``p < 2**31``."""

    p: int = 0

    def __post_init__(self):
        if self.p and (self.p == 2 or self.p >= 2**31 or not _is_prime(self.p)):
            raise FieldError(f"characteristic must be an odd prime below 2^31, got {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "rational", "rationals"):
            return cls()
        if text.startswith("fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError:
                raise FieldError(f"bad prime in field spec {text!r}") from None
        raise FieldError(f"unknown field {text!r}; use 'q' or 'fp:<p>'")


QQ = Field()


# -- rank ------------------------------------------------------------------

def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination with column pivoting."""
    M = [list(r) for r in rows]
    if not M or not M[0]:
        return 0
    m, n = len(M), len(M[0])
    prev = 1
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        for i in range(r + 1, m):
            a = M[i][c]
            row_i, row_r = M[i], M[r]
            for j in range(c + 1, n):
                row_i[j] = (pv * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = pv
        r += 1
        if r == m:
            break
    return r


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    M = [list(r) for r in rows]
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _sparse_rows(rows: Sequence[Sequence[int]], p: int) -> list[dict[int, int]]:
    out = []
    for r in rows:
        d = {}
        for j, v in enumerate(r):
            if p:
                v %= p
            if v:
                d[j] = v
        if d:
            out.append(d)
    return out


class SparseEchelon:
    """Incremental row echelon form over Q (integral rows) or F_p.

    Rows are sparse ``{col: value}`` dicts; :meth:`add` reduces a row against
    the stored pivots and keeps it if something survives.
    """

    def __init__(self, p: int = 0):
        self.p = p
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def copy(self) -> "SparseEchelon":
        out = SparseEchelon(self.p)
        out.pivots = dict(self.pivots)  # stored rows are never mutated
        return out

    def add(self, row: dict[int, int]) -> bool:
        p = self.p
        pivots = self.pivots
        row = {j: v % p for j, v in row.items() if v % p} if p else {j: v for j, v in row.items() if v}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                if p:
                    inv = pow(row[c], -1, p)
                    row = {j: v * inv % p for j, v in row.items()}
                else:
                    g = 0
                    for v in row.values():
                        g = gcd(g, v)
                    if g > 1 or row[c] < 0:
                        g = g if row[c] > 0 else -g
                        row = {j: v // g for j, v in row.items()}
                pivots[c] = row
                return True
            b = row[c]
            if p:
                # pivot rows are monic mod p
                new = dict(row)
                for j, v in prow.items():
                    x = (new.get(j, 0) - b * v) % p
                    if x:
                        new[j] = x
                    else:
                        new.pop(j, None)
            else:
                a = prow[c]
                g = gcd(a, b)
                ma, mb = a // g, b // g
                new = {j: v * ma for j, v in row.items()}
                for j, v in prow.items():
                    x = new.get(j, 0) - mb * v
                    if x:
                        new[j] = x
                    else:
                        new.pop(j, None)
                if new:
                    g = 0
                    for v in new.values():
                        g = gcd(g, v)
                        if g == 1:
                            break
                    if g > 1:
                        new = {j: v // g for j, v in new.items()}
            row = new
        return False


def sparse_rank(rows: list[dict[int, int]], p: int = 0) -> int:
    """Rank of a matrix given as sparse rows ``{col: value}``.

    Over Q (``p == 0``) rows are kept integral and divided by their content
    after each update; over F_p arithmetic is reduced mod ``p``.
    """
    E = SparseEchelon(p)
    for row in sorted(rows, key=len):
        E.add(row)
    return E.rank


def rank(rows: Sequence[Sequence[int]], field: Field = QQ) -> int:
    """Exact rank of an integer matrix over ``field``."""
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    if n == 0:
        return 0
    if field.is_rational and m * n <= DENSE_LIMIT:
        return bareiss_rank(rows)
    return sparse_rank(_sparse_rows(rows, field.p), field.p)


def rank_sparse(rows: list[dict[int, int]], field: Field = QQ) -> int:
    if field.p:
        rows = [{j: v % field.p for j, v in r.items() if v % field.p} for r in rows]
    return sparse_rank([r for r in rows if r], field.p)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col) if a) for col in cols] for row in A]


def is_zero(A: Sequence[Sequence[int]], field: Field = QQ) -> bool:
    if field.p:
        return all(v % field.p == 0 for r in A for v in r)
    return all(v == 0 for r in A for v in r)


# -- solving ---------------------------------------------------------------

def rref(rows: Sequence[Sequence], field: Field = QQ) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with Fraction (or mod p) entries, plus pivot columns."""
    p = field.p
    if p:
        M = [[int(v) % p for v in r] for r in rows]
    else:
        M = [[Fraction(v) for v in r] for r in rows]
    if not M:
        return M, []
    m, n = len(M), len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        if p:
            inv = pow(M[r][c], -1, p)
            M[r] = [v * inv % p for v in M[r]]
        else:
            pv = M[r][c]
            M[r] = [v / pv for v in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                if p:
                    M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
                else:
                    M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def nullspace(rows: Sequence[Sequence[int]], ncols: int | None = None, field: Field = QQ) -> list[list]:
    """Basis of ``{x : A x = 0}``; one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        one = 1 if field.p else Fraction(1)
        return [[one if j == i else 0 * one for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(rows, field)
    free = [j for j in range(ncols) if j not in pivots]
    zero = 0 if field.p else Fraction(0)
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = 1 if field.p else Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i][f]) % field.p if field.p else -R[i][f]
        basis.append(v)
    return basis


class Inconsistent(ValueError):
    pass


def solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """Solve ``A x = b`` over Q for a matrix of full column rank."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(aug)
    if n in pivots:
        raise Inconsistent("system has no solution")
    if len(pivots) < n:
        raise ValueError("solution is not unique")
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = R[i][n]
    return x
