"""Exact integer linear algebra: Smith normal form and abelian group invariants.

Matrices are lists of rows of Python ints, so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

IntMatrix = list[list[int]]


def _as_matrix(M) -> IntMatrix:
    return [[int(x) for x in row] for row in M]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class InvariantFactors:
    """``Z/d_1 + ... + Z/d_r + Z^free_rank`` with ``d_1 | d_2 | ... | d_r`` and ``d_i >= 2``."""

    factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        for d in self.factors:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {d}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {self.factors}")

    def order(self) -> int | None:
        """Group order, or None for an infinite group."""
        return None if self.free_rank else prod(self.factors)

    def is_trivial(self) -> bool:
        return not self.factors and not self.free_rank

    def as_list(self) -> list[int]:
        return list(self.factors) + [0] * self.free_rank

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "1"


def _pivot(A: IntMatrix, t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, len(A)):
        row = A[i]
        for j in range(t, len(row)):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else (best[1], best[2])


def _diagonalize(A: IntMatrix, U: IntMatrix | None, V: IntMatrix | None) -> None:
    """In-place Smith reduction; row ops mirrored into U, column ops into V."""
    m = len(A)
    n = len(A[0]) if m else 0

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if V is not None:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row dst -= q * row src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in A:
            row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            piv = _pivot(A, t)
            if piv is None:
                return
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]


def smith_normal_form(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``U * M * V == D``, U and V unimodular.

    D is diagonal with nonnegative entries forming a divisibility chain.  The
    pivot is always the nonzero entry of least absolute value in the active
    submatrix, ties broken by (row, column) order.
    """
    A = _as_matrix(M)
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(r) != n for r in A):
        raise ValueError("matrix is not rectangular")
    U, V = identity(m), identity(n)
    _diagonalize(A, U, V)
    return A, U, V


def smith_diagonal(M) -> list[int]:
    """Diagonal of the Smith form, without transformation matrices."""
    A = _as_matrix(M)
    if not A:
        return []
    _diagonalize(A, None, None)
    return [A[i][i] for i in range(min(len(A), len(A[0])))]


class Lattice:
    """Integer row lattice kept in echelon form, built by inserting vectors.

    Used to shrink tall relation matrices before the Smith reduction and to
    test membership.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict[int, list[int]] = {}

    def _lead(self, v: list[int]) -> int:
        for j, x in enumerate(v):
            if x:
                return j
        return -1

    def add(self, v: Sequence[int]) -> None:
        v = [int(x) for x in v]
        if len(v) != self.dim:
            raise ValueError(f"vector has {len(v)} entries, expected {self.dim}")
        while True:
            c = self._lead(v)
            if c < 0:
                return
            b = self.rows.get(c)
            if b is None:
                self.rows[c] = v if v[c] > 0 else [-x for x in v]
                return
            if v[c] % b[c] == 0:
                q = v[c] // b[c]
                v = [x - q * y for x, y in zip(v, b)]
                continue
            g, x, y = _xgcd(b[c], v[c])
            new_b = [x * bb + y * vv for bb, vv in zip(b, v)]
            bc, vc = b[c] // g, v[c] // g
            v = [vc * bb - bc * vv for bb, vv in zip(b, v)]
            self.rows[c] = new_b
            self._reduce_above(c)

    def _reduce_above(self, c: int) -> None:
        # keep entries bounded: reduce the pivot row's tail by later pivots
        row = self.rows[c]
        for k in sorted(self.rows):
            if k <= c:
                continue
            piv = self.rows[k]
            if row[k]:
                q = row[k] // piv[k]
                if q:
                    row = [a - q * b for a, b in zip(row, piv)]
        self.rows[c] = row

    def contains(self, v: Sequence[int]) -> bool:
        v = [int(x) for x in v]
        while True:
            c = self._lead(v)
            if c < 0:
                return True
            b = self.rows.get(c)
            if b is None or v[c] % b[c]:
                return False
            q = v[c] // b[c]
            v = [x - q * y for x, y in zip(v, b)]

    def basis(self) -> IntMatrix:
        return [self.rows[c] for c in sorted(self.rows)]

    def rank(self) -> int:
        return len(self.rows)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def invariants_from_relations(n: int, relations) -> InvariantFactors:
    """Invariant factors of ``Z^n`` modulo the row span of ``relations``."""
    lat = Lattice(n)
    for row in relations:
        if len(row) != n:
            raise ValueError(f"relation has {len(row)} entries, expected {n}")
        lat.add(row)
    diag = smith_diagonal(lat.basis()) if lat.rank() else []
    nonzero = [abs(d) for d in diag if d]
    return InvariantFactors(tuple(d for d in nonzero if d != 1), n - len(nonzero))


def minors_gcd(M: IntMatrix, k: int) -> int:
    """gcd of all k x k minors (brute force; small matrices only)."""
    from itertools import combinations

    m = len(M)
    n = len(M[0]) if m else 0
    g = 0
    for rows in combinations(range(m), k):
        for cols in combinations(range(n), k):
            g = gcd(g, determinant([[M[i][j] for j in cols] for i in rows]))
    return g
