"""Exact dense linear algebra on lists of scalar payloads.

``F`` is a scalar ring descriptor (residues or rationals) supplying payload
arithmetic. Gauss-Jordan routines need ``F`` to be a field; the
determinant/adjugate pair is division-free and works over any commutative
scalar ring.
"""

from __future__ import annotations

from functools import lru_cache


def identity(F, n: int) -> list[list]:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def matmul(F, A, B) -> list[list]:
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = F.zero
            for l in range(m):
                acc = F.add(acc, F.mul(A[i][l], B[l][j]))
            row.append(acc)
        out.append(row)
    return out


def transpose(A) -> list[list]:
    return [list(col) for col in zip(*A)]


def rref(F, A):
    """Reduced row echelon form with the transform.

    Returns ``(R, E, pivots)`` where ``R = E A`` is in reduced row echelon
    form, ``E`` is invertible and ``pivots`` lists the pivot columns.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    R = [list(r) for r in A]
    E = identity(F, m)
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        pr = next((r for r in range(row, m) if R[r][col] != F.zero), None)
        if pr is None:
            continue
        R[row], R[pr] = R[pr], R[row]
        E[row], E[pr] = E[pr], E[row]
        inv = F.inv_payload(R[row][col])
        R[row] = [F.mul(inv, v) for v in R[row]]
        E[row] = [F.mul(inv, v) for v in E[row]]
        for r in range(m):
            if r != row and R[r][col] != F.zero:
                c = R[r][col]
                R[r] = [F.sub(v, F.mul(c, w)) for v, w in zip(R[r], R[row])]
                E[r] = [F.sub(v, F.mul(c, w)) for v, w in zip(E[r], E[row])]
        pivots.append(col)
        row += 1
    return R, E, pivots


def rank(F, A) -> int:
    return len(rref(F, A)[2])


def inverse(F, A):
    """Inverse of a square matrix over a field, or ``None`` if singular."""
    n = len(A)
    _, E, pivots = rref(F, A)
    if len(pivots) < n:
        return None
    return E


def inner_inverse(F, A):
    """Canonical inner inverse from the rank factorization.

    With ``E A = R`` in reduced echelon form and pivot columns
    ``j_1..j_r``, ``A = A[:, pivots] R[:r]`` and ``X = S E`` where ``S``
    routes row ``i`` of ``E`` to row ``j_i``; then ``A X A = A``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    _, E, pivots = rref(F, A)
    X = [[F.zero] * m for _ in range(n)]
    for i, j in enumerate(pivots):
        X[j] = list(E[i])
    return X


def solve_right(F, B, C):
    """Canonical ``X`` with ``B X = C`` (free variables zero), or ``None``."""
    n = len(B[0])
    _, E, pivots = rref(F, B)
    EC = matmul(F, E, C)
    r = len(pivots)
    if any(v != F.zero for row in EC[r:] for v in row):
        return None
    p = len(C[0])
    X = [[F.zero] * p for _ in range(n)]
    for i, j in enumerate(pivots):
        X[j] = list(EC[i])
    return X


def solve_left(F, B, C):
    """Canonical ``X`` with ``X B = C``, via the transposed system."""
    Y = solve_right(F, transpose(B), transpose(C))
    return None if Y is None else transpose(Y)


def determinant(F, A):
    """Division-free Laplace expansion; fine for the small sizes used here."""
    n = len(A)
    rows = tuple(tuple(r) for r in A)

    @lru_cache(maxsize=None)
    def minor(r0: int, cols: tuple) -> object:
        if r0 == n:
            return F.one
        acc = F.zero
        for pos, c in enumerate(cols):
            v = rows[r0][c]
            if v == F.zero:
                continue
            term = F.mul(v, minor(r0 + 1, cols[:pos] + cols[pos + 1:]))
            acc = F.add(acc, term) if pos % 2 == 0 else F.sub(acc, term)
        return acc

    return minor(0, tuple(range(n)))


def adjugate(F, A):
    n = len(A)
    if n == 1:
        return [[F.one]]
    adj = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [row[:j] + row[j + 1:] for k, row in enumerate(A) if k != i]
            c = determinant(F, sub)
            adj[j][i] = c if (i + j) % 2 == 0 else F.neg(c)
    return adj


def adjugate_inverse(F, A):
    """Inverse over a commutative ring: ``det(A)`` must be a unit."""
    dinv = F.inv_payload(determinant(F, A))
    if dinv is None:
        return None
    return [[F.mul(dinv, v) for v in row] for row in adjugate(F, A)]
