"""Small exact linear algebra: rational matrices, integer normal forms, F_p.

Matrices are lists of rows.  Sizes in this project never exceed a few
dozen rows, so the straightforward cubic algorithms are adequate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list  # list[list]


def identity(n: int, one=1) -> Matrix:
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence, m: Matrix) -> list:
    """Row vector times matrix."""
    n = len(m[0]) if m else 0
    out = [0] * n
    for vi, row in zip(v, m):
        if vi:
            for j, x in enumerate(row):
                out[j] += vi * x
    return out


def det(m: Matrix) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        pv = a[c][c]
        result *= pv
        for r in range(c + 1, n):
            f = a[r][c] / pv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return result


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def rank_q(m: Matrix) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    rank = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, len(a)):
            f = a[r][c] / a[rank][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


# -- integer lattices ---------------------------------------------------

def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row Hermite normal form of the Z-span of ``rows``.

    Returns the nonzero rows: upper triangular (row i has its pivot in a
    strictly later column than row i-1), positive pivots, entries above a
    pivot reduced into [0, pivot).
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out: Matrix = []
    r = 0
    for c in range(ncols):
        # gcd-combine column c over rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i_min] = a[i_min], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            r += 1
        a = a[:r] + [row for row in a[r:] if any(row)]
    a = a[:r]
    # reduce entries above pivots
    for i in range(len(a)):
        pc = next(c for c in range(ncols) if a[i][c])
        for k in range(i):
            q = a[k][pc] // a[i][pc]
            if q:
                a[k] = [x - q * y for x, y in zip(a[k], a[i])]
    out = a
    return out


def smith_normal_form(rel: Sequence[Sequence[int]], k: int) -> tuple[list[int], Matrix]:
    """Diagonalize the relation matrix ``rel`` (rows are relations among k
    generators).

    Returns ``(diag, V)`` with ``V`` unimodular k x k such that the row span
    of ``rel @ V`` equals the row span of diag(d_1, ..., d_k) (zeros allowed
    for free parts).  A coordinate vector x in the old generators maps to
    x @ V in the new ones.
    """
    a = [list(map(int, r)) for r in rel if any(r)]
    v = identity(k)
    m = len(a)
    t = 0
    while t < min(m, k):
        # find a nonzero pivot in the remaining block with minimal |value|
        cand = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, k) if a[i][j]]
        if not cand:
            break
        _, i, j = min(cand)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        for row in v:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            piv = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // piv
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, k):
                if a[t][j]:
                    q = a[t][j] // piv
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        changed = True
            if not changed:
                # divisibility: every remaining entry must be divisible by piv
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, k) if a[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                i, _ = bad
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                continue
            # move the smallest nonzero entry of row/col t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, k) if a[t][j]]
            _, i, j = min(cand)
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
                for row in v:
                    row[t], row[j] = row[j], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        t += 1
    diag = [abs(a[i][i]) if i < m else 0 for i in range(k)]
    return diag, v


# -- F_p linear algebra --------------------------------------------------

def rref_mod(rows: Sequence[Sequence[int]], p: int) -> tuple[Matrix, list[int]]:
    a = [[x % p for x in r] for r in rows]
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace_mod(m: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> Matrix:
    """Basis of {x : m x = 0} over F_p (x as column vectors, returned as rows)."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref_mod(m, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def rank_mod(m: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod(m, p)[0]) if m else 0
