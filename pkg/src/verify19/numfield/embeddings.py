"""Numerical complex embeddings, the T2 form, and short-vector enumeration.

Floating point is used only to *find* candidates; every consumer checks
candidates in exact arithmetic.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .field import FieldElement, NumberField


@lru_cache(maxsize=None)
def _roots(nf: NumberField) -> np.ndarray:
    coeffs = [float(c) for c in reversed(nf.poly.coeffs)]
    roots = np.roots(coeffs) if nf.degree > 1 else np.array([-float(nf.poly[0])], dtype=complex)
    roots = np.asarray(roots, dtype=complex)
    # polish with a few Newton steps in extended precision
    f = np.poly1d(coeffs)
    df = f.deriv()
    for _ in range(3):
        d = df(roots)
        mask = np.abs(d) > 0
        roots[mask] = roots[mask] - f(roots[mask]) / d[mask]
    real = sorted((r.real for r in roots if abs(r.imag) < 1e-9), key=float)
    upper = sorted((r for r in roots if r.imag >= 1e-9), key=lambda z: (z.real, z.imag))
    ordered = [complex(r, 0.0) for r in real] + upper + [z.conjugate() for z in upper]
    return np.array(ordered, dtype=complex)


def conjugate_roots(nf: NumberField) -> np.ndarray:
    """All n roots of the defining polynomial: real ones, then upper, then lower."""
    return _roots(nf)


@lru_cache(maxsize=None)
def embedding_matrix(nf: NumberField) -> np.ndarray:
    """E[i, j] = sigma_j(b_i) for integral basis element b_i."""
    roots = _roots(nf)
    n = nf.degree
    powers = np.vander(roots, n, increasing=True)  # powers[j, k] = root_j^k
    basis = np.array([[float(c) for c in row] for row in nf.basis])
    return basis @ powers.T


def embed(x: FieldElement) -> np.ndarray:
    coords = np.array([float(c) for c in x.coords])
    return coords @ embedding_matrix(x.field)


def t2_gram(nf: NumberField, rows: Sequence[Sequence]) -> np.ndarray:
    """Gram matrix of the T2 form on the lattice spanned by ``rows`` (basis coords)."""
    e = np.array([[float(c) for c in r] for r in rows]) @ embedding_matrix(nf)
    return np.real(e @ e.conj().T)


def lll_reduce(rows: list[list[int]], gram_fn, delta: float = 0.99) -> list[list[int]]:
    """LLL on integer coordinate rows with respect to a positive form.

    ``gram_fn(rows)`` returns the Gram matrix of the current rows.
    """
    b = [list(r) for r in rows]
    n = len(b)
    k = 1
    while k < n:
        g = gram_fn(b)
        mu, bstar = _gso(g)
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                g = gram_fn(b)
                mu, bstar = _gso(g)
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            k = max(k - 1, 1)
    return b


def _gso(g: np.ndarray):
    n = g.shape[0]
    mu = np.zeros((n, n))
    bstar = np.zeros(n)
    for i in range(n):
        for j in range(i):
            mu[i][j] = (g[i][j] - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))) / bstar[j]
        bstar[i] = g[i][i] - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
    return mu, bstar


def fincke_pohst(gram: np.ndarray, bound: float, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nonzero integer vectors x (up to sign) with x G x^T <= bound.

    Yields at most ``limit`` vectors when given; the caller can detect
    truncation by counting.
    """
    n = gram.shape[0]
    q = np.array(gram, dtype=float)
    # quadratic-form decomposition: Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    diag = [q[i][i] for i in range(n)]
    bound = bound * (1 + 1e-9) + 1e-9
    x = [0] * n
    count = 0

    def rec(i: int, remaining: float):
        nonlocal count
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        r = (max(remaining, 0.0) / diag[i]) ** 0.5
        lo, hi = int(np.ceil(c - r - 1e-12)), int(np.floor(c + r + 1e-12))
        for v in range(lo, hi + 1):
            x[i] = v
            rest = remaining - diag[i] * (v - c) ** 2
            if rest < -1e-9:
                continue
            if i == 0:
                if any(x):
                    yield tuple(x)
            else:
                yield from rec(i - 1, rest)
        x[i] = 0

    for vec in rec(n - 1, bound):
        # keep one of +-x: first nonzero coordinate from the top is positive
        lead = next(v for v in reversed(vec) if v)
        if lead < 0:
            continue
        yield vec
        count += 1
        if limit is not None and count >= limit:
            return
