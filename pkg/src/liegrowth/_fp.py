"""Dense linear algebra modulo a prime, on top of numpy integer arrays.

Entries stay below p, so int64 products never overflow for the primes this
package cares about.  Nothing here is exposed publicly; the exact Z/p^s
machinery lives in :mod:`liegrowth.zpmod`.
"""

from __future__ import annotations

import numpy as np


def as_fp(matrix, p: int) -> np.ndarray:
    a = np.asarray(matrix, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a % p


def rref(matrix, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p.

    Returns (nonzero rows, pivot column indices).  Rows are scaled so each
    pivot entry is 1 and pivot columns are cleared above and below.
    """
    m = as_fp(matrix, p).copy()
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        hit = np.nonzero(m[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            m[hit] = (m[hit] - np.outer(m[hit, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(matrix, p: int) -> int:
    _, pivots = rref(matrix, p)
    return len(pivots)


def coords_in_rowspace(rows: np.ndarray, pivots: list[int], vec, p: int):
    """Coordinates of ``vec`` with respect to rref basis ``rows``.

    Returns (coeffs, True) when the vector lies in the row space, otherwise
    (partial coeffs, False).
    """
    v = as_fp(vec, p).ravel().copy()
    coeffs = np.zeros(len(pivots), dtype=np.int64)
    for k, c in enumerate(pivots):
        coeffs[k] = v[c]
        if coeffs[k]:
            v = (v - coeffs[k] * rows[k]) % p
    return coeffs, not np.any(v)


def solve(matrix, target, p: int):
    """One solution x of ``matrix @ x = target`` mod p, or None."""
    m = as_fp(matrix, p)
    t = as_fp(target, p).ravel()
    nrows, ncols = m.shape
    aug = np.concatenate([m, t.reshape(-1, 1)], axis=1)
    rows, pivots = rref(aug, p)
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for k, c in enumerate(pivots):
        x[c] = rows[k, -1]
    return x
