"""Dense GF(2) linear algebra on numpy uint8 matrices.

Row operations are XOR; everything here is plain Gaussian elimination.
Complexes in this package stay well under 10^4 generators, so dense
bit-matrices are fine.
"""

from __future__ import annotations

import numpy as np


def as_gf2(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.uint8) & 1
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return A


def row_echelon(M) -> tuple[np.ndarray, list[int]]:
    """Return (echelon form, pivot column indices) of M over GF(2)."""
    R = as_gf2(M).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(R[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] ^= R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M) -> int:
    A = as_gf2(M)
    if A.size == 0:
        return 0
    return len(row_echelon(A)[1])


def kernel_basis(M) -> np.ndarray:
    """Basis (as rows) of the right null space of M over GF(2)."""
    A = as_gf2(M)
    m, n = A.shape
    R, pivots = row_echelon(A)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            if R[r, fc]:
                basis[k, pc] = 1
    return basis


def solve(A, b) -> np.ndarray | None:
    """One solution x of A x = b over GF(2), or None if inconsistent."""
    A = as_gf2(A)
    b = (np.asarray(b, dtype=np.uint8) & 1).reshape(-1)
    m, n = A.shape
    if b.shape[0] != m:
        raise ValueError("shape mismatch")
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, pivots = row_echelon(aug)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.uint8)
    for r, pc in enumerate(pivots):
        x[pc] = R[r, n]
    return x


def in_span(rows, v) -> bool:
    """Is v in the row space of `rows`?"""
    rows = as_gf2(rows)
    if rows.size == 0:
        return not np.any(np.asarray(v, dtype=np.uint8) & 1)
    return solve(rows.T, v) is not None


def span_dim(rows) -> int:
    return rank(rows)
