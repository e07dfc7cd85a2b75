"""Exact linear algebra over a prime field, on int64 numpy arrays.

All matrices are kept reduced mod p.  Elimination uses the first nonzero
pivot in each column, so echelon forms and the bases derived from them are
reproducible across runs.  With p < 2^16 every intermediate product fits
comfortably in int64.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or b.shape[1] == 0 or a.shape[0] == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = mat.copy() % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        hit = np.nonzero(m[:, c])[0]
        hit = hit[hit != r]
        if len(hit):
            m[hit] = (m[hit] - np.outer(m[hit, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(rref(mat, p)[1])


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of the kernel, one vector per row, in echelon order."""
    rows, cols = mat.shape
    if cols == 0:
        return zeros(0, 0)
    if rows == 0:
        return identity(cols)
    red, pivots = rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(len(free), cols)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-red[r, fc]) % p
    return basis


def row_space(mat: np.ndarray, p: int) -> np.ndarray:
    """Echelonized basis of the row span (zero rows dropped)."""
    if mat.size == 0:
        return zeros(0, mat.shape[1])
    red, pivots = rref(mat, p)
    return red[: len(pivots)]


def in_row_space(vec: np.ndarray, basis: np.ndarray, p: int) -> bool:
    """Membership of a vector in the span of (already arbitrary) basis rows."""
    if not vec.any():
        return True
    if basis.shape[0] == 0:
        return False
    stacked = np.vstack([basis, vec.reshape(1, -1)])
    return rank(stacked, p) == rank(basis, p)


def solve(mat: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of mat @ x = rhs, or None if inconsistent."""
    rows, cols = mat.shape
    aug = np.hstack([mat % p, rhs.reshape(rows, 1) % p])
    red, pivots = rref(aug, p)
    if cols in pivots:
        return None
    x = zeros(cols, 1)[:, 0]
    for r, c in enumerate(pivots):
        x[c] = red[r, cols]
    return x


def inverse(mat: np.ndarray, p: int) -> np.ndarray | None:
    n = mat.shape[0]
    if mat.shape[1] != n:
        raise ValueError("inverse needs a square matrix")
    if n == 0:
        return zeros(0, 0)
    red, pivots = rref(np.hstack([mat % p, identity(n)]), p)
    if len(pivots) != n or pivots != list(range(n)):
        return None
    return red[:, n:]


def random_matrix(rng, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)
