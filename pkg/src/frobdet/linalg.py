"""Dense exact linear algebra mod p on int64 numpy arrays.

Pivoting always picks the first usable row, so every routine is
deterministic.  Entries stay in [0, p); with p < 2^16 the intermediate
products fit comfortably in int64.
"""

from __future__ import annotations

import numpy as np


def as_mod_array(a, p: int) -> np.ndarray:
    arr = np.array(a, dtype=np.int64) % p
    if arr.ndim != 2:
        raise ValueError("expected a 2-d array")
    return arr


def rref(a, p: int):
    """Reduced row echelon form.  Returns (R, pivot column list)."""
    a = as_mod_array(a, p).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a, p: int) -> int:
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Columns form the canonical basis of the right kernel of a."""
    a = as_mod_array(a, p)
    rows, cols = a.shape
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for idx, fc in enumerate(free):
        basis[fc, idx] = 1
        for row, pc in enumerate(pivots):
            basis[pc, idx] = (-int(r[row, fc])) % p
    return basis


def solve_in_span(basis: np.ndarray, vecs: np.ndarray, p: int) -> np.ndarray:
    """Coordinates of the columns of vecs in the span of the (independent)
    columns of basis.  Raises ValueError if any column falls outside."""
    basis = as_mod_array(basis, p)
    vecs = as_mod_array(vecs, p)
    ncols = basis.shape[1]
    aug = np.hstack([basis, vecs])
    r, pivots = rref(aug, p)
    if any(c >= ncols for c in pivots):
        raise ValueError("vector outside the span of the basis")
    coords = np.zeros((ncols, vecs.shape[1]), dtype=np.int64)
    for row, pc in enumerate(pivots):
        coords[pc] = r[row, ncols:]
    return coords


def det_mod(a, p: int) -> int:
    """Determinant mod p by elimination with row swaps."""
    a = as_mod_array(a, p).copy()
    n, m = a.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    det = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            det = (-det) % p
        piv = int(a[c, c])
        det = (det * piv) % p
        inv = pow(piv, p - 2, p)
        below = a[c + 1 :, c].copy()
        hit = np.flatnonzero(below)
        if hit.size:
            factors = (below[hit] * inv) % p
            a[c + 1 + hit] = (a[c + 1 + hit] - np.outer(factors, a[c])) % p
    return det % p


def invert_mod(a, p: int) -> np.ndarray:
    a = as_mod_array(a, p)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    r, pivots = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


# ---------------------------------------------------------------------------
# Small dense routines over an arbitrary FiniteField (used for extension
# fields, where numpy does not apply).  Matrices are lists of lists of raw
# field representations.


def ext_det(field, mat):
    """Determinant over ``field`` by Gaussian elimination (raw values)."""
    n = len(mat)
    a = [list(row) for row in mat]
    det = field.coerce(1)
    sign = 1
    for c in range(n):
        piv = None
        for r in range(c, n):
            if not field.is_zero(a[r][c]):
                piv = r
                break
        if piv is None:
            return field.coerce(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pv = a[c][c]
        det = field.mul(det, pv)
        inv = field.inv(pv)
        for r in range(c + 1, n):
            f = a[r][c]
            if field.is_zero(f):
                continue
            f = field.mul(f, inv)
            a[r] = [
                field.sub(x, field.mul(f, y)) for x, y in zip(a[r], a[c])
            ]
    if sign < 0:
        det = field.neg(det)
    return det


def ext_solve(field, a, b):
    """Solve the square system a x = b over ``field``; returns raw list.

    Raises ValueError when the matrix is singular.
    """
    n = len(a)
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    for c in range(n):
        piv = None
        for r in range(c, n):
            if not field.is_zero(aug[r][c]):
                piv = r
                break
        if piv is None:
            raise ValueError("singular system")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = field.inv(aug[c][c])
        aug[c] = [field.mul(x, inv) for x in aug[c]]
        for r in range(n):
            if r != c and not field.is_zero(aug[r][c]):
                f = aug[r][c]
                aug[r] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(aug[r], aug[c])
                ]
    return [row[n] for row in aug]
