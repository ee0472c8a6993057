import random

import numpy as np
import pytest

from frobdet.fields import FiniteField
from frobdet.linalg import (
    det_mod,
    ext_det,
    ext_solve,
    invert_mod,
    nullspace,
    rank,
    rref,
    solve_in_span,
)


def _random_matrix(rng, rows, cols, p):
    return np.array(
        [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
        dtype=np.int64,
    )


def test_rref_shape_and_kernel():
    rng = random.Random(10)
    for p in (2, 3, 5, 7):
        for _ in range(25):
            a = _random_matrix(rng, rng.randrange(1, 8), rng.randrange(1, 8), p)
            r, piv = rref(a, p)
            assert len(piv) == rank(a, p)
            ns = nullspace(a, p)
            assert ns.shape[0] == a.shape[1]
            assert len(piv) + ns.shape[1] == a.shape[1]
            if ns.shape[1]:
                assert not (a @ ns % p).any()
            # pivots are normalized and isolated
            for row_idx, col in enumerate(piv):
                col_vals = r[:, col]
                assert col_vals[row_idx] == 1
                assert col_vals.sum() == 1


def test_nullspace_deterministic():
    a = np.array([[1, 2, 3], [2, 4, 6]], dtype=np.int64)
    n1 = nullspace(a, 7)
    n2 = nullspace(a.copy(), 7)
    assert np.array_equal(n1, n2)


def test_solve_in_span():
    rng = random.Random(11)
    for p in (2, 5):
        basis = _random_matrix(rng, 6, 3, p)
        while rank(basis, p) < 3:
            basis = _random_matrix(rng, 6, 3, p)
        coords = _random_matrix(rng, 3, 4, p)
        vecs = basis @ coords % p
        solved = solve_in_span(basis, vecs, p)
        assert np.array_equal(solved, coords % p)
    with pytest.raises(ValueError):
        ident = np.eye(3, dtype=np.int64)
        solve_in_span(ident[:, :2], ident[:, 2:], 5)


def test_det_mod_against_permutation_sum():
    import itertools

    rng = random.Random(12)
    for p in (2, 3, 7):
        for _ in range(20):
            n = rng.randrange(1, 5)
            a = _random_matrix(rng, n, n, p)
            brute = 0
            for perm in itertools.permutations(range(n)):
                sign = 1
                seen = [False] * n
                for i in range(n):
                    if seen[i]:
                        continue
                    j, length = i, 0
                    while not seen[j]:
                        seen[j] = True
                        j = perm[j]
                        length += 1
                    if length % 2 == 0:
                        sign = -sign
                term = sign
                for i in range(n):
                    term *= int(a[i, perm[i]])
                brute += term
            assert det_mod(a, p) == brute % p


def test_invert_mod():
    rng = random.Random(13)
    p = 5
    a = _random_matrix(rng, 4, 4, p)
    while det_mod(a, p) == 0:
        a = _random_matrix(rng, 4, 4, p)
    inv = invert_mod(a, p)
    assert np.array_equal(a @ inv % p, np.eye(4, dtype=np.int64))
    with pytest.raises(ValueError):
        invert_mod(np.zeros((2, 2), dtype=np.int64), p)


def test_ext_det_and_solve():
    fd = FiniteField(2, 3)
    rng = random.Random(14)
    for _ in range(20):
        n = rng.randrange(1, 5)
        a = [[fd.random(rng) for _ in range(n)] for _ in range(n)]
        d = ext_det(fd, a)
        if fd.is_zero(d):
            with pytest.raises(ValueError):
                ext_solve(fd, a, [fd.coerce(0)] * n)
            continue
        x = [fd.random(rng) for _ in range(n)]
        b = [
            _dot(fd, row, x)
            for row in a
        ]
        assert ext_solve(fd, a, b) == x


def _dot(fd, row, x):
    acc = fd.coerce(0)
    for r, v in zip(row, x):
        acc = fd.add(acc, fd.mul(r, v))
    return acc


def test_ext_det_matches_prime_field_det():
    fd = FiniteField(7)
    rng = random.Random(15)
    for _ in range(20):
        n = rng.randrange(1, 5)
        a = [[rng.randrange(7) for _ in range(n)] for _ in range(n)]
        assert ext_det(fd, a) == det_mod(np.array(a, dtype=np.int64), 7)
