import random

import pytest

from frobdet.errors import VarMismatch, ZeroInverse
from frobdet.fields import FieldElement, FiniteField, find_irreducible, is_prime

from oracles import independent_inverse


def test_primality_enforced():
    with pytest.raises(ValueError):
        FiniteField(4)
    with pytest.raises(ValueError):
        FiniteField(1)
    FiniteField(2)
    FiniteField(65521)
    with pytest.raises(ValueError):
        FiniteField(1 << 16)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}
    assert {n for n in range(2, 30) if is_prime(n)} == primes


def test_modulus_rules():
    with pytest.raises(ValueError):
        FiniteField(2, 1, modulus=(1, 1))  # k = 1 takes no modulus
    with pytest.raises(ValueError):
        FiniteField(2, 2, modulus=(0, 0, 1))  # t^2 is reducible
    with pytest.raises(ValueError):
        FiniteField(2, 2, modulus=(1, 1))  # degree mismatch
    fd = FiniteField(2, 2)  # default modulus found automatically
    assert fd.modulus == (1, 1, 1)  # t^2 + t + 1


def test_find_irreducible_examples():
    assert find_irreducible(2, 4) == (1, 1, 0, 0, 1)  # t^4 + t + 1
    assert find_irreducible(3, 2) == (1, 0, 1)  # t^2 + 1
    assert find_irreducible(5, 2) == (2, 0, 1)  # t^2 + 2


def test_find_irreducible_deterministic_and_irreducible():
    for p, k in [(2, 2), (2, 3), (2, 5), (3, 3), (7, 2)]:
        mod = find_irreducible(p, k)
        assert mod == find_irreducible(p, k)
        fd = FiniteField(p, k, modulus=mod)  # constructor re-checks irreducibility
        assert fd.order == p**k


def test_inverse_examples():
    assert FiniteField(7)(3).inverse() == 5  # 3*5 = 15 = 1 mod 7
    assert FiniteField(2)(1).inverse() == 1
    f16 = FiniteField(2, 4, modulus=(1, 1, 0, 0, 1))
    t = f16((0, 1, 0, 0))
    assert t.inverse().rep == (1, 0, 0, 1)  # t^3 + 1
    assert (t * t.inverse()).rep == (1, 0, 0, 0)


def test_zero_inverse_raises():
    with pytest.raises(ZeroInverse):
        FiniteField(5)(0).inverse()
    with pytest.raises(ZeroInverse):
        FiniteField(2, 4)((0, 0, 0, 0)).inverse()


def test_inverse_against_independent_oracle():
    rng = random.Random(0)
    for fd in [FiniteField(2), FiniteField(7), FiniteField(13),
               FiniteField(2, 4), FiniteField(3, 2), FiniteField(5, 2)]:
        for _ in range(40):
            a = fd.random(rng)
            if fd.is_zero(a):
                continue
            assert fd.inv(a) == independent_inverse(fd, a)


def test_field_axioms_sampled():
    rng = random.Random(1)
    for fd in [FiniteField(5), FiniteField(2, 3), FiniteField(3, 2)]:
        for _ in range(50):
            a, b, c = (fd.random(rng) for _ in range(3))
            assert fd.add(a, b) == fd.add(b, a)
            assert fd.mul(a, b) == fd.mul(b, a)
            assert fd.add(fd.add(a, b), c) == fd.add(a, fd.add(b, c))
            assert fd.mul(fd.mul(a, b), c) == fd.mul(a, fd.mul(b, c))
            assert fd.mul(a, fd.add(b, c)) == fd.add(fd.mul(a, b), fd.mul(a, c))
            assert fd.add(a, fd.neg(a)) == fd.coerce(0)


def test_canonical_representation():
    fd = FiniteField(7)
    assert fd.coerce(10) == 3
    assert fd.coerce(-1) == 6
    f9 = FiniteField(3, 2)
    assert f9.coerce((4, -1)) == (1, 2)
    assert f9.coerce(5) == (2, 0)


def test_elements_enumeration():
    f9 = FiniteField(3, 2)
    elems = list(f9.elements())
    assert len(elems) == 9 == len(set(elems))
    assert f9.from_index(0) == (0, 0)


def test_element_wrapper_operations():
    fd = FiniteField(11)
    a, b = fd(4), fd(9)
    assert a + b == 2
    assert a - b == 6
    assert a * b == 3
    assert (a / b) * b == a
    assert -a == 7
    assert a**5 == FieldElement(fd, pow(4, 5, 11))
    with pytest.raises(VarMismatch):
        fd(1) + FiniteField(5)(1)


def test_frobenius_fixes_prime_field():
    fd = FiniteField(7)
    for a in range(7):
        assert fd.frobenius(a) == a
    f8 = FiniteField(2, 3)
    for a in f8.elements():
        assert f8.frobenius(a) == f8.mul(a, a)
