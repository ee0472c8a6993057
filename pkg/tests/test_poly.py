import random

import pytest

from frobdet.errors import NotHomogeneous, ParseError, VarMismatch, ZeroModP
from frobdet.fields import FiniteField
from frobdet.poly import HomogPoly, monomials_of_degree, parse_poly

from oracles import eval_int, multinomial, naive_mul, naive_pow

F2 = FiniteField(2)
F5 = FiniteField(5)
F7 = FiniteField(7)


def test_homogeneity_enforced():
    with pytest.raises(NotHomogeneous):
        HomogPoly(F5, 3, 2, {(1, 0, 0): 1, (2, 0, 0): 1})
    f = HomogPoly(F5, 3, 2, {(1, 1, 0): 1})
    g = HomogPoly(F5, 3, 3, {(1, 1, 1): 1})
    with pytest.raises(NotHomogeneous):
        f + g


def test_zero_polynomial_has_degree_tag():
    z = HomogPoly.zero(F5, 3, 4)
    assert z.is_zero() and z.degree == 4
    assert not z.terms
    # coefficients that reduce to zero are elided
    f = HomogPoly(F5, 3, 1, {(1, 0, 0): 5})
    assert f.is_zero()


def test_mul_examples():
    x0 = HomogPoly.variable(F2, 3, 0)
    x1 = HomogPoly.variable(F2, 3, 1)
    assert (x0 * x1).terms == {(1, 1, 0): 1}
    s = x0 + x1
    assert (s * s).terms == {(2, 0, 0): 1, (0, 2, 0): 1}  # char-2 Frobenius


def test_mul_against_evaluation_oracle():
    rng = random.Random(2)
    for _ in range(100):
        f = HomogPoly.random(F7, 3, 3, rng)
        g = HomogPoly.random(F7, 3, 3, rng)
        h = f * g
        pt = [rng.randrange(7) for _ in range(3)]
        assert eval_int(h, pt, 7) == (eval_int(f, pt, 7) * eval_int(g, pt, 7)) % 7


def test_mul_against_naive_convolution():
    rng = random.Random(3)
    for _ in range(50):
        f = HomogPoly.random(F5, 3, 2, rng)
        g = HomogPoly.random(F5, 3, 3, rng)
        assert f * g == naive_mul(f, g)


def test_var_mismatch():
    f = HomogPoly.variable(F5, 3, 0)
    g = HomogPoly.variable(F5, 4, 0)
    with pytest.raises(VarMismatch):
        f * g
    with pytest.raises(VarMismatch):
        f + HomogPoly.variable(F7, 3, 0)


def test_pow_examples():
    f = parse_poly("x^2+y*z", F5)
    assert f**0 == HomogPoly.constant(F5, 3, 1)
    g = parse_poly("x+y", F2, nvars=2)
    assert (g**2).terms == {(2, 0): 1, (0, 2): 1}
    # coefficient of x^6 y^6 z^6 in (x^3+y^3+z^3)^6 over F_7 is
    # 6!/(2!2!2!) = 90 = 6 mod 7
    fermat = parse_poly("x^3+y^3+z^3", F7)
    sixth = fermat**6
    assert multinomial(6, (2, 2, 2)) % 7 == 6
    assert sixth.coeff((6, 6, 6)) == 6


def test_pow_matches_repeated_multiplication():
    rng = random.Random(4)
    for p in (2, 3, 5):
        fd = FiniteField(p)
        for e in range(7):
            f = HomogPoly.random(fd, 3, 2, rng)
            assert f**e == naive_pow(f, e)


def test_frobenius_additivity_sampled():
    rng = random.Random(5)
    for p in (2, 3, 5, 7):
        fd = FiniteField(p)
        for _ in range(10):
            f = HomogPoly.random(fd, 3, 2, rng)
            g = HomogPoly.random(fd, 3, 2, rng)
            assert (f + g) ** p == f**p + g**p


def test_coeff_access():
    f = parse_poly("x^2 + 2*y^2", F5, nvars=3)
    assert f.coeff((0, 2, 0)) == 2
    assert f.coeff((1, 1, 0)) == 0  # absent
    assert f.coeff((-1, 3, 0)) == 0  # formal negative exponent
    assert f.coeff((2, 0, 0)) == 1


def test_partial_derivative():
    f = parse_poly("x^3 + x*y^2 + z^3", F7)
    fx = f.partial(0)
    assert fx == parse_poly("3*x^2 + y^2", F7, nvars=3)
    f3 = parse_poly("x^3+y^3+z^3", FiniteField(3))
    assert f3.partial(0).is_zero()  # 3x^2 = 0 in char 3


def test_evaluate_in_extension():
    f = parse_poly("x^2 + y*z", F2)
    f8 = FiniteField(2, 3)
    t = f8.coerce((0, 1, 0))
    val = f.evaluate([t, t, t], f8)
    expected = f8.add(f8.mul(t, t), f8.mul(t, t))
    assert val == expected


def test_parse_examples():
    f = parse_poly("x^3+y^3+z^3", F7)
    assert f.degree == 3 and f.nvars == 3
    g = parse_poly("x0^4 + x1^4 + x2^4 + x3^4", FiniteField(3))
    assert g.degree == 4 and g.nvars == 4
    with pytest.raises(NotHomogeneous):
        parse_poly("x^3 + y^2", F5)
    with pytest.raises(ZeroModP):
        parse_poly("2*x^3", F2)
    assert parse_poly("2x^2y", F5).terms == {(2, 1): 2}  # optional '*'
    assert parse_poly(" x * y + z ^ 2 ", F5).degree == 2  # whitespace free


def test_parse_errors_positioned():
    with pytest.raises(ParseError) as err:
        parse_poly("x^3 + q", F5)
    assert err.value.position is not None
    with pytest.raises(ParseError):
        parse_poly("y2", F5)  # only x takes an index
    with pytest.raises(ParseError):
        parse_poly("", F5)
    with pytest.raises(ParseError):
        parse_poly("x5 + y", F5, nvars=3)  # index out of declared range


def test_parse_aliases_and_signs():
    f = parse_poly("w^2 - x*y", F7)
    assert f.nvars == 4
    assert f.terms[(0, 0, 0, 2)] == 1
    assert f.terms[(1, 1, 0, 0)] == 6  # -1 = 6 mod 7
    g = parse_poly("-x^2 + 3*y^2", F7, nvars=3)
    assert g.terms[(2, 0, 0)] == 6


def test_text_round_trip():
    rng = random.Random(6)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7])
        fd = FiniteField(p)
        f = HomogPoly.random(fd, 3, rng.randrange(1, 4), rng)
        if f.is_zero():
            continue
        assert parse_poly(f.to_text(), fd, nvars=3) == f


def test_sorted_terms_graded_lex():
    f = parse_poly("z^2 + x*y + y^2", F5)
    monos = [m for m, _ in f.sorted_terms()]
    assert monos == [(1, 1, 0), (0, 2, 0), (0, 0, 2)]


def test_monomials_of_degree_ordering():
    ms = monomials_of_degree(3, 2)
    assert ms[0] == (2, 0, 0) and ms[-1] == (0, 0, 2)
    assert len(ms) == 6
    assert ms == sorted(ms, reverse=True)
