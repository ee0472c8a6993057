import random

from frobdet.fields import FiniteField
from frobdet.poly import HomogPoly, count_monomials, mono_divides
from frobdet.quotient import QuotientRing, reduce_mod_form

from oracles import division_remainder, in_principal_ideal

F2 = FiniteField(2)
F3 = FiniteField(3)
F5 = FiniteField(5)


def _parse(text, fd, nvars=3):
    from frobdet.poly import parse_poly

    return parse_poly(text, fd, nvars=nvars)


def test_form_reduces_to_zero():
    g = _parse("x^3+y^3+z^3+x*y*z", F2)
    assert reduce_mod_form(g, g).is_zero()


def test_low_degree_unchanged():
    g = _parse("x^3+y^3+z^3", F5)
    f = _parse("x^2 + 3*y*z", F5)
    assert reduce_mod_form(f, g) == f


def test_char2_example_membership():
    g = _parse("x^3+y^3+z^3+x*y*z", F2)
    ring = QuotientRing(g)
    f = HomogPoly.monomial(F2, 3, (3, 1, 0))  # x^3 * y
    r = ring.reduce(f)
    assert all(not mono_divides(ring.lead_mono, m) for m in r.terms)
    assert in_principal_ideal(f - r, g)  # independent division oracle


def test_reduce_matches_independent_division():
    rng = random.Random(7)
    for p in (2, 3, 5):
        fd = FiniteField(p)
        for _ in range(25):
            g = HomogPoly.random(fd, 3, 3, rng)
            if g.is_zero():
                continue
            ring = QuotientRing(g)
            f = HomogPoly.random(fd, 3, rng.randrange(3, 7), rng)
            assert ring.reduce(f) == division_remainder(f, g)


def test_reduce_idempotent_and_linear():
    rng = random.Random(8)
    g = _parse("x^3 + 2*y^3 + z^3 + x*y*z", F5)
    ring = QuotientRing(g)
    for _ in range(100):
        deg = rng.randrange(1, 8)
        f = HomogPoly.random(F5, 3, deg, rng)
        h = HomogPoly.random(F5, 3, deg, rng)
        rf = ring.reduce(f)
        assert ring.reduce(rf) == rf
        c = rng.randrange(1, 5)
        assert ring.reduce(f + h.scale(c)) == rf + ring.reduce(h).scale(c)


def test_basis_dimension_identity():
    # dim A_j = C(j+n, n) - C(j-d+n, n) for j up to 3pd
    for fd, text in [(F2, "x^3+y^3+z^3+x*y*z"), (F3, "x^4+y^4+z^4+x^2*y*z")]:
        g = _parse(text, fd)
        ring = QuotientRing(g)
        d = g.degree
        for j in range(0, 3 * fd.p * d + 1):
            expected = count_monomials(3, j) - count_monomials(3, j - d)
            assert len(ring.basis(j)) == expected
            assert ring.dim(j) == expected


def test_basis_complement_of_leading_multiples():
    g = _parse("x^3+y^3+z^3", F5)
    ring = QuotientRing(g)
    for j in (3, 4, 5):
        for m in ring.basis(j):
            assert not mono_divides((3, 0, 0), m)
