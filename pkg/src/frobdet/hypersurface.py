"""Arithmetic side-tests for hypersurfaces over F_p.

Covers the smoothness rank test, the Frobenius-splitting criterion read
off the (p-1)-st power of the defining form, the Hasse-Witt matrix of a
plane curve, and the ordinarity test derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import GenusZero, NotACurve
from .poly import HomogPoly, count_monomials, monomials_of_degree
from .quotient import QuotientRing


class Hypersurface:
    """A hypersurface V(form) in P^n over a prime field.

    Derived data: degree d, ambient dimension n (so dim X = n - 1) and,
    for plane curves, the genus (d-1)(d-2)/2.
    """

    def __init__(self, form: HomogPoly):
        if form.field.k != 1:
            raise ValueError("hypersurfaces are defined over prime fields")
        if form.is_zero():
            raise ValueError("the defining form must be nonzero")
        if form.degree < 1:
            raise ValueError("the defining form must have degree >= 1")
        if form.nvars < 3:
            raise ValueError("need an ambient P^n with n >= 2 (>= 3 variables)")
        self.form = form
        self.field = form.field
        self.p = form.field.p
        self.degree = form.degree
        self.nvars = form.nvars
        self.ambient_dim = form.nvars - 1
        self.dim = self.ambient_dim - 1
        self._ring = None
        self._frob_power = None

    @property
    def ring(self) -> QuotientRing:
        if self._ring is None:
            self._ring = QuotientRing(self.form)
        return self._ring

    @property
    def genus(self) -> int:
        if self.ambient_dim != 2:
            raise NotACurve("genus is defined here for plane curves only")
        d = self.degree
        return (d - 1) * (d - 2) // 2

    def frobenius_power(self) -> HomogPoly:
        """form^(p-1), cached (shared by the splitting and Hasse-Witt tests)."""
        if self._frob_power is None:
            self._frob_power = self.form ** (self.p - 1)
        return self._frob_power

    def __repr__(self):
        return (
            f"Hypersurface({self.form.to_text()!r}, p={self.p}, "
            f"d={self.degree}, n={self.ambient_dim})"
        )


def genus(h: Hypersurface) -> int:
    return h.genus


def degree_bound_check(h: Hypersurface) -> bool:
    """d <= n + 1, the degree range that Frobenius splitting allows."""
    return h.degree <= h.ambient_dim + 1


def fedder_split_test(h: Hypersurface) -> bool:
    """Frobenius splitting test: form^(p-1) must contain a monomial with
    every exponent <= p - 1 (i.e. it lies outside (x_0^p, ..., x_n^p))."""
    limit = h.p - 1
    return any(
        all(e <= limit for e in mono) for mono in h.frobenius_power().terms
    )


def is_smooth(h: Hypersurface) -> bool:
    """Rank test for smoothness of V(form) over the algebraic closure.

    The Jacobian ideal (form, all partials) contains every form of
    degree E = (d-1) + (n+1)(d-2) + 1 exactly when the generators have
    no common projective zero; E is a Macaulay-type bound for the
    generator degrees involved, valid in any characteristic.
    """
    d = h.degree
    nv = h.nvars
    gens = [h.form] + [h.form.partial(i) for i in range(nv)]
    gens = [g for g in gens if not g.is_zero()]
    if any(g.degree == 0 for g in gens):
        return True  # a unit in the ideal (only happens for d = 1)
    e_degree = max((d - 1) + nv * (d - 2) + 1, 0)
    target = monomials_of_degree(nv, e_degree)
    index = {m: i for i, m in enumerate(target)}
    cols = []
    for g in gens:
        shift = e_degree - g.degree
        if shift < 0:
            continue
        for mu in monomials_of_degree(nv, shift):
            col = np.zeros(len(target), dtype=np.int64)
            for m, c in g.terms.items():
                col[index[tuple(x + y for x, y in zip(m, mu))]] = c
            cols.append(col)
    if not cols:
        return False
    matrix = np.stack(cols, axis=1)
    return linalg.rank(matrix, h.p) == len(target)


@dataclass(frozen=True)
class HasseWittMatrix:
    """Matrix of the p-linear Frobenius action on H^1(X, O_X).

    The basis consists of the interior monomials x^a y^b z^c with
    a, b, c >= 1 and a+b+c = d; entry (i, j) is the coefficient of
    x^(p*a_j - a_i) y^(p*b_j - b_i) z^(p*c_j - c_i) in form^(p-1), with
    formally negative exponents contributing 0.
    """

    basis: tuple
    entries: np.ndarray
    p: int

    @property
    def size(self) -> int:
        return len(self.basis)

    def det(self) -> int:
        return linalg.det_mod(self.entries, self.p)

    def is_invertible(self) -> bool:
        return self.det() != 0


def _interior_monomials(degree: int):
    """Exponent triples >= 1 summing to ``degree``, descending graded-lex."""
    return [
        m for m in monomials_of_degree(3, degree) if all(e >= 1 for e in m)
    ]


def hasse_witt(h: Hypersurface) -> HasseWittMatrix:
    if h.ambient_dim != 2:
        raise NotACurve("the Hasse-Witt matrix is computed for plane curves")
    g = h.genus
    if g == 0:
        raise GenusZero("genus-0 curves have no H^1(O_X)")
    basis = _interior_monomials(h.degree)
    assert len(basis) == g
    power = h.frobenius_power()
    p = h.p
    entries = np.zeros((g, g), dtype=np.int64)
    for j, a_j in enumerate(basis):
        for i, a_i in enumerate(basis):
            mono = tuple(p * aj - ai for aj, ai in zip(a_j, a_i))
            if any(e < 0 for e in mono):
                continue
            entries[i, j] = power.terms.get(mono, 0)
    return HasseWittMatrix(basis=tuple(basis), entries=entries, p=p)


def is_ordinary(h: Hypersurface) -> bool:
    """Frobenius bijective on H^1(O_X); genus 0 is ordinary by convention.

    A p-linear endomorphism is bijective exactly when its matrix is
    invertible, so one determinant decides.
    """
    if h.ambient_dim != 2:
        raise NotACurve("ordinarity is tested here for plane curves only")
    if h.genus == 0:
        return True
    return hasse_witt(h).is_invertible()


def homogeneous_piece_dim(h: Hypersurface, j: int) -> int:
    """dim of the degree-j piece of the coordinate ring S/(form)."""
    if j < 0:
        return 0
    return count_monomials(h.nvars, j) - count_monomials(h.nvars, j - h.degree)
