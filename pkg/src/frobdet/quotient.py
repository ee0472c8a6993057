"""Arithmetic in the graded quotient ring k[x_0..x_n]/(form).

Because the ideal is principal, its initial ideal under graded-lex is
generated by the leading monomial of the form, so single-divisor
division computes normal forms and the standard monomials (those not
divisible by the leading monomial) form a basis of every graded piece.
No Groebner machinery is needed.
"""

from __future__ import annotations

import heapq

from .poly import HomogPoly, count_monomials, mono_div, mono_divides, monomials_of_degree


class QuotientRing:
    """S/(form) with graded-lex monomial bases and memoized normal forms."""

    def __init__(self, form: HomogPoly):
        if form.is_zero():
            raise ValueError("the defining form must be nonzero")
        if form.degree < 1:
            raise ValueError("the defining form must have degree >= 1")
        self.form = form
        self.field = form.field
        self.nvars = form.nvars
        self.degree = form.degree
        lead_mono, lead_coeff = form.lead()
        self.lead_mono = lead_mono
        neg_inv = self.field.neg(self.field.inv(lead_coeff))
        # tail rewrite: lead_mono -> sum of (-lc^-1 * c) * m over the tail
        self._rewrite = [
            (m, self.field.mul(c, neg_inv))
            for m, c in form.terms.items()
            if m != lead_mono
        ]
        self._nf_cache = {}
        self._basis_cache = {}
        self._index_cache = {}

    # -- graded bases ---------------------------------------------------

    def basis(self, j: int):
        """Standard monomials of degree j, descending graded-lex."""
        if j not in self._basis_cache:
            self._basis_cache[j] = tuple(
                m
                for m in monomials_of_degree(self.nvars, j)
                if not mono_divides(self.lead_mono, m)
            )
        return self._basis_cache[j]

    def basis_index(self, j: int):
        """monomial -> position map for the degree-j basis."""
        if j not in self._index_cache:
            self._index_cache[j] = {m: i for i, m in enumerate(self.basis(j))}
        return self._index_cache[j]

    def dim(self, j: int) -> int:
        if j < 0:
            return 0
        return count_monomials(self.nvars, j) - count_monomials(
            self.nvars, j - self.degree
        )

    # -- normal forms ---------------------------------------------------

    def normal_form_mono(self, mono):
        """Normal form of a single monomial as a {monomial: raw coeff} map."""
        mono = tuple(mono)
        cached = self._nf_cache.get(mono)
        if cached is not None:
            return cached
        field = self.field
        if not mono_divides(self.lead_mono, mono):
            result = {mono: field.coerce(1)}
            self._nf_cache[mono] = result
            return result
        # iterative division, always rewriting the graded-lex largest
        # pending monomial; heap keys invert exponents so the min-heap
        # pops the largest tuple first
        pending = {mono: field.coerce(1)}
        heap = [tuple(-e for e in mono)]
        out = {}
        while heap:
            key = heapq.heappop(heap)
            m = tuple(-e for e in key)
            c = pending.pop(m, None)
            if c is None or field.is_zero(c):
                continue
            cached = self._nf_cache.get(m)
            if cached is not None:
                for mm, cc in cached.items():
                    s = field.add(out.get(mm, field.coerce(0)), field.mul(c, cc))
                    if field.is_zero(s):
                        out.pop(mm, None)
                    else:
                        out[mm] = s
                continue
            if not mono_divides(self.lead_mono, m):
                s = field.add(out.get(m, field.coerce(0)), c)
                if field.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
                continue
            q = mono_div(m, self.lead_mono)
            for tm, tc in self._rewrite:
                mm = tuple(x + y for x, y in zip(tm, q))
                add = field.mul(c, tc)
                if mm in pending:
                    s = field.add(pending[mm], add)
                    if field.is_zero(s):
                        del pending[mm]
                    else:
                        pending[mm] = s
                else:
                    pending[mm] = add
                    heapq.heappush(heap, tuple(-e for e in mm))
        self._nf_cache[mono] = out
        return out

    def reduce(self, f: HomogPoly) -> HomogPoly:
        """Normal form of f modulo the defining form."""
        if f.nvars != self.nvars or f.field != self.field:
            raise ValueError("polynomial lives over a different ring")
        field = self.field
        out = {}
        for m, c in f.terms.items():
            for mm, cc in self.normal_form_mono(m).items():
                s = field.add(out.get(mm, field.coerce(0)), field.mul(c, cc))
                if field.is_zero(s):
                    out.pop(mm, None)
                else:
                    out[mm] = s
        return HomogPoly(field, self.nvars, f.degree, out)


def reduce_mod_form(f: HomogPoly, form: HomogPoly) -> HomogPoly:
    """One-shot normal form of f modulo (form)."""
    return QuotientRing(form).reduce(f)
