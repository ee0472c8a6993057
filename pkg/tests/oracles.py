"""Independent oracles used by the test suite.

Every function here recomputes a quantity along a different path than
the library (integer arithmetic reduced late, extended Euclid, textbook
division, permutation determinants, local-cohomology dimension counts)
so that agreement is evidence, not tautology.
"""

import itertools
import math

import numpy as np

from frobdet.linalg import nullspace
from frobdet.poly import HomogPoly, count_monomials, monomials_of_degree


def naive_mul(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    """Integer-coefficient convolution, reduced mod p at the end."""
    p = f.field.p
    out = {}
    for ma, ca in f.terms.items():
        for mb, cb in g.terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + int(ca) * int(cb)
    out = {m: c % p for m, c in out.items() if c % p}
    return HomogPoly(f.field, f.nvars, f.degree + g.degree, out)


def naive_pow(f: HomogPoly, e: int) -> HomogPoly:
    acc = HomogPoly.constant(f.field, f.nvars, 1)
    for _ in range(e):
        acc = naive_mul(acc, f)
    return acc


def multinomial(total: int, parts) -> int:
    num = math.factorial(total)
    for k in parts:
        num //= math.factorial(k)
    return num


def eval_int(f: HomogPoly, point, p: int) -> int:
    """Evaluate with plain integer arithmetic, reducing at the end."""
    acc = 0
    for m, c in f.terms.items():
        term = int(c)
        for x, e in zip(point, m):
            term *= int(x) ** e
        acc += term
    return acc % p


def independent_inverse(field, a):
    """Inverse computed without the library's power formula: extended
    Euclid on integers for prime fields, exhaustive search otherwise
    (the fields used in tests are tiny)."""
    p = field.p
    if field.k == 1:
        g, s, _ = _ext_gcd_int(a % p, p)
        assert g == 1
        return s % p
    one = field.coerce(1)
    for b in field.elements():
        if field.mul(a, b) == one:
            return b
    raise AssertionError("no inverse found; the field tables are broken")


def _ext_gcd_int(a, b):
    if a == 0:
        return b, 0, 1
    g, s, t = _ext_gcd_int(b % a, a)
    return g, t - (b // a) * s, s


def division_remainder(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    """Textbook multivariate division of f by g in graded-lex order,
    written independently of the quotient-ring code."""
    field = f.field
    gm, gc = g.lead()
    gc_inv = field.inv(gc)
    work = dict(f.terms)
    remainder = {}
    while work:
        m = max(work)
        c = work.pop(m)
        if all(x >= y for x, y in zip(m, gm)):
            q = tuple(x - y for x, y in zip(m, gm))
            factor = field.mul(c, gc_inv)
            for tm, tc in g.terms.items():
                if tm == gm:
                    continue
                mm = tuple(x + y for x, y in zip(tm, q))
                v = field.sub(work.get(mm, 0), field.mul(factor, tc))
                if field.is_zero(v):
                    work.pop(mm, None)
                else:
                    work[mm] = v
        else:
            remainder[m] = c
    return HomogPoly(field, f.nvars, f.degree, remainder)


def in_principal_ideal(f: HomogPoly, g: HomogPoly) -> bool:
    return division_remainder(f, g).is_zero()


def permutation_det(rows):
    """Determinant as a signed permutation sum (sizes <= 6)."""
    s = len(rows)
    field = rows[0][0].field
    nv = rows[0][0].nvars
    acc = None
    for perm in itertools.permutations(range(s)):
        sign = _perm_sign(perm)
        term = None
        for i in range(s):
            e = rows[i][perm[i]]
            if e.is_zero():
                term = None
                break
            term = e if term is None else term * e
        if term is None:
            continue
        if sign < 0:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else HomogPoly.zero(field, nv, 0)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def projective_points(field, nvars):
    """One representative per point of P^(nvars-1) over the field."""
    for lead in range(nvars):
        prefix = (field.coerce(0),) * lead + (field.coerce(1),)
        for tail in itertools.product(field.elements(),
                                      repeat=nvars - lead - 1):
            yield prefix + tail


def has_singular_point(h, extension_degree: int) -> bool:
    """Search for a common projective zero of the form and its partials
    over F_{p^extension_degree} (partial oracle: a found point certifies
    non-smoothness; absence proves nothing)."""
    from frobdet.fields import FiniteField

    fd = (FiniteField(h.p) if extension_degree == 1
          else FiniteField(h.p, extension_degree))
    polys = [h.form] + [h.form.partial(i) for i in range(h.nvars)]
    polys = [g for g in polys if not g.is_zero()]
    for pt in projective_points(fd, h.nvars):
        if all(fd.is_zero(g.evaluate(pt, fd)) for g in polys):
            return True
    return False


# ---------------------------------------------------------------------------
# Long-exact-sequence / local-cohomology oracle for plane curves.
# H^1(X, O_X(m)) for X = V(form) in P^2 is modeled by the monomials with
# all exponents <= -1 (graded piece m - d of the third local cohomology
# of the polynomial ring); for m >= 0 the multiplication-by-form map
# lands in a zero piece, so the basis is the set of interior exponent
# triples of total degree d - m and the Frobenius acts by
# xi -> form^(p-1) * xi^p, truncated to all-negative exponents.


def h1_dim(d: int, m: int) -> int:
    t = d - m
    return max(0, (t - 1) * (t - 2) // 2) if t >= 3 else 0


def _interior(total: int):
    return [mm for mm in monomials_of_degree(3, total)
            if all(e >= 1 for e in mm)]


def frobenius_h1_matrix(h, m: int) -> np.ndarray:
    """Matrix of Frobenius H^1(O(m)) -> H^1(O(pm)) in the interior
    monomial bases (columns index the source)."""
    p = h.p
    d = h.degree
    source = _interior(d - m)
    target = _interior(d - p * m)
    power = h.form ** (p - 1)
    mat = np.zeros((len(target), len(source)), dtype=np.int64)
    for j, aj in enumerate(source):
        for i, ai in enumerate(target):
            mono = tuple(p * x - y for x, y in zip(aj, ai))
            if any(e < 0 for e in mono):
                continue
            mat[i, j] = power.terms.get(mono, 0)
    return mat


def frobenius_h1_kernel_dim(h, m: int) -> int:
    mat = frobenius_h1_matrix(h, m)
    if mat.shape[1] == 0:
        return 0
    return nullspace(mat, h.p).shape[1]


def section_dim_oracle(h, m: int) -> int:
    """dim of the degree-m piece of the saturated sections module of the
    exact differentials, from the cohomology long exact sequence:
    (dim A_{pm} - dim A_m) + dim ker(Frobenius on H^1(O(m)))."""
    if m < 0:
        return 0
    nv = h.nvars
    d = h.degree

    def dim_a(j):
        if j < 0:
            return 0
        return count_monomials(nv, j) - count_monomials(nv, j - d)

    return dim_a(h.p * m) - dim_a(m) + frobenius_h1_kernel_dim(h, m)


def riemann_roch_section_dim(h, m: int) -> int:
    """(p-1) * d * m for m >= 1 and 0 for m <= 0, valid for ordinary
    curves of the degrees used in the tests."""
    if m <= 0:
        return 0
    return (h.p - 1) * h.degree * m
