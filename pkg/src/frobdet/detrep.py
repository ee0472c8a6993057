"""Exact and probabilistic checks that det(M) is a power of the form.

Matrices are lists of rows of HomogPoly (a PresentationMatrix is
accepted wherever a matrix is) and must be consistently graded: there
are twists a_j, b_i with every nonzero entry (j, i) homogeneous of
degree b_i - a_j.  The determinant of such a matrix is homogeneous of
degree sum(b) - sum(a).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    DegenerateSamples,
    DegreeIncompatible,
    Mismatch,
    NotSkew,
    OddSize,
    SizeCap,
)
from .fields import FiniteField
from .graded import PresentationMatrix
from .poly import HomogPoly, monomials_of_degree

DET_SIZE_CAP = 16
COFACTOR_LIMIT = 12  # larger matrices go through interpolation


def _as_rows(matrix):
    if isinstance(matrix, PresentationMatrix):
        rows = matrix.rows()
    else:
        rows = [list(r) for r in matrix]
    s = len(rows)
    if s == 0 or any(len(r) != s for r in rows):
        raise ValueError("matrix must be square and nonempty")
    first = rows[0][0]
    for r in rows:
        for e in r:
            if e.field != first.field or e.nvars != first.nvars:
                raise ValueError("mixed fields or variable counts in matrix")
    return rows


def infer_twists(rows):
    """Recover row twists a_j and column twists b_i from entry degrees,
    anchored at a_0 = 0.  Raises DegreeIncompatible when the degrees are
    inconsistent or the nonzero pattern leaves the grading ambiguous."""
    s = len(rows)
    a = [None] * s
    b = [None] * s
    a[0] = 0
    queue = [("row", 0)]
    while queue:
        kind, idx = queue.pop()
        if kind == "row":
            for i in range(s):
                e = rows[idx][i]
                if e.is_zero():
                    continue
                want = a[idx] + e.degree
                if b[i] is None:
                    b[i] = want
                    queue.append(("col", i))
                elif b[i] != want:
                    raise DegreeIncompatible(
                        "entry degrees admit no consistent grading"
                    )
        else:
            for j in range(s):
                e = rows[j][idx]
                if e.is_zero():
                    continue
                want = b[idx] - e.degree
                if a[j] is None:
                    a[j] = want
                    queue.append(("row", j))
                elif a[j] != want:
                    raise DegreeIncompatible(
                        "entry degrees admit no consistent grading"
                    )
    if any(v is None for v in a) or any(v is None for v in b):
        raise DegreeIncompatible(
            "zero pattern disconnects the matrix; grading is ambiguous"
        )
    return tuple(a), tuple(b)


def det_exact(matrix) -> HomogPoly:
    """Exact determinant by column-subset cofactor expansion.

    Minors over rows 0..k-1 are memoized per column subset, one
    popcount level at a time, so memory stays at two levels of the
    2^s table."""
    rows = _as_rows(matrix)
    s = len(rows)
    if s > DET_SIZE_CAP:
        raise SizeCap(f"exact cofactor determinant capped at {DET_SIZE_CAP}")
    field = rows[0][0].field
    nv = rows[0][0].nvars
    one = HomogPoly.constant(field, nv, 1)
    prev = {(): one}
    for k in range(1, s + 1):
        cur = {}
        row = rows[k - 1]
        for subset in itertools.combinations(range(s), k):
            acc = None
            for t, j in enumerate(subset):
                entry = row[j]
                if entry.is_zero():
                    continue
                minor = prev[subset[:t] + subset[t + 1 :]]
                if minor.is_zero():
                    continue
                term = entry * minor
                if (k - 1 + t) % 2:
                    term = -term
                acc = term if acc is None else acc + term
            cur[subset] = acc if acc is not None else HomogPoly.zero(
                field, nv, 0
            )
        prev = cur
    return prev[tuple(range(s))]


def poly_divexact(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    """Exact division f / g in the polynomial ring; raises ValueError if
    g does not divide f."""
    field = f.field
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return HomogPoly.zero(field, f.nvars, max(f.degree - g.degree, 0))
    gm, gc = g.lead()
    gc_inv = field.inv(gc)
    quo = {}
    rem = f
    while not rem.is_zero():
        rm, rc = rem.lead()
        if any(x < y for x, y in zip(rm, gm)):
            raise ValueError("division is not exact")
        qm = tuple(x - y for x, y in zip(rm, gm))
        qc = field.mul(rc, gc_inv)
        quo[qm] = qc
        rem = rem - g * HomogPoly.monomial(field, f.nvars, qm, qc)
    return HomogPoly(field, f.nvars, f.degree - g.degree, quo)


def det_bareiss(matrix) -> HomogPoly:
    """Fraction-free Bareiss determinant (cross-check path; divisions by
    earlier pivots are exact in the polynomial ring)."""
    rows = _as_rows(matrix)
    s = len(rows)
    field = rows[0][0].field
    nv = rows[0][0].nvars
    m = [list(r) for r in rows]
    sign = 1
    for k in range(s - 1):
        if m[k][k].is_zero():
            swap = next(
                (i for i in range(k + 1, s) if not m[i][k].is_zero()), None
            )
            if swap is None:
                return HomogPoly.zero(field, nv, 0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, s):
            for j in range(k + 1, s):
                elt = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                if k > 0:
                    elt = poly_divexact(elt, m[k - 1][k - 1])
                m[i][j] = elt
    det = m[s - 1][s - 1]
    return -det if sign < 0 else det


def pfaffian(matrix) -> HomogPoly:
    """Pfaffian of an alternating skew-symmetric matrix of even size,
    by expansion along the first active row; pfaffian(M)^2 = det(M)."""
    rows = _as_rows(matrix)
    s = len(rows)
    if s % 2:
        raise OddSize("the Pfaffian needs an even-sized matrix")
    field = rows[0][0].field
    nv = rows[0][0].nvars
    for i in range(s):
        if not rows[i][i].is_zero():
            raise NotSkew("diagonal entries must vanish")
        for j in range(i + 1, s):
            if rows[j][i] != -rows[i][j]:
                raise NotSkew(f"entries ({i},{j}) and ({j},{i}) are not opposite")
    one = HomogPoly.constant(field, nv, 1)
    memo = {}

    def pf(active):
        if not active:
            return one
        if active in memo:
            return memo[active]
        i0 = active[0]
        rest = active[1:]
        acc = None
        for t, j in enumerate(rest):
            entry = rows[i0][j]
            if entry.is_zero():
                continue
            sub = pf(rest[:t] + rest[t + 1 :])
            if sub.is_zero():
                continue
            term = entry * sub
            if t % 2:
                term = -term
            acc = term if acc is None else acc + term
        result = acc if acc is not None else HomogPoly.zero(field, nv, 0)
        memo[active] = result
        return result

    return pf(tuple(range(s)))


def _det_degree_bound(rows) -> int:
    bound = 0
    for r in rows:
        degs = [e.degree for e in r if not e.is_zero()]
        if not degs:
            return 0
        bound += max(degs)
    return bound


def _sampling_field(p: int, deg: int) -> FiniteField:
    """Smallest F_{p^k} with p^k > 4*deg (k = 1 allowed)."""
    need = 4 * max(deg, 1)
    k = 1
    size = p
    while size <= need:
        k += 1
        size *= p
    return FiniteField(p) if k == 1 else FiniteField(p, k)


def _eval_matrix(field_ext, rows, point):
    return [[e.evaluate(point, field_ext) for e in r] for r in rows]


def schwartz_zippel_check(matrix, form: HomogPoly, r: int, trials: int = 16,
                          seed: int = 0) -> bool:
    """Probabilistic test of det(M) = lambda * form^r at seeded random
    points of an extension field F_{p^k} with p^k > 4*deg(det).

    lambda is fitted from the first sample where the form does not
    vanish; a zero determinant there counts as failure (a valid
    determinantal identity has lambda != 0).  Raises DegenerateSamples
    when every point annihilates the form."""
    if trials < 1:
        raise ValueError("need at least one trial")
    rows = _as_rows(matrix)
    fd = _sampling_field(form.field.p, max(_det_degree_bound(rows), form.degree * r))
    rng = random.Random(seed)
    nv = form.nvars
    lam = None
    saw_nonzero = False
    for _ in range(trials):
        point = [fd.random(rng) for _ in range(nv)]
        gval = form.evaluate(point, fd)
        dval = linalg.ext_det(fd, _eval_matrix(fd, rows, point))
        if fd.is_zero(gval):
            if not fd.is_zero(dval):
                return False
            continue
        saw_nonzero = True
        gpow = fd.pow(gval, r)
        if lam is None:
            lam = fd.mul(dval, fd.inv(gpow))
            if fd.is_zero(lam):
                return False
        elif dval != fd.mul(lam, gpow):
            return False
    if not saw_nonzero:
        raise DegenerateSamples(
            "every sampled point annihilated the form; re-seed the check"
        )
    return True


def det_interpolated(matrix, deg_det: int, seed: int = 0) -> HomogPoly:
    """Exact determinant recovered by evaluation and interpolation over
    an extension field (used above the cofactor size threshold)."""
    rows = _as_rows(matrix)
    base = rows[0][0].field
    nv = rows[0][0].nvars
    fd = _sampling_field(base.p, deg_det)
    monos = monomials_of_degree(nv, deg_det)
    n_unknowns = len(monos)
    rng = random.Random(seed)
    for _ in range(12):
        points = []
        sys_rows = []
        rhs = []
        for _ in range(n_unknowns):
            pt = [fd.random(rng) for _ in range(nv)]
            points.append(pt)
            sys_rows.append(
                [
                    _eval_mono(fd, pt, m)
                    for m in monos
                ]
            )
            rhs.append(linalg.ext_det(fd, _eval_matrix(fd, rows, pt)))
        try:
            sol = linalg.ext_solve(fd, sys_rows, rhs)
        except ValueError:
            continue
        terms = {}
        for m, c in zip(monos, sol):
            if fd.is_zero(c):
                continue
            if not fd.in_prime_subfield(c):
                break  # inconsistent sample; retry
            terms[m] = c if fd.k == 1 else c[0]
        else:
            return HomogPoly(base, nv, deg_det, terms)
    raise RuntimeError("interpolation failed to produce a prime-field result")


def _eval_mono(fd, pt, mono):
    acc = fd.coerce(1)
    for x, e in zip(pt, mono):
        if e:
            acc = fd.mul(acc, fd.pow(x, e))
    return acc


@dataclass(frozen=True)
class DetCertificate:
    """Outcome of an exact determinant-power verification."""

    size: int
    r: int
    lam: int
    method: str
    sz_trials: int
    degree_profile: tuple

    def to_dict(self):
        return {
            "size": self.size,
            "r": self.r,
            "lambda": self.lam,
            "method": self.method,
            "sz_trials": self.sz_trials,
            "degree_profile": list(self.degree_profile),
        }


def verify_det_power(matrix, form: HomogPoly, *, trials: int = 16,
                     seed: int = 0) -> DetCertificate:
    """Assert det(M) = lambda * form^r exactly and certify it.

    r is pinned by degrees (det degree over form degree), the
    Schwartz-Zippel pre-check runs first, then the exact determinant is
    computed and the identity verified by polynomial subtraction."""
    rows = _as_rows(matrix)
    if isinstance(matrix, PresentationMatrix):
        deg_det = matrix.det_degree()
    else:
        a, b = infer_twists(rows)
        deg_det = sum(b) - sum(a)
    d = form.degree
    if deg_det <= 0 or deg_det % d != 0:
        raise DegreeIncompatible(
            f"determinant degree {deg_det} is not a positive multiple of "
            f"the form degree {d}"
        )
    r = deg_det // d
    sz_ok = schwartz_zippel_check(rows, form, r, trials=trials, seed=seed)
    s = len(rows)
    if s <= COFACTOR_LIMIT:
        det = det_exact(rows)
        method = "exact-cofactor"
    else:
        det = det_interpolated(rows, deg_det, seed=seed)
        method = "interpolated"
    field = form.field
    if det.is_zero():
        raise Mismatch("determinant vanishes identically", residual=det)
    power = form**r
    pm, pc = power.lead()
    lam_raw = field.mul(det.coeff(pm).rep, field.inv(pc))
    residual = det - power.scale(lam_raw)
    if field.is_zero(lam_raw) or not residual.is_zero():
        raise Mismatch(
            "determinant is not a scalar multiple of the expected power; "
            f"residual has {len(residual.terms)} terms of degree "
            f"{residual.degree}",
            residual=residual,
        )
    if not sz_ok:
        raise RuntimeError(
            "Schwartz-Zippel rejected an identity the exact check accepts"
        )
    profile = tuple(
        sorted(e.degree for row in rows for e in row if not e.is_zero())
    )
    return DetCertificate(
        size=s,
        r=r,
        lam=int(lam_raw),
        method=method,
        sz_trials=trials,
        degree_profile=profile,
    )


def degree_profile_check(pres: PresentationMatrix, ambient_dim: int) -> bool:
    """Every nonzero entry degree lies in [1, ambient_dim - 1]."""
    return all(
        1 <= deg <= ambient_dim - 1 for deg in pres.entry_degrees()
    )


def _is_alternating(rows) -> bool:
    s = len(rows)
    for i in range(s):
        if not rows[i][i].is_zero():
            return False
        for j in range(i + 1, s):
            if rows[j][i] != -rows[i][j]:
                return False
    return True


def skew_equivalence_probe(matrix, *, seed: int = 0, trials: int = 200):
    """Seeded search for constant invertible P, Q with P M Q alternating
    skew-symmetric; returns (P, Q) as numpy arrays or None.

    For each random invertible P the skewness of P M Q is linear in Q,
    so the probe solves that system and looks for an invertible point of
    the solution space.  Failure to find a witness proves nothing."""
    rows = _as_rows(matrix)
    s = len(rows)
    if s % 2:
        return None
    field = rows[0][0].field
    p = field.p
    nv = rows[0][0].nvars
    if _is_alternating(rows):
        eye = np.eye(s, dtype=np.int64)
        return eye, eye.copy()
    degs = {e.degree for r in rows for e in r if not e.is_zero()}
    if len(degs) != 1:
        return None  # constant row mixing needs a uniform entry degree
    (delta,) = degs
    monos = monomials_of_degree(nv, delta)
    rng = random.Random(seed)
    for _ in range(trials):
        pmat = np.array(
            [[rng.randrange(p) for _ in range(s)] for _ in range(s)],
            dtype=np.int64,
        )
        if linalg.det_mod(pmat, p) == 0:
            continue
        mixed = [
            [
                _int_combo(field, nv, delta, pmat[i], [rows[k][j] for k in range(s)])
                for j in range(s)
            ]
            for i in range(s)
        ]
        # constraints on q[k, j]: (LQ)[i][j] + (LQ)[j][i] = 0 for i < j,
        # and (LQ)[i][i] = 0, coefficientwise over the monomials
        eqs = []
        for i in range(s):
            for j in range(i, s):
                for m in monos:
                    row = np.zeros(s * s, dtype=np.int64)
                    for k in range(s):
                        c1 = mixed[i][k].terms.get(m, 0)
                        if c1:
                            row[k * s + j] = (row[k * s + j] + c1) % p
                        if i != j:
                            c2 = mixed[j][k].terms.get(m, 0)
                            if c2:
                                row[k * s + i] = (row[k * s + i] + c2) % p
                    if row.any():
                        eqs.append(row)
        if not eqs:
            continue
        basis = linalg.nullspace(np.stack(eqs), p)
        if basis.shape[1] == 0:
            continue
        for _ in range(25):
            combo = np.array(
                [rng.randrange(p) for _ in range(basis.shape[1])],
                dtype=np.int64,
            )
            qflat = basis @ combo % p
            qmat = qflat.reshape(s, s)
            if linalg.det_mod(qmat, p) == 0:
                continue
            candidate = transform_matrix(field, nv, delta, pmat, rows, qmat)
            if _is_alternating(candidate):
                return pmat, qmat
    return None


def _int_combo(field, nv, degree, coeffs, polys):
    acc = HomogPoly.zero(field, nv, degree)
    for c, poly in zip(coeffs, polys):
        c = int(c) % field.p
        if c and not poly.is_zero():
            acc = acc + poly.scale(c)
    return acc


def transform_matrix(field, nv, degree, pmat, rows, qmat):
    """P M Q for constant matrices P, Q and a polynomial matrix M whose
    nonzero entries all have the given degree."""
    s = len(rows)
    left = [
        [_int_combo(field, nv, degree, pmat[i], [rows[k][j] for k in range(s)])
         for j in range(s)]
        for i in range(s)
    ]
    return [
        [_int_combo(field, nv, degree, qmat[:, j], [left[i][k] for k in range(s)])
         for j in range(s)]
        for i in range(s)
    ]
