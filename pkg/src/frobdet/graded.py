"""Graded modules of twisted sections, built degree by degree over F_p.

A :class:`GradedModule` stores, for a finite window of degrees, the
dimension of each graded piece together with the matrices of the
multiplication maps by each variable.  Pieces are plain coordinate
spaces; builders that have natural monomial bases record them as labels.
Everything downstream (saturation, minimal generators, presentations)
is finite linear algebra on these matrices.

Conventions: action matrices map piece[m] -> piece[m+1] acting on
column vectors; all matrices are int64 numpy arrays with entries in
[0, p).  Modules are treated as immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    FreenessCheckFailed,
    NonInjectivePower,
    NoStabilization,
    NotSquare,
)
from .hypersurface import Hypersurface
from .poly import HomogPoly, count_monomials, mono_pow, monomials_of_degree


class GradedModule:
    def __init__(self, p, nvars, m_lo, m_hi, dims, actions, labels=None,
                 provenance=""):
        self.p = p
        self.nvars = nvars
        self.m_lo = m_lo
        self.m_hi = m_hi
        self.dims = dict(dims)
        self.actions = dict(actions)
        self.labels = dict(labels or {})
        self.provenance = provenance

    def dim(self, m: int) -> int:
        if m < self.m_lo or m > self.m_hi:
            raise ValueError(
                f"degree {m} outside the materialized range "
                f"[{self.m_lo}, {self.m_hi}] of this module"
            )
        return self.dims[m]

    def action(self, i: int, m: int) -> np.ndarray:
        return self.actions[(i, m)]

    def act_monomial(self, mono, m: int) -> np.ndarray:
        """Matrix of multiplication by a monomial, piece[m] -> piece[m+deg]."""
        mat = np.eye(self.dim(m), dtype=np.int64)
        deg = m
        for i, e in enumerate(mono):
            for _ in range(e):
                mat = self.action(i, deg) @ mat % self.p
                deg += 1
        return mat

    def hilbert_function(self) -> dict:
        return {m: self.dims[m] for m in range(self.m_lo, self.m_hi + 1)}

    def twist(self, t: int) -> "GradedModule":
        """Pieces of the twist: piece'[m] = piece[m + t]."""
        dims = {m - t: d for m, d in self.dims.items()}
        actions = {(i, m - t): a for (i, m), a in self.actions.items()}
        labels = {m - t: v for m, v in self.labels.items()}
        return GradedModule(
            self.p, self.nvars, self.m_lo - t, self.m_hi - t, dims, actions,
            labels, provenance=f"{self.provenance}(twist {t:+d})",
        )

    def restricted(self, m_lo: int, m_hi: int, provenance=None) -> "GradedModule":
        if m_lo < self.m_lo or m_hi > self.m_hi:
            raise ValueError("restriction exceeds the materialized range")
        dims = {m: self.dims[m] for m in range(m_lo, m_hi + 1)}
        actions = {
            (i, m): self.actions[(i, m)]
            for i in range(self.nvars)
            for m in range(m_lo, m_hi)
        }
        labels = {m: self.labels[m] for m in range(m_lo, m_hi + 1)
                  if m in self.labels}
        return GradedModule(
            self.p, self.nvars, m_lo, m_hi, dims, actions, labels,
            provenance=provenance or self.provenance,
        )

    def verify_commutative(self):
        """Check action(x_i) o action(x_j) = action(x_j) o action(x_i) on
        the whole materialized range; raises on violation (internal bug)."""
        p = self.p
        for m in range(self.m_lo, self.m_hi - 1):
            for i in range(self.nvars):
                for j in range(i + 1, self.nvars):
                    lhs = self.action(i, m + 1) @ self.action(j, m) % p
                    rhs = self.action(j, m + 1) @ self.action(i, m) % p
                    if not np.array_equal(lhs, rhs):
                        raise RuntimeError(
                            f"variable actions x_{i}, x_{j} fail to commute "
                            f"at degree {m} ({self.provenance})"
                        )

    def __repr__(self):
        return (
            f"GradedModule({self.provenance!r}, range=[{self.m_lo}, "
            f"{self.m_hi}], dims={[self.dims[m] for m in range(self.m_lo, self.m_hi + 1)]})"
        )


class _QuotientSpace:
    """Coordinates on F^n / span(columns), with explicit representatives.

    The complement basis consists of the coordinate vectors at the
    non-pivot positions of the row-reduced span, so quotient classes
    keep canonical lifts.
    """

    def __init__(self, span_cols: np.ndarray, ambient: int, p: int):
        self.p = p
        self.ambient = ambient
        if span_cols.size == 0:
            self.rows = np.zeros((0, ambient), dtype=np.int64)
            self.pivots = []
        else:
            reduced, pivots = linalg.rref(span_cols.T, p)
            self.rows = reduced[: len(pivots)]
            self.pivots = pivots
        in_span = set(self.pivots)
        self.free = [i for i in range(ambient) if i not in in_span]

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, vecs: np.ndarray) -> np.ndarray:
        """Quotient coordinates of the columns of vecs."""
        v = vecs % self.p
        if self.pivots:
            v = (v - self.rows.T @ v[self.pivots, :]) % self.p
        return v[self.free, :]


def _nf_vector(ring, mono, target_degree: int) -> np.ndarray:
    """Normal form of a monomial as a column over the standard basis."""
    index = ring.basis_index(target_degree)
    vec = np.zeros(len(index), dtype=np.int64)
    for m, c in ring.normal_form_mono(mono).items():
        vec[index[m]] = c
    return vec


def coordinate_ring_module(h: Hypersurface, m_hi: int) -> GradedModule:
    """The coordinate ring S/(form) itself as a graded module (pieces A_m)."""
    ring = h.ring
    p = h.p
    nv = h.nvars
    dims, labels, actions = {}, {}, {}
    for m in range(0, m_hi + 1):
        basis = ring.basis(m)
        dims[m] = len(basis)
        labels[m] = basis
    for m in range(0, m_hi):
        for i in range(nv):
            cols = [
                _nf_vector(ring, mu[:i] + (mu[i] + 1,) + mu[i + 1 :], m + 1)
                for mu in ring.basis(m)
            ]
            actions[(i, m)] = (
                np.stack(cols, axis=1) if cols else
                np.zeros((dims[m + 1], 0), dtype=np.int64)
            )
    module = GradedModule(p, nv, 0, m_hi, dims, actions, labels,
                          provenance="coordinate-ring")
    module.verify_commutative()
    return module


def frobenius_pushforward_module(h: Hypersurface, m_hi: int) -> GradedModule:
    """Sections of the Frobenius pushforward of the structure sheaf.

    The degree-m piece is A_{pm} with its standard monomial basis; the
    variable x_i acts through multiplication by x_i^p followed by
    reduction, matching the twisted module structure of the pushforward.
    """
    ring = h.ring
    p = h.p
    nv = h.nvars
    dims, labels, actions = {}, {}, {}
    for m in range(0, m_hi + 1):
        basis = ring.basis(p * m)
        dims[m] = len(basis)
        labels[m] = basis
    for m in range(0, m_hi):
        for i in range(nv):
            cols = [
                _nf_vector(
                    ring,
                    mu[:i] + (mu[i] + p,) + mu[i + 1 :],
                    p * (m + 1),
                )
                for mu in ring.basis(p * m)
            ]
            actions[(i, m)] = (
                np.stack(cols, axis=1) if cols else
                np.zeros((dims[m + 1], 0), dtype=np.int64)
            )
    module = GradedModule(p, nv, 0, m_hi, dims, actions, labels,
                          provenance="pushforward")
    module.verify_commutative()
    return module


def exact_differentials_module(h: Hypersurface, m_hi: int) -> GradedModule:
    """Sections of the sheaf of locally exact differentials, realized
    degree by degree as coker(A_m -> A_{pm}, f -> f^p mod form).

    The p-th power map is F_p-linear and must be injective in every
    degree (it is whenever the form is reduced); a kernel raises
    NonInjectivePower and the input is rejected.
    """
    ring = h.ring
    p = h.p
    nv = h.nvars
    dims, labels, actions = {}, {}, {}
    quots = {}
    for m in range(0, m_hi + 1):
        low = ring.basis(m)
        high = ring.basis(p * m)
        if low:
            power_cols = np.stack(
                [_nf_vector(ring, mono_pow(mu, p), p * m) for mu in low],
                axis=1,
            )
            if linalg.rank(power_cols, p) != len(low):
                raise NonInjectivePower(
                    f"p-th power map has a kernel in degree {m}; "
                    "the defining form is not reduced"
                )
        else:
            power_cols = np.zeros((len(high), 0), dtype=np.int64)
        quots[m] = _QuotientSpace(power_cols, len(high), p)
        dims[m] = quots[m].dim
        labels[m] = tuple(high[q] for q in quots[m].free)
    for m in range(0, m_hi):
        high_next = p * (m + 1)
        for i in range(nv):
            reps = labels[m]
            if reps:
                raw = np.stack(
                    [
                        _nf_vector(
                            ring, mu[:i] + (mu[i] + p,) + mu[i + 1 :], high_next
                        )
                        for mu in reps
                    ],
                    axis=1,
                )
            else:
                raw = np.zeros((len(ring.basis(high_next)), 0), dtype=np.int64)
            actions[(i, m)] = quots[m + 1].project(raw)
    module = GradedModule(p, nv, 0, m_hi, dims, actions, labels,
                          provenance="exact-differentials")
    module.verify_commutative()
    return module


# ---------------------------------------------------------------------------
# Saturation via Hom((x_0..x_n)^N, M) with stabilization detection.


def _hom_solution_basis(module: GradedModule, m: int, power: int) -> np.ndarray:
    """Basis (as columns) of the degree-m piece of Hom(max-ideal^power, M).

    An element assigns to each degree-``power`` monomial mu a value
    v_mu in piece[m+power], subject to x_a v_{nu/x_a} = x_b v_{nu/x_b}
    for every degree-(power+1) monomial nu divisible by both variables.
    Chained over the divisors of each nu these pairwise constraints
    generate all syzygies of the power of the maximal ideal.
    """
    p = module.p
    nv = module.nvars
    monos = monomials_of_degree(nv, power)
    offset = {mu: t for t, mu in enumerate(monos)}
    dim_v = module.dim(m + power)
    dim_c = module.dim(m + power + 1)
    unknowns = len(monos) * dim_v
    if dim_v == 0:
        return np.zeros((unknowns, 0), dtype=np.int64)
    acts = [module.action(i, m + power) for i in range(nv)]
    blocks = []
    for nu in monomials_of_degree(nv, power + 1):
        divisors = [i for i in range(nv) if nu[i] > 0]
        for a, b in zip(divisors, divisors[1:]):
            row = np.zeros((dim_c, unknowns), dtype=np.int64)
            mu_a = nu[:a] + (nu[a] - 1,) + nu[a + 1 :]
            mu_b = nu[:b] + (nu[b] - 1,) + nu[b + 1 :]
            ca = offset[mu_a] * dim_v
            cb = offset[mu_b] * dim_v
            row[:, ca : ca + dim_v] = acts[a]
            row[:, cb : cb + dim_v] = (row[:, cb : cb + dim_v] - acts[b]) % p
            blocks.append(row)
    if not blocks:
        return np.eye(unknowns, dtype=np.int64)
    system = np.vstack(blocks)
    return linalg.nullspace(system, p)


def saturate(module: GradedModule, m_lo: int, m_hi: int, *,
             max_power: int | None = None, extend=None) -> GradedModule:
    """Saturated module on [m_lo, m_hi].

    For each degree the dimension of Hom(max-ideal^N, M) is tracked
    until two consecutive powers agree; the whole module is then
    rebuilt at the largest stabilizing power (power 0 means the input
    was already saturated and is returned restricted as-is).

    ``extend`` may be a callable hi -> GradedModule used to rematerialize
    the input to a larger degree window when stabilization needs it;
    without it an insufficient window raises NoStabilization.
    """
    cap = max_power if max_power is not None else 8
    working = module

    def ensure(hi_needed: int):
        nonlocal working
        if hi_needed > working.m_hi:
            if extend is None:
                raise NoStabilization(
                    f"saturation needs pieces through degree {hi_needed} but "
                    f"the module is materialized only to {working.m_hi}; "
                    "rebuild with a larger window"
                )
            working = extend(hi_needed)
            if working.m_hi < hi_needed:
                raise NoStabilization(
                    f"extension callback returned range ending at "
                    f"{working.m_hi}, need {hi_needed}"
                )

    stable_power = {}
    stable_dim = {}
    for m in range(m_lo, m_hi + 1):
        ensure(m + 1)
        prev = working.dim(m)
        power = 0
        while True:
            ensure(m + power + 2)
            nxt = _hom_solution_basis(working, m, power + 1).shape[1]
            if nxt == prev:
                stable_power[m] = power
                stable_dim[m] = prev
                break
            prev = nxt
            power += 1
            if power > cap:
                raise NoStabilization(
                    f"saturation dimensions at degree {m} did not stabilize "
                    f"within ideal-power cap {cap}"
                )

    top = max(stable_power.values())
    if top == 0:
        return working.restricted(m_lo, m_hi, provenance="saturated")

    ensure(m_hi + top + 1)
    bases = {}
    for m in range(m_lo, m_hi + 1):
        bases[m] = _hom_solution_basis(working, m, top)
        if bases[m].shape[1] != stable_dim[m]:
            raise NoStabilization(
                f"dimension at degree {m} changed between ideal powers "
                f"({stable_dim[m]} vs {bases[m].shape[1]}); window too small"
            )
    p = working.p
    nv = working.nvars
    dims = {m: bases[m].shape[1] for m in bases}
    actions = {}
    n_monos = count_monomials(nv, top)
    for m in range(m_lo, m_hi):
        dim_v = working.dim(m + top)
        dim_w = working.dim(m + top + 1)
        s = dims[m]
        if s == 0 or dims[m + 1] == 0:
            for i in range(nv):
                actions[(i, m)] = np.zeros((dims[m + 1], s), dtype=np.int64)
            continue
        src = bases[m].reshape(n_monos, dim_v, s)
        for i in range(nv):
            act = working.action(i, m + top)
            moved = (act @ src) % p  # batched over the monomial blocks
            ambient = moved.reshape(n_monos * dim_w, s)
            actions[(i, m)] = linalg.solve_in_span(bases[m + 1], ambient, p)
    out = GradedModule(p, nv, m_lo, m_hi, dims, actions,
                       provenance="saturated")
    out.verify_commutative()
    return out


# ---------------------------------------------------------------------------
# Minimal generators and the square presentation.


def minimal_generators(module: GradedModule, up_to: int):
    """Minimal generator degrees and coordinate vectors, scanning degrees
    m_lo..up_to.  The module is assumed to vanish below its window."""
    p = module.p
    out = []
    for m in range(module.m_lo, up_to + 1):
        dim_m = module.dim(m)
        if dim_m == 0:
            continue
        if m - 1 < module.m_lo:
            span = np.zeros((dim_m, 0), dtype=np.int64)
        else:
            span = np.hstack(
                [module.action(i, m - 1) for i in range(module.nvars)]
            )
        quot = _QuotientSpace(span, dim_m, p)
        for q in quot.free:
            vec = np.zeros(dim_m, dtype=np.int64)
            vec[q] = 1
            out.append((m, vec))
    return out


@dataclass(frozen=True)
class PresentationMatrix:
    """Square matrix of a two-term resolution by free modules.

    Row j belongs to the generator with twist gen_degrees[j]; column i
    to the relation with twist rel_degrees[i]; the (j, i) entry is
    homogeneous of degree rel_degrees[i] - gen_degrees[j] (or zero).
    """

    gen_degrees: tuple
    rel_degrees: tuple
    entries: tuple  # tuple of rows, each a tuple of HomogPoly

    def __post_init__(self):
        if len(self.gen_degrees) != len(self.rel_degrees):
            raise NotSquare(
                f"{len(self.gen_degrees)} generators vs "
                f"{len(self.rel_degrees)} relations"
            )
        for j, row in enumerate(self.entries):
            for i, entry in enumerate(row):
                want = self.rel_degrees[i] - self.gen_degrees[j]
                if entry.is_zero():
                    continue
                if entry.degree != want:
                    raise ValueError(
                        f"entry ({j}, {i}) has degree {entry.degree}, "
                        f"expected {want}"
                    )
                if want == 0:
                    raise ValueError(
                        f"nonzero constant entry at ({j}, {i}) violates "
                        "minimality"
                    )

    @property
    def size(self) -> int:
        return len(self.gen_degrees)

    def rows(self):
        return [list(r) for r in self.entries]

    def entry_degrees(self):
        """Multiset (sorted tuple) of nonzero entry degrees."""
        degs = [
            e.degree for row in self.entries for e in row if not e.is_zero()
        ]
        return tuple(sorted(degs))

    def det_degree(self) -> int:
        return sum(self.rel_degrees) - sum(self.gen_degrees)


@dataclass(frozen=True)
class BettiData:
    gen_degrees: tuple
    rel_degrees: tuple
    regularity: int
    rank: int
    hilbert: dict


def presentation(module: GradedModule, h: Hypersurface, e_max: int, *,
                 gens_up_to: int | None = None) -> PresentationMatrix:
    """Square presentation matrix of the module, by minimal generators
    and minimal first syzygies through degree e_max.

    Kernel dimensions in the two degrees past e_max are compared against
    the free-module prediction, so a missed relation (window too small,
    or a module without the expected length-1 resolution) is detected
    rather than silently truncated.
    """
    p = module.p
    nv = module.nvars
    field = h.field
    gens = minimal_generators(
        module, e_max - 1 if gens_up_to is None else gens_up_to
    )
    if not gens:
        raise NotSquare("module has no generators in the scanned range")
    gen_degrees = tuple(m for m, _ in gens)

    # Multiples of each generator, filled degree by degree: each monomial
    # is reached from its first-variable parent, so one action matrix
    # multiply per monomial.
    e_top = e_max + 2
    if e_top > module.m_hi:
        raise ValueError(
            f"presentation through degree {e_max} needs pieces up to degree "
            f"{e_top}; module ends at {module.m_hi}"
        )
    multiples = []  # per generator: {degree: {mono: vector}}
    for a_j, g in gens:
        layers = {a_j: {(0,) * nv: g % p}}
        for t in range(a_j + 1, e_top + 1):
            layer = {}
            prev = layers[t - 1]
            for nu in monomials_of_degree(nv, t - a_j):
                i0 = next(i for i in range(nv) if nu[i] > 0)
                parent = nu[:i0] + (nu[i0] - 1,) + nu[i0 + 1 :]
                layer[nu] = module.action(i0, t - 1) @ prev[parent] % p
            layers[t] = layer
        multiples.append(layers)

    def layout(e):
        """Column layout at degree e: list of (gen index, monomial)."""
        cols = []
        for j, a_j in enumerate(gen_degrees):
            if e < a_j:
                continue
            for mu in monomials_of_degree(nv, e - a_j):
                cols.append((j, mu))
        return cols

    rel_degrees = []
    rel_vectors = []  # (degree, coords over its layout)
    prev_kernel = None
    prev_layout = None
    freeness = {}
    for e in range(min(gen_degrees), e_top + 1):
        cols = layout(e)
        if cols:
            phi = np.stack(
                [multiples[j][e][mu] for j, mu in cols], axis=1
            ) if module.dim(e) else np.zeros((0, len(cols)), dtype=np.int64)
            kernel = linalg.nullspace(phi, p)
        else:
            kernel = np.zeros((0, 0), dtype=np.int64)
        if e <= e_max:
            if prev_kernel is not None and prev_kernel.shape[1]:
                pos = {cm: idx for idx, cm in enumerate(cols)}
                shifted = []
                for i in range(nv):
                    img = np.zeros((len(cols), prev_kernel.shape[1]),
                                   dtype=np.int64)
                    dst = [
                        pos[(j, mu[:i] + (mu[i] + 1,) + mu[i + 1 :])]
                        for j, mu in prev_layout
                    ]
                    img[dst] = prev_kernel
                    shifted.append(img)
                images = np.hstack(shifted)
                coords = linalg.solve_in_span(kernel, images, p) \
                    if kernel.shape[1] else np.zeros((0, images.shape[1]),
                                                     dtype=np.int64)
                quot = _QuotientSpace(coords, kernel.shape[1], p)
                new_cols = quot.free
            else:
                new_cols = list(range(kernel.shape[1]))
            for q in new_cols:
                rel_degrees.append(e)
                rel_vectors.append((e, cols, kernel[:, q]))
        else:
            freeness[e] = kernel.shape[1]
        prev_kernel = kernel
        prev_layout = cols

    if len(rel_degrees) != len(gen_degrees):
        raise NotSquare(
            f"{len(gen_degrees)} generators but {len(rel_degrees)} minimal "
            f"relations through degree {e_max}"
        )
    for e, observed in freeness.items():
        predicted = sum(count_monomials(nv, e - b) for b in rel_degrees)
        if observed != predicted:
            raise FreenessCheckFailed(
                f"kernel dimension {observed} at degree {e} differs from "
                f"the free prediction {predicted}"
            )

    # Assemble polynomial entries: rows by generator, columns by relation.
    entries = []
    for j, a_j in enumerate(gen_degrees):
        row = []
        for e, cols, vec in rel_vectors:
            terms = {}
            for (jj, mu), c in zip(cols, vec):
                if jj == j and c:
                    terms[mu] = int(c)
            row.append(HomogPoly(field, nv, max(e - a_j, 0), terms))
        entries.append(tuple(row))
    return PresentationMatrix(
        gen_degrees=gen_degrees,
        rel_degrees=tuple(rel_degrees),
        entries=tuple(entries),
    )


def hilbert_function(module: GradedModule) -> dict:
    return module.hilbert_function()


def regularity_from_betti(pres: PresentationMatrix) -> int:
    """max relation twist minus one (valid for saturated modules with a
    length-1 free resolution)."""
    return max(pres.rel_degrees) - 1


def is_ulrich_presentation(pres: PresentationMatrix, h: Hypersurface) -> bool:
    """Generators all in degree 0, relations all in degree 1, and size
    d(p-1): the linear shape that yields linear determinantal equations
    for plane curves."""
    expected = h.degree * (h.p - 1)
    return (
        all(a == 0 for a in pres.gen_degrees)
        and all(b == 1 for b in pres.rel_degrees)
        and pres.size == expected
    )
