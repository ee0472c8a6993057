"""Exact arithmetic over F_p and small extension fields F_{p^k}.

Elements are held in a canonical raw representation: an integer in
``[0, p)`` when k = 1, and a tuple of k such integers (coefficients of
1, t, ..., t^(k-1) modulo the defining polynomial) when k > 1.  The
:class:`FiniteField` object owns all arithmetic on raw values;
:class:`FieldElement` is a thin operator-overloading wrapper around
them for callers who prefer infix notation.
"""

from __future__ import annotations

import itertools

from .errors import VarMismatch, ZeroInverse

PRIME_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for p < 2^16."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Univariate polynomial helpers over F_p.  Polynomials are tuples of
# coefficients in little-endian order (index i holds the t^i coefficient),
# always trimmed so the last entry is nonzero (the zero polynomial is ()).


def _uni_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _uni_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _uni_trim(out)


def _uni_mod(a, b, p):
    """Remainder of a modulo b (b monic nonzero)."""
    a = list(a)
    db, dn = len(b) - 1, len(a) - 1
    while dn >= db:
        c = a[dn]
        if c:
            for i in range(db + 1):
                a[dn - db + i] = (a[dn - db + i] - c * b[i]) % p
        dn -= 1
    return _uni_trim(a)


def _monic_polys(p, deg):
    """All monic univariate polynomials of exact degree deg over F_p."""
    for tail in itertools.product(range(p), repeat=deg):
        yield tail + (1,)


def _uni_is_irreducible(poly, p):
    """Exhaustive trial division by every monic factor of degree <= deg/2."""
    deg = len(poly) - 1
    for fdeg in range(1, deg // 2 + 1):
        for f in _monic_polys(p, fdeg):
            if not _uni_mod(poly, f, p):
                return False
    return True


def find_irreducible(p: int, k: int):
    """Smallest monic irreducible of degree k over F_p.

    Candidates t^k + c_{k-1} t^{k-1} + ... + c_0 are enumerated by the
    integer value sum(c_i * p^i), so the result is deterministic.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if k < 2:
        raise ValueError("extension degree must be >= 2")
    for v in range(p**k):
        tail = []
        w = v
        for _ in range(k):
            tail.append(w % p)
            w //= p
        cand = tuple(tail) + (1,)
        if _uni_is_irreducible(cand, p):
            return cand
    raise AssertionError("unreachable: irreducibles exist for every (p, k)")


class FiniteField:
    """The field F_p (k = 1) or F_{p^k} with a monic irreducible modulus.

    Raw representations: ints in [0, p) for k = 1, tuples of k such ints
    otherwise.  All methods taking raw values are pure.
    """

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic {p!r} is not prime")
        if p >= PRIME_LIMIT:
            raise ValueError(f"p = {p} exceeds the 2^16 limit")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if k == 1:
            if modulus is not None:
                raise ValueError("k = 1 takes no modulus")
        else:
            if modulus is None:
                modulus = find_irreducible(p, k)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _uni_is_irreducible(modulus, p):
                raise ValueError("modulus is reducible over F_p")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        if k > 1:
            # reduction of t^k .. t^(2k-2) modulo the defining polynomial
            self._red = []
            cur = _uni_mod((0,) * k + (1,), modulus, p)
            for _ in range(k - 1):
                self._red.append(cur + (0,) * (k - len(cur)))
                cur = _uni_mod((0,) + cur, modulus, p)

    # -- construction -------------------------------------------------

    def coerce(self, value):
        """Raw representation of an int, tuple or FieldElement."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise VarMismatch("element belongs to a different field")
            return value.rep
        if isinstance(value, int):
            v = value % self.p
            return v if self.k == 1 else (v,) + (0,) * (self.k - 1)
        if self.k > 1 and isinstance(value, (tuple, list)):
            if len(value) > self.k:
                raise ValueError("coefficient vector too long")
            v = tuple(c % self.p for c in value)
            return v + (0,) * (self.k - len(v))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def from_index(self, i: int):
        """Raw element number i under base-p digit order (0 <= i < order)."""
        if self.k == 1:
            return i % self.p
        digits = []
        for _ in range(self.k):
            digits.append(i % self.p)
            i //= self.p
        return tuple(digits)

    def elements(self):
        """Iterate every raw element (small fields only)."""
        for i in range(self.order):
            yield self.from_index(i)

    def random(self, rng):
        """Uniform raw element drawn from rng."""
        return self.from_index(rng.randrange(self.order))

    # -- raw arithmetic -----------------------------------------------

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p = self.p
        if self.k == 1:
            return (a * b) % p
        k = self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        out = list(prod[:k])
        for d in range(k, 2 * k - 1):
            c = prod[d]
            if c:
                red = self._red[d - k]
                for i in range(k):
                    out[i] = (out[i] + c * red[i]) % p
        return tuple(out)

    def is_zero(self, a) -> bool:
        return a == 0 if self.k == 1 else not any(a)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p)
        result = self.coerce(1)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        """Multiplicative inverse via a^(q-2) = a^(-1) in F_q."""
        if self.is_zero(a):
            raise ZeroInverse("0 has no multiplicative inverse")
        return self.pow(a, self.order - 2)

    def frobenius(self, a, t: int = 1):
        """a^(p^t); the identity on F_p."""
        if self.k == 1:
            return a
        return self.pow(a, self.p**t)

    def in_prime_subfield(self, a) -> bool:
        return True if self.k == 1 else not any(a[1:])

    # -- misc -----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, k={self.k}, modulus={self.modulus})"


class FieldElement:
    """A field element bound to its field, with operator overloads."""

    __slots__ = ("field", "rep")

    def __init__(self, field: FiniteField, rep):
        self.field = field
        self.rep = rep

    def _raw(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise VarMismatch("elements belong to different fields")
            return other.rep
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.rep, self._raw(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.rep, self._raw(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._raw(other), self.rep))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.rep, self._raw(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.rep))

    def __truediv__(self, other):
        return FieldElement(
            self.field, self.field.mul(self.rep, self.field.inv(self._raw(other)))
        )

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.rep, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.rep))

    def is_zero(self):
        return self.field.is_zero(self.rep)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.rep == other.rep
        try:
            return self.rep == self.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.rep))

    def __repr__(self):
        return f"FieldElement({self.rep!r} over {self.field!r})"
