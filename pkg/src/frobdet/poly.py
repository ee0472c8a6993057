"""Sparse homogeneous multivariate polynomials over a finite field.

Monomials are exponent tuples of length nvars.  The global term order is
graded lexicographic with x0 > x1 > ... > xn; inside one (homogeneous)
polynomial all monomials share the total degree, so plain tuple
comparison orders terms.  Coefficients are stored in the raw
representation of the owning :class:`~frobdet.fields.FiniteField` and
zero coefficients are never stored; the zero polynomial is an empty term
map with an explicit degree tag.
"""

from __future__ import annotations

from .errors import NotHomogeneous, ParseError, VarMismatch, ZeroModP
from .fields import FieldElement, FiniteField

# ---------------------------------------------------------------------------
# Monomial helpers (exponent tuples)


def mono_degree(m) -> int:
    return sum(m)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))

def mono_divides(a, b) -> bool:
    """True if a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """Exponent difference a - b (caller ensures divisibility)."""
    return tuple(x - y for x, y in zip(a, b))


def mono_pow(m, e: int):
    return tuple(x * e for x in m)


def monomials_of_degree(nvars: int, degree: int):
    """All exponent tuples of the given total degree, descending graded-lex."""
    if degree < 0:
        return []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


def count_monomials(nvars: int, degree: int) -> int:
    """dim of the degree piece of k[x_0..x_{nvars-1}] (binomial count)."""
    if degree < 0:
        return 0
    out = 1
    for i in range(1, nvars):
        out = out * (degree + i) // i
    return out


class HomogPoly:
    """A homogeneous polynomial; immutable once constructed."""

    __slots__ = ("field", "nvars", "degree", "terms", "_hash")

    def __init__(self, field: FiniteField, nvars: int, degree: int, terms=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("degree must be >= 0")
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono}")
            if sum(mono) != degree:
                raise NotHomogeneous(
                    f"monomial {mono} has degree {sum(mono)}, expected {degree}"
                )
            c = field.coerce(coeff)
            if not field.is_zero(c):
                clean[mono] = c
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field, nvars, degree=0):
        return cls(field, nvars, degree, {})

    @classmethod
    def constant(cls, field, nvars, value):
        return cls(field, nvars, 0, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field, nvars, i):
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range")
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, 1, {mono: 1})

    @classmethod
    def monomial(cls, field, nvars, mono, coeff=1):
        return cls(field, nvars, sum(mono), {tuple(mono): coeff})

    @classmethod
    def random(cls, field, nvars, degree, rng):
        """Uniform coefficients over every monomial of the degree."""
        terms = {m: field.random(rng) for m in monomials_of_degree(nvars, degree)}
        return cls(field, nvars, degree, terms)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def lead(self):
        """(monomial, raw coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms)
        return m, self.terms[m]

    def coeff(self, mono) -> FieldElement:
        """Coefficient at an exponent vector; 0 for absent or formally
        negative exponents."""
        mono = tuple(mono)
        if any(e < 0 for e in mono):
            return self.field.zero
        return FieldElement(self.field, self.terms.get(mono, self.field.coerce(0)))

    def _check_compat(self, other):
        if not isinstance(other, HomogPoly):
            raise TypeError(f"expected HomogPoly, got {type(other).__name__}")
        if self.nvars != other.nvars or self.field != other.field:
            raise VarMismatch("operands differ in variable count or field")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        self._check_compat(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise NotHomogeneous(
                f"cannot add degrees {self.degree} and {other.degree}"
            )
        field = self.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(terms[m], c) if m in terms else c
            if field.is_zero(s):
                terms.pop(m, None)
            else:
                terms[m] = s
        return HomogPoly(field, self.nvars, self.degree, terms)

    def __neg__(self):
        field = self.field
        return HomogPoly(
            field,
            self.nvars,
            self.degree,
            {m: field.neg(c) for m, c in self.terms.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        self._check_compat(other)
        field = self.field
        degree = self.degree + other.degree
        out = {}
        if field.k == 1:
            p = field.p
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    m = tuple(x + y for x, y in zip(ma, mb))
                    c = (out.get(m, 0) + ca * cb) % p
                    if c:
                        out[m] = c
                    else:
                        out.pop(m, None)
        else:
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    m = tuple(x + y for x, y in zip(ma, mb))
                    c = field.add(out.get(m, field.coerce(0)), field.mul(ca, cb))
                    if field.is_zero(c):
                        out.pop(m, None)
                    else:
                        out[m] = c
        return HomogPoly(field, self.nvars, degree, out)

    __rmul__ = __mul__

    def scale(self, c) -> "HomogPoly":
        field = self.field
        c = field.coerce(c)
        if field.is_zero(c):
            return HomogPoly.zero(field, self.nvars, self.degree)
        return HomogPoly(
            field,
            self.nvars,
            self.degree,
            {m: field.mul(v, c) for m, v in self.terms.items()},
        )

    def _term_power(self, q: int) -> "HomogPoly":
        """Termwise q-th power where q is a power of the characteristic."""
        field = self.field
        return HomogPoly(
            field,
            self.nvars,
            self.degree * q,
            {mono_pow(m, q): field.pow(c, q) for m, c in self.terms.items()},
        )

    def _small_pow(self, e: int) -> "HomogPoly":
        result = HomogPoly.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __pow__(self, e: int) -> "HomogPoly":
        """Exact power; digits of e in base p use the termwise-Frobenius
        shortcut f^(p^t) before combining by multiplication."""
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            return HomogPoly.constant(self.field, self.nvars, 1)
        if self.is_zero():
            return HomogPoly.zero(self.field, self.nvars, self.degree * e)
        p = self.field.p
        if e < p:
            return self._small_pow(e)
        result = HomogPoly.constant(self.field, self.nvars, 1)
        q = 1  # current power of p
        while e:
            digit = e % p
            if digit:
                result = result * self._small_pow(digit)._term_power(q)
            e //= p
            q *= p
        return result

    def partial(self, i: int) -> "HomogPoly":
        """Partial derivative with respect to x_i (degree drops by one)."""
        field = self.field
        out = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            cc = field.mul(c, field.coerce(m[i]))
            if field.is_zero(cc):
                continue
            mm = m[:i] + (m[i] - 1,) + m[i + 1 :]
            out[mm] = cc
        return HomogPoly(field, self.nvars, max(self.degree - 1, 0), out)

    def evaluate(self, point, field: FiniteField | None = None):
        """Evaluate at a point with coordinates in ``field`` (default: the
        coefficient field); coefficients are lifted along F_p -> F_{p^k}."""
        target = field or self.field
        if target.p != self.field.p:
            raise VarMismatch("evaluation field has a different characteristic")
        if self.field.k > 1 and target != self.field:
            raise VarMismatch("cannot lift extension coefficients")
        if len(point) != self.nvars:
            raise VarMismatch("point has wrong number of coordinates")
        pt = [target.coerce(x) for x in point]
        acc = target.coerce(0)
        for m, c in self.terms.items():
            term = target.coerce(c) if self.field.k == 1 else c
            for x, e in zip(pt, m):
                if e:
                    term = target.mul(term, target.pow(x, e))
            acc = target.add(acc, term)
        return acc

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if self.field != other.field or self.nvars != other.nvars:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.field, self.nvars, self.degree if self.terms else -1,
                 frozenset(self.terms.items()))
            )
        return self._hash

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def to_text(self) -> str:
        """Render in the input grammar (prime fields only)."""
        if self.field.k != 1:
            raise ValueError("text form is defined for prime-field polynomials")
        if self.is_zero():
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(f"x{i}")
                elif e > 1:
                    factors.append(f"x{i}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        txt = self.to_text() if self.field.k == 1 else f"<{len(self.terms)} terms>"
        return f"HomogPoly({txt!r}, deg={self.degree}, F_{self.field.p}^{self.field.k})"


# ---------------------------------------------------------------------------
# Text grammar:
#   poly      := term (('+'|'-') term)*
#   term      := coeff ('*'? monfactor)* | monfactor ('*'? monfactor)*
#   monfactor := var ('^' uint)?
#   var       := 'x' uint | one of {x,y,z,w} aliased to x0..x3
#   coeff     := uint
# Whitespace is insignificant; coefficients are reduced mod p on parse.

_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        ch = self.peek()
        self.pos += 1
        return ch

    def uint(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an unsigned integer", start)
        return int(self.text[start : self.pos])


def _parse_monfactor(sc: _Scanner, nvars_seen):
    ch = sc.peek()
    pos = sc.pos
    if ch not in _ALIASES:
        raise ParseError(f"expected a variable, found {ch!r}", pos)
    sc.take()
    if ch == "x" and sc.pos < len(sc.text) and sc.text[sc.pos].isdigit():
        idx = sc.uint()
    else:
        idx = _ALIASES[ch]
    exp = 1
    if sc.peek() == "^":
        sc.take()
        exp = sc.uint()
    nvars_seen[0] = max(nvars_seen[0], idx + 1)
    return idx, exp


def _parse_term(sc: _Scanner, nvars_seen):
    coeff = 1
    factors = []
    if sc.peek().isdigit():
        coeff = sc.uint()
    else:
        factors.append(_parse_monfactor(sc, nvars_seen))
    while True:
        ch = sc.peek()
        if ch == "*":
            sc.take()
            factors.append(_parse_monfactor(sc, nvars_seen))
        elif ch in _ALIASES:
            factors.append(_parse_monfactor(sc, nvars_seen))
        else:
            break
    return coeff, factors


def parse_poly(text: str, field: FiniteField, nvars: int | None = None) -> HomogPoly:
    """Parse polynomial text into a HomogPoly over ``field``.

    Raises ParseError (position-annotated), NotHomogeneous for mixed
    degrees, and ZeroModP if every coefficient dies mod p.
    """
    sc = _Scanner(text)
    nvars_seen = [0]
    raw_terms = []  # (sign, coeff, factors)
    sign = 1
    if sc.peek() in "+-":  # tolerate a leading sign
        if sc.take() == "-":
            sign = -1
    while True:
        pos = sc.pos
        if not sc.peek():
            raise ParseError("expected a term", pos)
        coeff, factors = _parse_term(sc, nvars_seen)
        raw_terms.append((sign, coeff, factors))
        ch = sc.peek()
        if ch == "":
            break
        if ch not in "+-":
            raise ParseError(f"unexpected character {ch!r}", sc.pos)
        sign = 1 if sc.take() == "+" else -1

    n = nvars_seen[0] if nvars is None else nvars
    if n == 0:
        raise ParseError("no variables found", 0)
    degrees = set()
    accum = {}
    for sgn, coeff, factors in raw_terms:
        expo = [0] * n
        for idx, e in factors:
            if idx >= n:
                raise ParseError(
                    f"variable x{idx} exceeds the declared {n} variables", None
                )
            expo[idx] += e
        degrees.add(sum(expo))
        m = tuple(expo)
        accum[m] = accum.get(m, 0) + sgn * coeff
    if len(degrees) > 1:
        raise NotHomogeneous(f"mixed term degrees {sorted(degrees)}")
    degree = degrees.pop()
    poly = HomogPoly(field, n, degree, accum)
    if poly.is_zero():
        raise ZeroModP(f"polynomial vanishes identically over F_{field.p}")
    return poly
