"""Exact arithmetic in real algebraic number fields Q(theta).

An element is a coordinate vector over the power basis 1, theta, ...,
theta^(d-1) with Fraction coordinates, where theta is the unique root of a
monic integer polynomial inside a caller-supplied isolating interval.
Every predicate is decided exactly: zero tests read the coordinates, signs
and floors refine the isolating interval with rational interval arithmetic
until the answer is certain.  Floating point never enters a decision path.
"""

from __future__ import annotations

import math
from decimal import Context, Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

_REFINE_CAP = 20000  # bisections before giving up on separating a value from zero


class FieldMismatch(ValueError):
    """Raised when combining elements of incompatible fields."""


class DivisionByZero(ZeroDivisionError):
    """Raised when inverting or dividing by an exact zero."""


class AmbiguousRelation(ValueError):
    """Raised when a unique integer relation was expected but the lattice has rank >= 2."""


# ---------------------------------------------------------------------------
# dense polynomials over Fraction, coefficients low degree first
# ---------------------------------------------------------------------------

def _ptrim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _padd(p, q):
    n = max(len(p), len(q))
    return _ptrim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _pscale(p, c):
    return _ptrim([c * a for a in p]) if c else []


def _psub(p, q):
    return _padd(p, _pscale(q, -1))


def _pmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _ptrim(out)


def _pdivmod(p, q):
    """Quotient and remainder of p by q over the rationals."""
    q = _ptrim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quo = [Fraction(0)] * max(len(r) - len(q) + 1, 1)
    inv = Fraction(1, 1) / Fraction(q[-1])
    while len(_ptrim(r)) >= len(q):
        r = _ptrim(r)
        shift = len(r) - len(q)
        c = r[-1] * inv
        quo[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r[-1] = 0
    return _ptrim(quo), _ptrim(r)


def _peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pderiv(p):
    return _ptrim([i * c for i, c in enumerate(p)][1:])


def _sturm_chain(p):
    chain = [_ptrim(list(p))]
    d = _pderiv(p)
    if d:
        chain.append(d)
        while len(chain[-1]) > 1:
            _, rem = _pdivmod(chain[-2], chain[-1])
            rem = _pscale(rem, -1)
            if not rem:
                break
            chain.append(rem)
    return chain


def _sign_changes(values):
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_root_count(poly, lo, hi):
    """Number of distinct real roots of poly in the half-open interval (lo, hi]."""
    chain = _sturm_chain([Fraction(c) for c in poly])
    va = _sign_changes([_peval(f, Fraction(lo)) for f in chain])
    vb = _sign_changes([_peval(f, Fraction(hi)) for f in chain])
    return va - vb


def _int_divisors(n):
    n = abs(n)
    out = []
    for k in range(1, math.isqrt(n) + 1):
        if n % k == 0:
            out.append(k)
            if k != n // k:
                out.append(n // k)
    return sorted(out)


def _rational_roots(coeffs):
    """Rational roots of a monic integer polynomial; by Gauss they are integers."""
    if coeffs[0] == 0:
        return [0]
    roots = []
    for d in _int_divisors(coeffs[0]):
        for r in (d, -d):
            if _peval([Fraction(c) for c in coeffs], Fraction(r)) == 0:
                roots.append(r)
    return roots


def _is_irreducible(coeffs):
    """Exact irreducibility over Q for monic integer polynomials up to degree 4.

    Returns True/False for degree <= 4, None for higher degrees (not decided).
    """
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    if _rational_roots(coeffs):
        return False
    if deg in (2, 3):
        return True
    if deg == 4:
        # any factorization is (x^2+ax+b)(x^2+cx+d) with integer a, b, c, d
        p3, p2, p1, p0 = coeffs[3], coeffs[2], coeffs[1], coeffs[0]
        if p0 == 0:
            return False  # x divides
        seen = set()
        for b in _int_divisors(p0):
            for bb in (b, -b):
                if p0 % bb:
                    continue
                d = p0 // bb
                if (bb, d) in seen:
                    continue
                seen.add((bb, d))
                # a + c = p3 and a*c = p2 - b - d
                s, prod = p3, p2 - bb - d
                disc = s * s - 4 * prod
                if disc < 0:
                    continue
                r = math.isqrt(disc)
                if r * r != disc or (s + r) % 2:
                    continue
                a = (s + r) // 2
                c = s - a
                for aa, cc in ((a, c), (c, a)):
                    if aa * d + bb * cc == p1:
                        return False
        return True
    return None


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------

class NumberField:
    """Q(theta) for theta the unique root of min_poly in root_interval.

    min_poly is given as integer coefficients, constant term first, and must
    be monic.  Reducible polynomials are rejected up to degree 4; above that
    irreducibility is taken on trust and irreducibility_checked is False.
    """

    def __init__(self, min_poly: Sequence[int], root_interval):
        coeffs = []
        for c in min_poly:
            f = Fraction(c)
            if f.denominator != 1:
                raise ValueError("min_poly must have integer coefficients")
            coeffs.append(int(f))
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise ValueError("min_poly must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("min_poly must be monic")
        self.min_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1

        lo, hi = Fraction(root_interval[0]), Fraction(root_interval[1])
        if self.degree == 1:
            root = Fraction(-coeffs[0])
            if not (lo <= root <= hi):
                raise ValueError("root_interval does not contain the root")
            lo = hi = root
            self.irreducibility_checked = True
        else:
            if lo >= hi:
                raise ValueError("root_interval must satisfy lo < hi")
            irr = _is_irreducible(self.min_poly)
            if irr is False:
                raise ValueError("min_poly is reducible over Q")
            self.irreducibility_checked = irr is True
            pf = [Fraction(c) for c in coeffs]
            slo, shi = _peval(pf, lo), _peval(pf, hi)
            if slo == 0 or shi == 0:
                raise ValueError("root_interval endpoints must not be roots")
            if (slo > 0) == (shi > 0):
                raise ValueError("min_poly does not change sign on root_interval")
            if sturm_root_count(coeffs, lo, hi) != 1:
                raise ValueError("root_interval must isolate exactly one root")
        self._lo = lo
        self._hi = hi
        self._level = 0
        self._polyf = tuple(Fraction(c) for c in self.min_poly)
        # theta^d expressed on the power basis, then theta^(d+1), ...
        d = self.degree
        red = [tuple(Fraction(-c) for c in coeffs[:d])]
        for _ in range(d - 2):
            prev = red[-1]
            shifted = (Fraction(0),) + prev[:-1]
            top = prev[-1]
            red.append(tuple(shifted[i] + top * red[0][i] for i in range(d)))
        self._red = red

    # -- root isolation -----------------------------------------------------

    def refine(self):
        """Halve the isolating interval with one exact bisection."""
        if self._lo == self._hi:
            return
        mid = (self._lo + self._hi) / 2
        s = _peval(self._polyf, mid)
        if s == 0:
            raise ValueError("min_poly has a rational root; it is not irreducible")
        if (s > 0) == (_peval(self._polyf, self._lo) > 0):
            self._lo = mid
        else:
            self._hi = mid
        self._level += 1

    def root_interval(self):
        return (self._lo, self._hi)

    def refine_to(self, width: Fraction):
        while self._hi - self._lo > width:
            self.refine()

    # -- constructors ---------------------------------------------------------

    def element(self, value) -> AlgebraicNumber:
        """Coerce an int, Fraction, or same-field element into this field."""
        if isinstance(value, AlgebraicNumber):
            if value.field is self or value.field == self:
                return AlgebraicNumber(self, value.coords)
            if value.is_rational():
                return self.element(value.as_rational())
            raise FieldMismatch("cannot coerce element of %r into %r" % (value.field, self))
        q = Fraction(value)
        return AlgebraicNumber(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def from_coords(self, coords: Iterable) -> AlgebraicNumber:
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != self.degree:
            raise ValueError("expected %d coordinates" % self.degree)
        return AlgebraicNumber(self, cs)

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def theta(self) -> AlgebraicNumber:
        if self.degree == 1:
            return self.element(-self.min_poly[0])
        return self.from_coords((0, 1) + (0,) * (self.degree - 2))

    # -- identity -------------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NumberField):
            return NotImplemented
        if self.min_poly != other.min_poly:
            return False
        lo = max(self._lo, other._lo)
        hi = min(self._hi, other._hi)
        if lo > hi:
            return False
        if lo == hi:
            # touching intervals; the shared endpoint is not a root, so the
            # isolated roots differ
            return self.degree == 1
        return sturm_root_count(self.min_poly, lo, hi) == 1

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        return "NumberField(%s, root in [%s, %s])" % (
            poly_text(self.min_poly), self._lo, self._hi)


RATIONALS = NumberField((0, 1), (0, 0))


class AlgebraicNumber:
    """An element of a NumberField, held as exact power-basis coordinates."""

    __slots__ = ("field", "coords", "_ilevel", "_ilo", "_ihi")

    def __init__(self, field: NumberField, coords: Sequence[Fraction]):
        self.field = field
        self.coords = tuple(coords)
        self._ilevel = -1
        self._ilo = None
        self._ihi = None

    # -- exact structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.coords[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.coords[0].denominator == 1

    # -- coercion -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is self.field or other.field == self.field:
                return self, AlgebraicNumber(self.field, other.coords)
            if other.is_rational():
                return self, self.field.element(other.as_rational())
            if self.is_rational():
                return other.field.element(self.as_rational()), other
            raise FieldMismatch("elements live in different fields")
        if isinstance(other, (int, Fraction)):
            return self, self.field.element(other)
        return self, None

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        return AlgebraicNumber(a.field, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-c for c in self.coords))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        return AlgebraicNumber(a.field, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        d = a.field.degree
        if d == 1:
            return AlgebraicNumber(a.field, (a.coords[0] * b.coords[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] += x * y
        out = list(prod[:d])
        red = a.field._red
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = red[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return AlgebraicNumber(a.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> AlgebraicNumber:
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise DivisionByZero("cannot invert 0")
        if self.is_rational():
            return self.field.element(Fraction(1) / self.coords[0])
        m = list(self.field._polyf)
        r0, u0 = m, []
        r1, u1 = _ptrim(list(self.coords)), [Fraction(1)]
        while len(r1) > 1:
            q, r2 = _pdivmod(r0, r1)
            u2 = _psub(u0, _pmul(q, u1))
            r0, u0, r1, u1 = r1, u1, r2, u2
        if not r1:
            raise ArithmeticError("element is a zero divisor; min_poly is reducible")
        g = r1[0]
        inv = _pscale(u1, Fraction(1) / g)
        inv = inv + [Fraction(0)] * (self.field.degree - len(inv))
        return AlgebraicNumber(self.field, tuple(inv[:self.field.degree]))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        if b.is_zero():
            raise DivisionByZero("division by exact zero")
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        if a.is_zero():
            raise DivisionByZero("division by exact zero")
        return b * a.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.field.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    # -- certified interval ------------------------------------------------------

    def interval(self, max_width: Fraction | None = None):
        """Rational lo <= value <= hi, refined until hi - lo <= max_width if given."""
        self._ensure_interval()
        if max_width is not None:
            guard = 0
            while self._ihi - self._ilo > max_width:
                self.field.refine()
                self._ensure_interval()
                guard += 1
                if guard > _REFINE_CAP:
                    raise ArithmeticError("interval refinement did not converge")
        return (self._ilo, self._ihi)

    def _ensure_interval(self):
        if self._ilevel == self.field._level and self._ilo is not None:
            return
        tlo, thi = self.field._lo, self.field._hi
        lo = hi = self.coords[-1]
        for c in reversed(self.coords[:-1]):
            p1, p2, p3, p4 = lo * tlo, lo * thi, hi * tlo, hi * thi
            lo, hi = min(p1, p2, p3, p4) + c, max(p1, p2, p3, p4) + c
        if self._ilo is not None:
            # intervals only ever shrink
            lo, hi = max(lo, self._ilo), min(hi, self._ihi)
        self._ilo, self._ihi = lo, hi
        self._ilevel = self.field._level

    def sign(self) -> int:
        """Exact sign: -1, 0, or 1."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coords[0] > 0 else -1
        guard = 0
        while True:
            self._ensure_interval()
            if self._ilo > 0:
                return 1
            if self._ihi < 0:
                return -1
            self.field.refine()
            guard += 1
            if guard > _REFINE_CAP:
                raise ArithmeticError(
                    "cannot separate value from zero; is min_poly irreducible?")

    def floor(self) -> int:
        """Exact floor as a Python int."""
        if self.is_rational():
            q = self.coords[0]
            return q.numerator // q.denominator
        guard = 0
        while True:
            self._ensure_interval()
            flo = self._ilo.numerator // self._ilo.denominator
            fhi = self._ihi.numerator // self._ihi.denominator
            if flo == fhi:
                return flo
            self.field.refine()
            guard += 1
            if guard > _REFINE_CAP:
                raise ArithmeticError("floor did not converge; value may be an integer "
                                      "of an unverified field")

    def __float__(self):
        lo, hi = self.interval(Fraction(1, 1 << 80))
        return float((lo + hi) / 2)

    def decimal(self, digits: int = 30) -> str:
        """Correctly rounded decimal string with the given significant digits."""
        ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)

        def rnd(q):
            return str(ctx.divide(Decimal(q.numerator), Decimal(q.denominator)))

        if self.is_rational():
            return rnd(self.coords[0])
        guard = 0
        while True:
            lo, hi = self.interval()
            a, b = rnd(lo), rnd(hi)
            if a == b:
                return a
            self.field.refine()
            guard += 1
            if guard > _REFINE_CAP:
                raise ArithmeticError("decimal rendering did not converge")

    # -- comparisons ------------------------------------------------------------

    def __eq__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        return a.coords == b.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field, self.coords))

    def __lt__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        return (a - b).sign() < 0

    def __le__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        return (a - b).sign() <= 0

    def __gt__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        return (a - b).sign() > 0

    def __ge__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        return (a - b).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        if self.is_rational():
            return "AlgebraicNumber(%s)" % self.coords[0]
        return "AlgebraicNumber(%s ~ %s)" % (
            poly_text(self.coords, var="th"), self.decimal(12))


def dyadic_bounds(a: AlgebraicNumber, bits: int):
    """Integers (lo, hi) with lo <= a*2^bits <= hi and hi - lo <= 2."""
    scale = Fraction(1, 1 << bits)
    lo, hi = a.interval(scale)
    slo = lo * (1 << bits)
    shi = hi * (1 << bits)
    ilo = slo.numerator // slo.denominator
    ihi = -((-shi.numerator) // shi.denominator)
    return ilo, ihi


# ---------------------------------------------------------------------------
# integer relation lattices
# ---------------------------------------------------------------------------

def _integer_kernel(rows, ncols):
    """Basis of the integer kernel of an integer matrix, via unimodular column ops."""
    nrows = len(rows)
    cols = [[rows[r][c] for r in range(nrows)] for c in range(ncols)]
    unim = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    fixed = 0
    for r in range(nrows):
        while True:
            nz = [c for c in range(fixed, ncols) if cols[c][r] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda c: abs(cols[c][r]))
            for c in nz:
                if c == piv:
                    continue
                q = cols[c][r] // cols[piv][r]
                if q:
                    cols[c] = [a - q * b for a, b in zip(cols[c], cols[piv])]
                    unim[c] = [a - q * b for a, b in zip(unim[c], unim[piv])]
        if nz:
            c = nz[0]
            cols[fixed], cols[c] = cols[c], cols[fixed]
            unim[fixed], unim[c] = unim[c], unim[fixed]
            fixed += 1
    basis = []
    for c in range(fixed, ncols):
        v = unim[c]
        lead = next(x for x in v if x != 0)
        if lead < 0:
            v = [-x for x in v]
        basis.append(tuple(v))
    basis.sort()
    return basis


def rational_relations(values) -> list[tuple[int, ...]]:
    """Basis of the lattice of integer vectors c with sum(c[i]*values[i]) == 0.

    Accepts ints, Fractions, and AlgebraicNumbers sharing one field.  The
    basis vectors are primitive with positive leading entry, sorted.
    """
    field = RATIONALS
    for v in values:
        if isinstance(v, AlgebraicNumber) and not v.is_rational():
            if field is not RATIONALS and not (field is v.field or field == v.field):
                raise FieldMismatch("relation inputs live in different fields")
            field = v.field
    elems = [field.element(v) for v in values]
    k = len(elems)
    d = field.degree
    rows = []
    for r in range(d):
        row = [e.coords[r] for e in elems]
        den = math.lcm(*(c.denominator for c in row)) if row else 1
        rows.append([int(c * den) for c in row])
    return _integer_kernel(rows, k)


def primitive_relation(values, expect_unique: bool = True):
    """The primitive relation vector, None when the values are independent.

    With expect_unique (the default), a relation lattice of rank >= 2 raises
    AmbiguousRelation; otherwise the first basis vector is returned.
    """
    basis = rational_relations(values)
    if not basis:
        return None
    if len(basis) > 1 and expect_unique:
        raise AmbiguousRelation("relation lattice has rank %d" % len(basis))
    return basis[0]


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def poly_text(coeffs, var: str = "t") -> str:
    """Human-readable polynomial, highest power first, e.g. t^4-10*t^2+1."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            mag = abs(c)
            head = "" if mag == 1 else "%s*" % mag
            body = "%s%s" % (head, var) if i == 1 else "%s%s^%d" % (head, var, i)
        if not terms:
            terms.append(body if c > 0 else "-" + body)
        else:
            terms.append(("+" if c > 0 else "-") + body)
    return "".join(terms) if terms else "0"


def render_element(a: AlgebraicNumber, digits: int = 30) -> dict:
    """JSON-friendly view: exact coordinates plus a certified decimal."""
    return {
        "coords": [str(c) for c in a.coords],
        "decimal": a.decimal(digits),
    }


def field_descriptor(field: NumberField) -> dict:
    lo, hi = field.root_interval()
    return {
        "min_poly": poly_text(field.min_poly),
        "degree": field.degree,
        "root_interval": [str(lo), str(hi)],
        "irreducibility_checked": field.irreducibility_checked,
    }
