"""Real algebraic number fields presented as Q[t] modulo a minimal polynomial.

A field carries an isolating interval for its distinguished root, always the
largest real root of the minimal polynomial, with rational endpoints where
the polynomial changes sign.  Sign certification works by interval
evaluation plus bisection of that interval; it terminates because a nonzero
element of the field cannot vanish at the root.
"""

from fractions import Fraction

from .errors import DimensionError, DomainError, InternalError
from .intpoly import (
    IntPolynomial,
    count_real_roots,
    factor_monic_squarefree,
    isolate_largest_real_root,
    refine_root_interval,
    squarefree_part,
)
from .matrix import ExactMatrix, charpoly


class NumberField:
    """Q(lam) for lam the largest real root of a monic irreducible polynomial."""

    __slots__ = ("min_poly", "degree", "interval", "_reduction")

    def __init__(self, min_poly, interval):
        if not isinstance(min_poly, IntPolynomial) or not min_poly.is_monic:
            raise DomainError("monic integer minimal polynomial required")
        if min_poly.degree < 1:
            raise DomainError("minimal polynomial must have positive degree")
        lo, hi = Fraction(interval[0]), Fraction(interval[1])
        if not (lo < hi):
            raise DomainError("empty isolating interval")
        if min_poly(lo) * min_poly(hi) >= 0:
            raise DomainError("isolating interval must change sign")
        if count_real_roots(min_poly, lo, hi) != 1:
            raise DomainError("interval does not isolate a single root")
        object.__setattr__(self, "min_poly", min_poly)
        object.__setattr__(self, "degree", min_poly.degree)
        object.__setattr__(self, "interval", (lo, hi))
        k = min_poly.degree
        # Reduction rows: coordinates of lam^k .. lam^(2k-2) on 1..lam^(k-1).
        rows = []
        cur = [Fraction(-c) for c in min_poly.coeffs[:k]]
        rows.append(tuple(cur))
        for _ in range(k - 2):
            shifted = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(k):
                    shifted[i] += top * -min_poly.coeffs[i]
            cur = shifted
            rows.append(tuple(cur))
        object.__setattr__(self, "_reduction", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("NumberField is immutable")

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(("NumberField", self.min_poly.coeffs))

    def __repr__(self):
        return "NumberField(%s)" % (self.min_poly,)

    def zero(self):
        return FieldElement(self, [0] * self.degree)

    def one(self):
        return self.from_rational(1)

    def lam(self):
        if self.degree == 1:
            return self.from_rational(-self.min_poly.coeffs[0])
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return FieldElement(self, coords)

    def from_rational(self, q):
        coords = [Fraction(0)] * self.degree
        coords[0] = Fraction(q)
        return FieldElement(self, coords)

    def from_coords(self, coords):
        return FieldElement(self, coords)

    def _reduce(self, long_coords):
        """Fold a degree < 2k-1 coefficient list back onto the power basis."""
        k = self.degree
        out = list(long_coords[:k]) + [Fraction(0)] * (k - len(long_coords[:k]))
        for i, c in enumerate(long_coords[k:]):
            if c:
                row = self._reduction[i]
                for j in range(k):
                    out[j] += c * row[j]
        return out

    def refined_interval(self, width):
        """A sign-change isolating interval no wider than width."""
        lo, hi = self.interval
        while hi - lo > width:
            lo, hi = refine_root_interval(self.min_poly, lo, hi)
        return lo, hi


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) != field.degree:
            raise DimensionError("coordinate vector has wrong length")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coords)

    @property
    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self):
        if not self.is_rational:
            raise DomainError("element is irrational")
        return self.coords[0]

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise DomainError("elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coords, o.coords
        k = len(a)
        prod = [Fraction(0)] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        k = self.field.degree
        # Columns are self * lam^j; solving against e0 inverts multiplication.
        lam = self.field.lam()
        cols = []
        cur = self
        for j in range(k):
            cols.append(cur.coords)
            if j + 1 < k:
                cur = cur * lam
        mat = ExactMatrix.from_columns(cols)
        rhs = [Fraction(1)] + [Fraction(0)] * (k - 1)
        sol = mat.solve(rhs)
        return FieldElement(self.field, sol)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (isinstance(other, FieldElement)
                and self.field == other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash(("FieldElement", self.field.min_poly.coeffs, self.coords))

    def __repr__(self):
        return "FieldElement(%s)" % (", ".join(str(c) for c in self.coords),)

    def sign(self):
        return certified_sign(self)

    def approx(self, digits=12):
        """Decimal string within 10**-digits of the true value."""
        lo, hi = _value_interval(self, Fraction(1, 10 ** (digits + 1)))
        mid = (lo + hi) / 2
        scaled = mid * 10 ** digits
        q = scaled.numerator // scaled.denominator
        if scaled - q >= Fraction(1, 2):
            q += 1
        sign = "-" if q < 0 else ""
        q = abs(q)
        whole, frac = divmod(q, 10 ** digits)
        return "%s%d.%0*d" % (sign, whole, digits, frac)


def _interval_eval(coords, lo, hi):
    """Range of the coordinate polynomial over [lo, hi] by interval Horner."""
    vlo = vhi = Fraction(0)
    for c in reversed(coords):
        cands = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
        vlo, vhi = min(cands) + c, max(cands) + c
    return vlo, vhi


def _value_interval(elt, width):
    lo, hi = elt.field.interval
    while True:
        vlo, vhi = _interval_eval(elt.coords, lo, hi)
        if vhi - vlo <= width:
            return vlo, vhi
        lo, hi = refine_root_interval(elt.field.min_poly, lo, hi)


def value_interval(elt, width):
    """Certified rational enclosure of the element's real value."""
    return _value_interval(elt, Fraction(width))


def certified_sign(elt):
    """Exact sign of a field element: -1, 0, or 1."""
    if elt.is_zero:
        return 0
    lo, hi = elt.field.interval
    while True:
        vlo, vhi = _interval_eval(elt.coords, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        lo, hi = refine_root_interval(elt.field.min_poly, lo, hi)


def number_field(min_poly):
    """Build the field of the largest real root of a monic irreducible poly."""
    if not min_poly.is_monic or min_poly.degree < 1:
        raise DomainError("monic polynomial of positive degree required")
    if squarefree_part(min_poly) != min_poly:
        raise DomainError("minimal polynomial must be squarefree")
    factors = factor_monic_squarefree(min_poly)
    if len(factors) != 1:
        raise DomainError("polynomial is reducible")
    interval = isolate_largest_real_root(min_poly)
    return NumberField(min_poly, interval)


def perron_minimal_polynomial(m):
    """Field generated by the dominant eigenvalue of a primitive matrix.

    Returns (field, k).  The characteristic polynomial is made squarefree,
    its largest real root is isolated, and the irreducible factor owning
    that root becomes the minimal polynomial.  The isolating interval is
    refined until its lower end exceeds 1.
    """
    cp = charpoly(m)
    sf = squarefree_part(cp)
    lo, hi = isolate_largest_real_root(sf)
    factors = factor_monic_squarefree(sf)
    owner = None
    for g in factors:
        if count_real_roots(g, lo, hi) == 1:
            if owner is not None:
                raise InternalError("two factors claim the dominant root")
            owner = g
    if owner is None:
        raise InternalError("no factor owns the dominant root")
    if hi <= 1 or (lo < 1 < hi and owner(1) == 0):
        raise DomainError("dominant eigenvalue does not exceed 1")
    while lo <= 1:
        lo, hi = refine_root_interval(owner, lo, hi)
        if hi <= 1:
            raise DomainError("dominant eigenvalue does not exceed 1")
    field = NumberField(owner, (lo, hi))
    return field, owner.degree


def minimal_polynomial(elt):
    """Monic integer minimal polynomial of an algebraic integer element."""
    k = elt.field.degree
    powers = [elt.field.one().coords]
    cur = elt.field.one()
    for j in range(1, k + 1):
        cur = cur * elt
        powers.append(cur.coords)
        # The first power expressible through its predecessors fixes the degree.
        sol = _dependence(powers)
        if sol is not None:
            coeffs = [-c for c in sol] + [Fraction(1)]
            if any(c.denominator != 1 for c in coeffs):
                raise DomainError("element is not an algebraic integer")
            return IntPolynomial([int(c) for c in coeffs])
    raise InternalError("no dependence found within the field degree")


def _dependence(powers):
    """Coefficients writing the last vector as a combination of the others."""
    *prev, last = powers
    k = len(last)
    rows = [[prev[j][i] for j in range(len(prev))] for i in range(k)]
    aug = [row + [last[i]] for i, row in enumerate(rows)]
    ncols = len(prev)
    pivots = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, k) if aug[i][c] != 0), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(k):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, k):
        if aug[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for idx, c in enumerate(pivots):
        sol[c] = aug[idx][ncols]
    return sol
