"""Exact rational matrices and the lattice utilities built on them."""

from fractions import Fraction
from math import gcd

from .errors import DimensionError, DomainError, InternalError, RankError
from .intpoly import IntPolynomial


def _xgcd(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class ExactMatrix:
    """Immutable matrix over Fraction, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionError("entry count does not match shape")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in entries))

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        if not rows:
            raise DimensionError("empty matrix")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        flat = [x for r in rows for x in r]
        return cls(len(rows), width, flat)

    @classmethod
    def from_columns(cls, cols):
        cols = [list(c) for c in cols]
        if not cols:
            raise DimensionError("empty matrix")
        height = len(cols[0])
        if height == 0 or any(len(c) != height for c in cols):
            raise DimensionError("ragged columns")
        return cls.from_rows([[cols[j][i] for j in range(len(cols))] for i in range(height)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    def at(self, i, j):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise DimensionError("index out of range")
        return self.entries[i * self.cols + j]

    def __getitem__(self, key):
        i, j = key
        return self.at(i, j)

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def is_integer(self):
        return all(e.denominator == 1 for e in self.entries)

    @property
    def is_nonnegative(self):
        return all(e >= 0 for e in self.entries)

    @property
    def is_positive(self):
        return all(e > 0 for e in self.entries)

    def int_rows(self):
        if not self.is_integer:
            raise DomainError("matrix has non-integer entries")
        return [[int(x) for x in self.row(i)] for i in range(self.rows)]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return ExactMatrix(
            self.cols, self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def trace(self):
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        return sum(self.entries[i * self.cols + i] for i in range(self.rows))

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError("shape mismatch in addition")
        return ExactMatrix(self.rows, self.cols,
                           [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError("shape mismatch in subtraction")
        return ExactMatrix(self.rows, self.cols,
                           [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactMatrix(self.rows, self.cols, [a * other for a in self.entries])
        if self.cols != other.rows:
            raise DimensionError("shape mismatch in product")
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.entries, other.entries
        out = [Fraction(0)] * (n * m)
        for i in range(n):
            base = i * k
            for t in range(k):
                c = a[base + t]
                if c:
                    rowb = t * m
                    for j in range(m):
                        out[i * m + j] += c * b[rowb + j]
        return ExactMatrix(n, m, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = ExactMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def apply(self, vec):
        vec = [Fraction(v) for v in vec]
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(
            sum(self.entries[i * self.cols + j] * vec[j] for j in range(self.cols))
            for i in range(self.rows)
        )

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix)
                and self.rows == other.rows
                and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash(("ExactMatrix", self.rows, self.cols, self.entries))

    def __repr__(self):
        return "ExactMatrix.from_rows(%r)" % ([[str(x) for x in self.row(i)]
                                               for i in range(self.rows)],)

    def det(self):
        if not self.is_square:
            raise DimensionError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        if self.is_integer:
            # Bareiss fraction-free elimination.
            m = [[int(x) for x in self.row(i)] for i in range(n)]
            sign = 1
            prev = 1
            for k in range(n - 1):
                if m[k][k] == 0:
                    swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
                    if swap is None:
                        return Fraction(0)
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                for i in range(k + 1, n):
                    for j in range(k + 1, n):
                        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                    m[i][k] = 0
                prev = m[k][k]
            return Fraction(sign * m[n - 1][n - 1])
        m = [list(self.row(i)) for i in range(n)]
        det = Fraction(1)
        for k in range(n):
            pivot = next((r for r in range(k, n) if m[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != k:
                m[k], m[pivot] = m[pivot], m[k]
                det = -det
            det *= m[k][k]
            inv = 1 / m[k][k]
            for i in range(k + 1, n):
                if m[i][k]:
                    c = m[i][k] * inv
                    for j in range(k, n):
                        m[i][j] -= c * m[k][j]
        return det

    def inverse(self):
        if not self.is_square:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        m = [list(self.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for k in range(n):
            pivot = next((r for r in range(k, n) if m[r][k] != 0), None)
            if pivot is None:
                raise DomainError("matrix is singular")
            if pivot != k:
                m[k], m[pivot] = m[pivot], m[k]
            inv = 1 / m[k][k]
            m[k] = [x * inv for x in m[k]]
            for i in range(n):
                if i != k and m[i][k]:
                    c = m[i][k]
                    m[i] = [x - c * y for x, y in zip(m[i], m[k])]
        return ExactMatrix.from_rows([r[n:] for r in m])

    def solve(self, rhs):
        """Unique solution x of self @ x = rhs; DomainError if singular."""
        if not self.is_square:
            raise DimensionError("solve needs a square matrix")
        inv = self.inverse()
        return inv.apply(rhs)


def charpoly(m):
    """Characteristic polynomial det(tI - m) of an integer square matrix."""
    if not m.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    if not m.is_integer:
        raise DomainError("integer matrix required")
    n = m.rows
    ident = ExactMatrix.identity(n)
    b = ident
    cs = []
    for i in range(1, n + 1):
        prod = m * b
        c = -prod.trace() / i
        cs.append(c)
        b = prod + ident * c
    if any(x != 0 for x in b.entries):
        raise InternalError("characteristic polynomial recursion did not close")
    coeffs = [c for c in reversed(cs)] + [Fraction(1)]
    if any(c.denominator != 1 for c in coeffs):
        raise InternalError("characteristic polynomial came out non-integral")
    return IntPolynomial([int(c) for c in coeffs])


def wielandt_bound(n):
    return (n - 1) * (n - 1) + 1 if n > 1 else 1


def primitivity_exponent(m, cap=None):
    """Least e with m**e entrywise positive, or None if m is not primitive.

    Only the support pattern matters, so powers are taken on row bitmasks.
    The search stops at the Wielandt bound, which is decisive.
    """
    if not m.is_square:
        raise DimensionError("primitivity needs a square matrix")
    if not m.is_integer or not m.is_nonnegative:
        raise DomainError("nonnegative integer matrix required")
    n = m.rows
    if cap is None:
        cap = wielandt_bound(n)
    full = (1 << n) - 1
    base = []
    for i in range(n):
        mask = 0
        for j in range(n):
            if m.at(i, j) > 0:
                mask |= 1 << j
        base.append(mask)
    cur = base
    for e in range(1, cap + 1):
        if all(r == full for r in cur):
            return e
        if e == cap:
            break
        cur = [_bool_row_mul(cur[i], base, n) for i in range(n)]
    return None


def _bool_row_mul(row_mask, rows, n):
    out = 0
    j = 0
    while row_mask:
        if row_mask & 1:
            out |= rows[j]
        row_mask >>= 1
        j += 1
    return out


def eventual_positivity_exponent(m, cap=64):
    """Least e <= cap with m**e entrywise positive, using exact powers."""
    if not m.is_square:
        raise DimensionError("positivity needs a square matrix")
    if not m.is_integer:
        raise DomainError("integer matrix required")
    power = m
    for e in range(1, cap + 1):
        if power.is_positive:
            return e
        if e < cap:
            power = power * m
    return None


def hnf_basis(vectors):
    """Canonical basis of the lattice generated by rational vectors.

    Returns (H, den) with H a k x k lower-triangular integer matrix whose
    columns, divided by den, form a basis: positive diagonal, and each
    below-diagonal entry reduced modulo the diagonal entry of its row.
    Raises RankError when the vectors do not span.
    """
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    if not vecs:
        raise DimensionError("no generating vectors")
    k = len(vecs[0])
    if k == 0 or any(len(v) != k for v in vecs):
        raise DimensionError("inconsistent vector lengths")
    den = 1
    for v in vecs:
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
    ech = [None] * k
    for v in vecs:
        c = [int(x * den) for x in v]
        for r in range(k):
            if c[r] == 0:
                continue
            if ech[r] is None:
                ech[r] = c
                break
            a, b = ech[r][r], c[r]
            g, x, y = _xgcd(a, b)
            combined = [x * u + y * w for u, w in zip(ech[r], c)]
            c = [(a // g) * w - (b // g) * u for u, w in zip(ech[r], c)]
            ech[r] = combined
    if any(col is None for col in ech):
        raise RankError("vectors do not span the full space")
    for r in range(k):
        if ech[r][r] < 0:
            ech[r] = [-u for u in ech[r]]
    for i in range(k):
        piv = ech[i][i]
        for j in range(i):
            q = ech[j][i] // piv
            if q:
                ech[j] = [u - q * w for u, w in zip(ech[j], ech[i])]
    return ExactMatrix.from_columns(ech), den


def hnf_solve(h, target):
    """Integer coordinates of an integer vector in the column basis of h.

    h must come from hnf_basis (lower triangular, positive diagonal).
    Returns None when the vector is outside the lattice spanned by h.
    """
    k = h.rows
    t = [int(x) for x in target]
    if len(t) != k:
        raise DimensionError("vector length mismatch")
    coeffs = []
    for i in range(k):
        piv = int(h.at(i, i))
        if t[i] % piv:
            return None
        q = t[i] // piv
        coeffs.append(q)
        if q:
            for r in range(i, k):
                t[r] -= q * int(h.at(r, i))
    if any(t):
        raise InternalError("triangular solve left a nonzero remainder")
    return coeffs
