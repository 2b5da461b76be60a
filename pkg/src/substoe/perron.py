"""Dominant eigendata of primitive integer matrices, kept exact.

The eigenvector is computed over the number field of the dominant
eigenvalue and normalized so its entries sum to one.  The companion-style
multiplication matrices express multiplication by lam and by 1/lam on the
coordinate lattice Z^k of the field.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InternalError
from .field import FieldElement, NumberField, certified_sign, perron_minimal_polynomial
from .matrix import ExactMatrix, primitivity_exponent


def coordinates_of(elt):
    """Coordinate vector of a field element on the power basis."""
    return tuple(elt.coords)


def embed(field, coords):
    """Field element with the given power-basis coordinates."""
    return FieldElement(field, coords)


def field_kernel_basis(rows, field):
    """Basis of the kernel of a square matrix of field elements."""
    n = len(rows)
    m = [list(r) for r in rows]
    width = len(m[0]) if m else 0
    pivots = {}
    r = 0
    for c in range(width):
        sel = None
        for i in range(r, n):
            if not m[i][c].is_zero:
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(n):
            if i != r and not m[i][c].is_zero:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    basis = []
    for c in range(width):
        if c in pivots:
            continue
        vec = [field.zero()] * width
        vec[c] = field.one()
        for pc, pr in pivots.items():
            vec[pc] = -m[pr][c]
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class PerronData:
    matrix: ExactMatrix
    field: NumberField
    k: int
    lam: FieldElement
    eigvec: tuple
    coords_matrix: ExactMatrix


@dataclass(frozen=True)
class MultiplicationPair:
    c: ExactMatrix
    d: ExactMatrix
    y1: tuple


def perron_data(m):
    """Exact dominant eigendata of a primitive integer matrix.

    The right eigenvector x is scaled so sum(x) = 1; every entry is
    certified positive and the eigenequation is checked exactly.
    """
    if primitivity_exponent(m) is None:
        raise DomainError("matrix is not primitive")
    field, k = perron_minimal_polynomial(m)
    lam = field.lam()
    s = m.rows
    rows = []
    for i in range(s):
        row = []
        for j in range(s):
            entry = field.from_rational(m.at(i, j))
            if i == j:
                entry = entry - lam
            row.append(entry)
        rows.append(row)
    kernel = field_kernel_basis(rows, field)
    if len(kernel) != 1:
        raise InternalError("dominant eigenspace is not one-dimensional")
    vec = kernel[0]
    total = field.zero()
    for x in vec:
        total = total + x
    if total.is_zero:
        raise InternalError("eigenvector entries sum to zero")
    inv_total = total.inverse()
    vec = [x * inv_total for x in vec]
    for x in vec:
        if certified_sign(x) <= 0:
            raise InternalError("normalized eigenvector has a nonpositive entry")
    _check_eigvec(m, lam, vec, field)
    coords = ExactMatrix.from_columns([list(x.coords) for x in vec])
    return PerronData(matrix=m, field=field, k=k, lam=lam,
                      eigvec=tuple(vec), coords_matrix=coords)


def _check_eigvec(m, lam, vec, field):
    s = m.rows
    for i in range(s):
        acc = field.zero()
        for j in range(s):
            acc = acc + vec[j] * Fraction(m.at(i, j))
        if acc != lam * vec[i]:
            raise InternalError("eigenvector equation failed exact verification")


def multiplication_matrices(field):
    """Pair (C, D): multiplication by lam and by 1/lam on coordinates.

    C is the companion matrix of the minimal polynomial, D its inverse,
    and y1 the C-eigenvector for lam, with first nonzero coordinate set
    to 1 and the sign flipped if its field value is negative.
    """
    k = field.degree
    cols = []
    for j in range(k - 1):
        col = [Fraction(0)] * k
        col[j + 1] = Fraction(1)
        cols.append(col)
    cols.append([Fraction(-c) for c in field.min_poly.coeffs[:k]])
    c_mat = ExactMatrix.from_columns(cols)
    d_mat = c_mat.inverse()
    lam = field.lam()
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            entry = field.from_rational(c_mat.at(i, j))
            if i == j:
                entry = entry - lam
            row.append(entry)
        rows.append(row)
    kernel = field_kernel_basis(rows, field)
    if len(kernel) != 1:
        raise InternalError("companion eigenspace is not one-dimensional")
    y1 = kernel[0]
    lead = next((i for i, x in enumerate(y1) if not x.is_zero), None)
    if lead is None:
        raise InternalError("zero eigenvector")
    y1 = [x * y1[lead].inverse() for x in y1]
    value = field.zero()
    powers = field.one()
    for i, x in enumerate(y1):
        value = value + x * powers
        if i + 1 < k:
            powers = powers * lam
    sgn = certified_sign(value)
    if sgn == 0:
        raise InternalError("y1 pairs to zero against the root powers")
    if sgn < 0:
        y1 = [-x for x in y1]
    return MultiplicationPair(c=c_mat, d=d_mat, y1=tuple(y1))


def eigen_growth_check(m, field, max_steps=200):
    """Least n with all one-step growth ratios of m**n inside the interval.

    The entry sums of successive powers have ratios converging to the
    dominant eigenvalue; this scans until the ratio vector lands inside the
    field's isolating interval, refined to width 1/16 first.
    """
    lo, hi = field.refined_interval(Fraction(1, 16))
    power = m
    prev = [sum(power.row(i)) for i in range(m.rows)]
    for n in range(1, max_steps + 1):
        power = power * m
        cur = [sum(power.row(i)) for i in range(m.rows)]
        ratios = [c / p for c, p in zip(cur, prev) if p != 0]
        if ratios and all(lo < r < hi for r in ratios):
            return n
        prev = cur
    raise InternalError("growth ratios never entered the isolating interval")
