"""Builders that rewrite a system while preserving its orbit structure.

Each public function returns a report dict whose entries are exact
objects (matrices, field elements, substitutions).  Internal
certificates re-verify every claimed identity with exact arithmetic and
raise InternalError when a certificate fails, so a returned report can
be trusted without re-checking.
"""

from fractions import Fraction
from itertools import product
from math import gcd

from .bratteli import diagram_from_substitution
from .clopen import LatticeGroup, _triangular_coords, groups_equal, lattice_of
from .errors import CapabilityError, DomainError, InternalError, RankError
from .field import certified_sign, perron_minimal_polynomial, value_interval
from .intpoly import IntPolynomial
from .matrix import (
    ExactMatrix,
    charpoly,
    eventual_positivity_exponent,
    hnf_basis,
    primitivity_exponent,
)
from .perron import multiplication_matrices, perron_data
from .subst import Substitution, linear_bound_estimate
from .words import RunWord

_LETTER_POOL = "abcdefghijklmnopqrstuvwxyz"


def _default_letters(n):
    if n <= len(_LETTER_POOL):
        return tuple(_LETTER_POOL[:n])
    return tuple("v%d" % i for i in range(n))


def _coerce_matrix(m):
    if isinstance(m, ExactMatrix):
        return m
    return ExactMatrix.from_rows(m)


def _floor_fraction(q):
    return q.numerator // q.denominator


def _largest_int_below(beta):
    """Largest integer m with m < beta, for an exact field element."""
    if beta.is_rational:
        q = beta.as_rational()
        if q.denominator == 1:
            return q.numerator - 1
        return _floor_fraction(q)
    width = Fraction(1, 4)
    while True:
        lo, hi = value_interval(beta, width)
        if _floor_fraction(lo) == _floor_fraction(hi):
            return _floor_fraction(lo)
        width /= 8


def _scaled(vec, m):
    return [m * v for v in vec]


def _vec_add(a, b):
    return [x + y for x, y in zip(a, b)]


def _vec_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _is_integral(vec):
    return all(Fraction(v).denominator == 1 for v in vec)


def _sort_weight(elt):
    return float(elt.approx(20))


class _Cone:
    """Mutable bookkeeping for a lattice basis under column moves.

    Tracks the basis vectors f (coordinate lists), their field values p
    and the coefficients c of the positive eigendirection in that
    basis.  Every move is unimodular, so the spanned lattice never
    changes; the goal is reaching a basis where all p and all c are
    certified positive.
    """

    def __init__(self, field, f_vecs):
        self.field = field
        self.f = [list(v) for v in f_vecs]
        self.p = []
        for j, vec in enumerate(self.f):
            elt = field.from_coords(vec)
            if certified_sign(elt) < 0:
                self.f[j] = _scaled(vec, -1)
                elt = -elt
            self.p.append(elt)
        mp = multiplication_matrices(field)
        basis = ExactMatrix.from_columns(self.f)
        inv = basis.inverse()
        k = field.degree
        self.c = []
        for i in range(k):
            acc = field.zero()
            for j in range(k):
                acc = acc + mp.y1[j] * inv.at(i, j)
            self.c.append(acc)

    def bad_indices(self):
        return [i for i, ci in enumerate(self.c) if certified_sign(ci) <= 0]

    def helpers(self, skip):
        cand = [j for j in range(len(self.c))
                if j != skip and certified_sign(self.c[j]) > 0]
        cand.sort(key=lambda j: -_sort_weight(self.c[j] * self.p[j]))
        return cand

    def _try_shear(self, i, j):
        # f_j += m f_i keeps p_j, c_j signs iff m sits in the open
        # interval (-p_j/p_i, c_i/c_j); afterwards c_i flips positive.
        alpha = -(self.p[j] * self.p[i].inverse())
        beta = self.c[i] * self.c[j].inverse()
        m = _largest_int_below(beta)
        if certified_sign(self.field.from_rational(m) - alpha) <= 0:
            return None
        self.f[j] = _vec_add(self.f[j], _scaled(self.f[i], m))
        self.p[j] = self.p[j] + self.p[i] * m
        self.c[i] = self.c[i] - self.c[j] * m
        return ("shear", i, j, m)

    def _try_reflect(self, i, j):
        # f_i <- m f_j - f_i flips c_i to -c_i > 0 when c_i < 0; the
        # window for m is (p_i/p_j, -c_j/c_i).
        if certified_sign(self.c[i]) == 0:
            return None
        alpha = self.p[i] * self.p[j].inverse()
        beta = -(self.c[j] * self.c[i].inverse())
        m = _largest_int_below(beta)
        if certified_sign(self.field.from_rational(m) - alpha) <= 0:
            return None
        self.f[i] = _vec_sub(_scaled(self.f[j], m), self.f[i])
        self.p[i] = self.p[j] * m - self.p[i]
        self.c[j] = self.c[j] + self.c[i] * m
        self.c[i] = -self.c[i]
        return ("reflect", i, j, m)

    def fix(self, cap):
        moves = []
        for _ in range(cap):
            bad = self.bad_indices()
            if not bad:
                self.certify()
                return moves
            i = bad[0]
            done = None
            for j in self.helpers(i):
                done = self._try_shear(i, j) or self._try_reflect(i, j)
                if done:
                    break
            if done is None:
                raise CapabilityError(
                    "no basis move repairs coordinate %d" % i)
            moves.append(done)
        raise CapabilityError(
            "basis adjustment did not stabilize within %d moves" % cap)

    def certify(self):
        for elt in self.p + self.c:
            if certified_sign(elt) <= 0:
                raise InternalError("adjusted basis lost positivity")


def _power_search(field, inv, start_vecs, accept, start, cap, what):
    """Scan F^-1 C^t applied to start_vecs for the first accepted t."""
    mp = multiplication_matrices(field)
    vecs = [list(v) for v in start_vecs]
    for _ in range(start):
        vecs = [list(mp.c.apply(v)) for v in vecs]
    for t in range(start, cap + 1):
        cols = []
        for v in vecs:
            col = list(inv.apply(v))
            if not _is_integral(col):
                raise InternalError("lattice coordinates left the lattice")
            cols.append([int(x) for x in col])
        if accept(cols):
            return t, cols
        vecs = [list(mp.c.apply(v)) for v in vecs]
    raise CapabilityError("no usable power of the eigenvalue below %d for %s"
                          % (cap, what))


def _minimize_core(field, lattice, xs, move_cap=200, n_cap=200, m_cap=200):
    """Shared pipeline: adjusted basis -> rows -> stationary system.

    lattice must be closed under multiplication by the field generator
    and contain every entry of xs; xs must be positive with sum one.
    """
    k = field.degree
    f_vecs = [[Fraction(lattice.basis.at(i, j), lattice.den)
               for i in range(k)] for j in range(k)]
    cone = _Cone(field, f_vecs)
    moves = cone.fix(move_cap)
    basis = ExactMatrix.from_columns(cone.f)
    inv = basis.inverse()

    def rows_ok(cols):
        if any(x < 0 for row in cols for x in row):
            return False
        return all(any(row[j] > 0 for row in cols) for j in range(k))

    n_power, rows = _power_search(
        field, inv, [x.coords for x in xs], rows_ok, 0, n_cap, "path rows")
    level0 = tuple(sum(row[j] for row in rows) for j in range(k))

    def all_positive(cols):
        return all(x >= 1 for col in cols for x in col)

    m_power, x_cols = _power_search(
        field, inv, cone.f, all_positive, 1, m_cap, "incidence")
    # row j of the output is the basis expansion of lam^M f_j, so the
    # weights z are a right eigenvector for lam^M
    a_tilde = ExactMatrix.from_rows(x_cols)

    lam_shift = field.lam().inverse() ** n_power
    z = [pj * lam_shift for pj in cone.p]
    one = field.one()
    if sum((z[j] * level0[j] for j in range(k)), field.zero()) != one:
        raise InternalError("path weights do not sum to one")
    mu = field.lam() ** m_power
    for i in range(k):
        lhs = sum((z[j] * int(a_tilde.at(i, j)) for j in range(k)),
                  field.zero())
        if lhs != mu * z[i]:
            raise InternalError("weights are not an eigenvector of the "
                                "output matrix")
    for i, x in enumerate(xs):
        lhs = sum((z[j] * rows[i][j] for j in range(k)), field.zero())
        if lhs != x:
            raise InternalError("rows do not regenerate the input weights")

    letters = _default_letters(k)
    rules = {}
    for j, letter in enumerate(letters):
        rules[letter] = RunWord(
            (letters[t], int(a_tilde.at(t, j))) for t in range(k))
    out = Substitution(rules, alphabet=letters)
    proper = out.properness_witness()
    if proper is None or proper[0] != 1:
        raise InternalError("output substitution is not proper at depth one")
    diagram = diagram_from_substitution(out, level0=level0)

    pd_out = perron_data(a_tilde)
    out_lattice = lattice_of(pd_out, level0=level0)
    for j in range(k):
        gen = out_lattice.generators[j]
        transported = sum(
            ((mu ** t) * gen[t] for t in range(pd_out.k)), field.zero())
        if transported != z[j]:
            raise InternalError("output eigenvector does not match the "
                                "constructed weights")
    comparison = groups_equal(lattice, out_lattice, m=m_power)
    if comparison["status"] != "equal":
        raise InternalError("output group is not identified with the input "
                            "group")

    return {
        "field": field,
        "letters": letters,
        "matrix": a_tilde,
        "rows": rows,
        "level0": level0,
        "weights": tuple(z),
        "alpha": sum(z[1:], z[0]) if k > 1 else z[0],
        "basis_power": n_power,
        "matrix_power": m_power,
        "moves": moves,
        "substitution": out,
        "diagram": diagram,
        "properness": proper,
        "groups": comparison,
    }


def minimize_vertices(system, move_cap=200, n_cap=200, m_cap=200):
    """Rebuild a primitive system on as few vertices as its field degree.

    Accepts a Substitution or an incidence matrix.  The output is a
    proper substitution on degree-many letters whose diagram carries the
    same ordered group, certified exactly.
    """
    if isinstance(system, Substitution):
        a = system.incidence_matrix()
    else:
        a = _coerce_matrix(system)
    pd = perron_data(a)
    lattice = lattice_of(pd)
    report = _minimize_core(pd.field, lattice, list(pd.eigvec),
                            move_cap=move_cap, n_cap=n_cap, m_cap=m_cap)
    report["input_size"] = a.rows
    report["output_size"] = pd.k
    return report


def realize_group_matrix(matrix, weights, closure_cap=24,
                         move_cap=200, n_cap=200, m_cap=200):
    """Build a stationary system whose path group is generated by weights.

    matrix supplies the field and eigenvalue; weights are coordinate
    vectors of positive field elements summing to one.  The lattice they
    generate is first saturated until some eigenvalue power maps it into
    itself, then the shared pipeline runs on the saturated lattice.
    """
    a = _coerce_matrix(matrix)
    pd = perron_data(a)
    field = pd.field
    k = field.degree
    xs = []
    for coords in weights:
        elt = coords if not isinstance(coords, (list, tuple)) \
            else field.from_coords(coords)
        if certified_sign(elt) <= 0:
            raise DomainError("weights must be positive")
        xs.append(elt)
    if sum(xs[1:], xs[0]) != field.one():
        raise DomainError("weights must sum to one")
    vectors = [list(x.coords) for x in xs]
    try:
        h0, den0 = hnf_basis(vectors)
    except RankError:
        raise DomainError("weights must span the field over the rationals")

    mp = multiplication_matrices(field)
    cols = [[h0.at(i, j) / den0 for i in range(k)] for j in range(k)]
    closure_power = None
    for t in range(1, closure_cap + 1):
        cols = [list(mp.c.apply(v)) for v in cols]
        if all(_is_integral(_triangular_coords(h0, den0, v)) for v in cols):
            closure_power = t
            break
    if closure_power is None:
        raise DomainError("the weight lattice is not preserved by any "
                          "eigenvalue power up to %d" % closure_cap)

    gens = [list(v) for v in vectors]
    layer = [list(v) for v in vectors]
    for _ in range(closure_power - 1):
        layer = [list(mp.d.apply(v)) for v in layer]
        gens.extend([list(v) for v in layer])
    saturated = LatticeGroup(field, gens)

    report = _minimize_core(field, saturated, xs,
                            move_cap=move_cap, n_cap=n_cap, m_cap=m_cap)
    report["closure_power"] = closure_power
    return report


def enlarge_matrix(a, k_cap=64):
    """Grow a primitive matrix by one vertex, preserving its group.

    Returns the enlarged matrix together with the power k of the input
    eigenvalue it realizes; the identity A' (x, lam-1) = lam^k (x, lam-1)
    and the group comparison are certified exactly.
    """
    a = _coerce_matrix(a)
    pd = perron_data(a)
    s = a.rows
    colsums = [sum(int(a.at(i, j)) for i in range(s)) for j in range(s)]
    power = None
    p = a
    for k in range(1, k_cap + 1):
        if all(int(p.at(i, j)) >= colsums[j]
               for i in range(s) for j in range(s)):
            power = k
            break
        p = p * a
    if power is None:
        raise CapabilityError("no power below %d dominates the column sums"
                              % k_cap)
    nxt = p * a
    rows = []
    for i in range(s):
        rows.append([int(p.at(i, j)) - (colsums[j] - 1) for j in range(s)]
                    + [1])
    last = [sum(int(nxt.at(i, j)) - int(p.at(i, j)) for i in range(s))
            for j in range(s)] + [0]
    rows.append(last)
    out = ExactMatrix.from_rows(rows)

    exponent = primitivity_exponent(out)
    if exponent is None:
        raise InternalError("enlargement lost primitivity")
    lam = pd.field.lam()
    y = list(pd.eigvec) + [lam - pd.field.one()]
    scale = lam ** power
    for i in range(s + 1):
        lhs = sum((y[j] * int(out.at(i, j)) for j in range(s + 1)),
                  pd.field.zero())
        if lhs != scale * y[i]:
            raise InternalError("enlargement broke the eigenvector "
                                "identity")
    comparison = groups_equal(lattice_of(pd),
                              lattice_of(perron_data(out)), m=power)
    if comparison["status"] != "equal":
        raise InternalError("enlargement changed the path group")
    return {
        "matrix": out,
        "power": power,
        "primitivity": exponent,
        "groups": comparison,
    }


def _needs(letters, extra_counts):
    """Column targets: 3 opening letters for a1, 2 plus itself elsewhere."""
    s = len(letters)
    needs = []
    for j in range(s):
        need = [0] * s
        need[0] += 2
        need[j] += 1
        for t in range(s):
            need[t] += extra_counts[j][t]
        needs.append(need)
    return needs


def _frame_rules(letters, cols, needs, middles):
    """Rules a1 a_j <middle> <surplus runs> a1 with exact letter counts."""
    rules = {}
    for j, letter in enumerate(letters):
        surplus = [cols[j][t] - needs[j][t] for t in range(len(letters))]
        if any(x < 0 for x in surplus):
            raise InternalError("column cannot host the frame letters")
        word = RunWord.from_letters((letters[0], letter))
        word = word + middles[j]
        word = word + RunWord((letters[t], surplus[t])
                              for t in range(len(letters)))
        rules[letter] = word + RunWord.from_letters((letters[0],))
    return rules


def _contains_subword(big, small):
    n, m = len(big), len(small)
    return any(big[i:i + m] == small for i in range(n - m + 1))


def build_soe_substitution(subst, block_length, n_cap=64,
                           piece_check_limit=10 ** 6):
    """Rewrite a primitive substitution so every length-(l+1) word occurs.

    The output is proper, keeps the path group (via an exact power
    comparison), and its language contains all s^(l+1) words of length
    block_length + 1, which strictly separates its complexity from any
    aperiodic input.
    """
    if not isinstance(subst, Substitution):
        raise DomainError("expected a substitution")
    if subst.primitivity() is None:
        raise DomainError("substitution must be primitive")
    l = int(block_length)
    if l < 1:
        raise DomainError("block length must be at least 1")
    letters = subst.alphabet
    s = len(letters)
    a = subst.incidence_matrix()

    pieces = [tuple(w) for w in product(letters, repeat=l + 1)]
    block = RunWord(())
    for piece in pieces:
        block = block + RunWord.from_letters(piece)
    block_counts = block.letter_counts()
    extra = [[0] * s for _ in range(s)]
    for t, letter in enumerate(letters):
        extra[0][t] = block_counts.get(letter, 0)
    needs = _needs(letters, extra)

    power = None
    p = a
    for n in range(1, n_cap + 1):
        cols = [[int(p.at(t, j)) for t in range(s)] for j in range(s)]
        if all(cols[j][t] >= needs[j][t]
               for j in range(s) for t in range(s)):
            power = n
            break
        p = p * a
    if power is None:
        raise CapabilityError("no power below %d fits the word blocks"
                              % n_cap)

    middles = [block] + [RunWord(()) for _ in range(s - 1)]
    rules = _frame_rules(letters, cols, needs, middles)
    zeta = Substitution(rules, alphabet=letters)

    if zeta.incidence_matrix() != p:
        raise InternalError("rewritten rules miscount the incidence")
    proper = zeta.properness_witness()
    if proper is None or proper[0] != 1:
        raise InternalError("rewritten substitution is not proper")
    first_rule = zeta.rules[letters[0]]
    pieces_checked = first_rule.length <= piece_check_limit
    if pieces_checked:
        text = first_rule.expand()
        for piece in pieces:
            if not _contains_subword(text, piece):
                raise InternalError("a word block is missing from the "
                                    "first rule")
    count = zeta.complexity(l + 1)
    if count != s ** (l + 1):
        raise InternalError("rewritten language misses a word of length "
                            "%d" % (l + 1))
    original = subst.complexity(l + 1)
    comparison = groups_equal(lattice_of(perron_data(a)),
                              lattice_of(perron_data(p)), m=power)
    if comparison["status"] != "equal":
        raise InternalError("rewriting changed the path group")
    return {
        "substitution": zeta,
        "power": power,
        "block_length": l,
        "full_count": count,
        "input_count": original,
        "separated": original < count,
        "pieces_checked": pieces_checked,
        "properness": proper,
        "groups": comparison,
    }


def build_oe_alphabet_family(subst, steps=1, probe_n=40, scan_n=60,
                             power_cap=16, k_cap=64):
    """Iterate: bound the complexity slope, then rebuild on a strictly
    larger alphabet with complexity above that bound.

    Each member is proper, primitive, carries the same path group as the
    previous member (exact comparison at the accumulated matrix power),
    and its complexity is checked to exceed (bound+1) n on an initial
    window.
    """
    if not isinstance(subst, Substitution):
        raise DomainError("expected a substitution")
    if subst.primitivity() is None:
        raise DomainError("substitution must be primitive")
    members = []
    current = subst
    for _ in range(int(steps)):
        bound = max(linear_bound_estimate(current, probe_n), current.size)
        target = bound + 2
        a = current.incidence_matrix()
        accumulated = 1
        while a.rows < target:
            grown = enlarge_matrix(a, k_cap=k_cap)
            a = grown["matrix"]
            accumulated *= grown["power"]
        s = a.rows
        b = a
        exponent = None
        for e in range(1, power_cap + 1):
            entries = [[int(b.at(i, j)) for j in range(s)] for i in range(s)]
            if (all(x >= 1 for row in entries for x in row)
                    and all(entries[0][j] >= 2 for j in range(s))
                    and entries[0][0] >= 3):
                exponent = e
                break
            b = b * a
        if exponent is None:
            raise CapabilityError("no power below %d seats the frame"
                                  % power_cap)
        accumulated *= exponent

        letters = _default_letters(s)
        cols = [[int(b.at(t, j)) for t in range(s)] for j in range(s)]
        needs = _needs(letters, [[0] * s for _ in range(s)])
        middles = [RunWord(()) for _ in range(s)]
        rules = _frame_rules(letters, cols, needs, middles)
        zeta = Substitution(rules, alphabet=letters)

        if zeta.incidence_matrix() != b:
            raise InternalError("family member miscounts the incidence")
        proper = zeta.properness_witness()
        if proper is None or proper[0] != 1:
            raise InternalError("family member is not proper")
        for n in range(1, scan_n + 1):
            if zeta.complexity(n) <= (bound + 1) * n:
                raise InternalError("family member complexity fails the "
                                    "slope bound at length %d" % n)
        comparison = groups_equal(
            lattice_of(perron_data(current.incidence_matrix())),
            lattice_of(perron_data(b)), m=accumulated)
        if comparison["status"] != "equal":
            raise InternalError("family member changed the path group")
        members.append({
            "substitution": zeta,
            "alphabet_size": s,
            "slope_bound": bound,
            "matrix_power": accumulated,
            "properness": proper,
            "groups": comparison,
        })
        current = zeta
    return members


def _partitions(total, max_part):
    if total == 0:
        yield ()
        return
    for part in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def enumerate_rational_y(q):
    """All stationary odometer presentations of the rational weights Y
    with denominator exactly q.

    Each admissible descending partition of q gives one system; the
    report carries the exact regeneration identity rows * base = weights.
    """
    q = int(q)
    if q < 1:
        raise DomainError("denominator must be at least 1")
    systems = []
    for parts in _partitions(q, q):
        # the gcd of the parts divides their sum q, so coprimality with
        # q is the same as the parts having no common factor
        if gcd(*parts) != 1:
            continue
        weights = [Fraction(c, q) for c in parts]
        rows = parts
        base = Fraction(1, q)
        level0 = q
        for row, weight in zip(rows, weights):
            if row * base != weight:
                raise InternalError("rows do not regenerate the weights")
        if level0 * base != 1:
            raise InternalError("path weights do not sum to one")
        systems.append({
            "partition": parts,
            "weights": tuple(weights),
            "rows": tuple(rows),
            "level0": level0,
            "matrix": ((q,),),
            "base": base,
        })
    return systems


def verify_lind_example(cap=64):
    """Certify the cubic whose matrix turns positive only at power 49.

    Checks the characteristic polynomial, brackets the dominant root in
    (3.89, 3.90), finds the exact positivity threshold, confirms the
    power-49 bound, and exhibits a nonpositive entry one step earlier.
    """
    c = ExactMatrix.from_rows([[0, 0, 46], [1, 0, 15], [0, 1, -3]])
    poly = charpoly(c)
    if poly != IntPolynomial((-46, -15, 3, 1)):
        raise InternalError("companion matrix has the wrong polynomial")
    field, degree = perron_minimal_polynomial(c)
    if degree != 3:
        raise InternalError("dominant root generates the wrong degree")
    lo, hi = field.refined_interval(Fraction(1, 1000))
    if not (Fraction(389, 100) < lo and hi < Fraction(390, 100)):
        raise InternalError("dominant root left the expected bracket")
    exponent = eventual_positivity_exponent(c, cap=cap)
    if exponent is None:
        raise InternalError("matrix never turned positive below the cap")
    if exponent > 49:
        raise InternalError("positivity threshold exceeds the power-49 "
                            "bound")
    if not (c ** 49).is_positive:
        raise InternalError("power 49 is not positive")
    prev = c ** (exponent - 1)
    witness = None
    for i in range(3):
        for j in range(3):
            if prev.at(i, j) <= 0:
                witness = (i, j, int(prev.at(i, j)))
                break
        if witness:
            break
    if witness is None:
        raise InternalError("threshold is not minimal")
    return {
        "polynomial": poly,
        "root_interval": (lo, hi),
        "exponent": exponent,
        "bound_holds": exponent <= 49,
        "witness_power": exponent - 1,
        "witness": witness,
    }
