"""Matrices over F_p[y]: approximant bases, Hermite form, determinants.

Conventions: a matrix acts on column vectors, and module bases are stored in
the columns.  For a shift t (one entry per row of a vector), the t-shifted
degree of a column v is max_i(deg v_i + t_i), and its pivot is the largest
index attaining the max.  A basis is weak Popov when the pivots of its
columns are pairwise distinct and column j pivots at row j; Popov adds monic
pivots and the off-pivot entries of each pivot row reduced below the pivot
degree, which makes the basis canonical.

Internally columns are plain lists of little-endian coefficient lists; the
:class:`PolyMatrix` wrapper carries ring and dimensions.
"""

from .upoly import (
    Poly, _add, _sub, _mul, _divrem, _scale, _trim,
)

__all__ = [
    "PolyMatrix", "Shift", "DimensionMismatch", "SingularMatrix",
    "pm_mul", "approximant_basis", "hermite_form", "pm_determinant",
    "minimal_kernel_vector", "reduce_vector",
]

MBASIS_BASE = 24


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class Shift(tuple):
    """A row-degree weighting tuple; length must match the vector dimension."""

    def __new__(cls, values):
        return super().__new__(cls, (int(v) for v in values))


class PolyMatrix:
    """Dense matrix over K[y].  Entries are Poly over a common ring."""

    __slots__ = ("nrows", "ncols", "e", "ring")

    def __init__(self, entries, ring):
        self.e = [list(row) for row in entries]
        self.nrows = len(self.e)
        self.ncols = len(self.e[0]) if self.e else 0
        for row in self.e:
            if len(row) != self.ncols:
                raise DimensionMismatch("ragged rows")
        self.ring = ring

    @classmethod
    def identity(cls, k, ring):
        one = Poly.one(ring)
        zero = Poly.zero(ring)
        return cls([[one if i == j else zero for j in range(k)]
                    for i in range(k)], ring)

    @classmethod
    def from_columns(cls, cols, ring):
        nrows = len(cols[0])
        return cls([[Poly._raw(list(cols[j][i]), ring)
                     for j in range(len(cols))] for i in range(nrows)], ring)

    def columns_raw(self):
        return [[list(self.e[i][j].c) for i in range(self.nrows)]
                for j in range(self.ncols)]

    def __getitem__(self, ij):
        return self.e[ij[0]][ij[1]]

    def column(self, j):
        return [self.e[i][j] for i in range(self.nrows)]

    def column_degree(self, j):
        degs = [self.e[i][j].degree for i in range(self.nrows)]
        return max(degs)

    def degree(self):
        return max((self.e[i][j].degree for i in range(self.nrows)
                    for j in range(self.ncols)), default=float("-inf"))

    def transpose(self):
        return PolyMatrix([[self.e[i][j] for i in range(self.nrows)]
                           for j in range(self.ncols)], self.ring)

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.e == other.e
                and self.ring == other.ring)

    def __repr__(self):
        return "PolyMatrix(%d x %d)" % (self.nrows, self.ncols)


def pm_mul(A, B):
    if A.ncols != B.nrows:
        raise DimensionMismatch("%dx%d times %dx%d" %
                                (A.nrows, A.ncols, B.nrows, B.ncols))
    R = A.ring
    out = []
    for i in range(A.nrows):
        row = []
        for j in range(B.ncols):
            acc = []
            for l in range(A.ncols):
                acc = _add(acc, _mul(A.e[i][l].c, B.e[l][j].c, R), R)
            row.append(Poly._raw(acc, R))
        out.append(row)
    return PolyMatrix(out, R)


# ---------------------------------------------------------------------------
# raw-column helpers

def _col_sub_scaled(dst, src, c, R):
    """dst -= c * src, entrywise on columns of coefficient lists."""
    mul = R.mul
    for i in range(len(dst)):
        s = src[i]
        if s:
            dst[i] = _sub(dst[i], [mul(c, x) for x in s], R)


def _col_sub_polymul(dst, src, q, R):
    """dst -= q * src for a polynomial factor q."""
    for i in range(len(dst)):
        if src[i]:
            dst[i] = _sub(dst[i], _mul(q, src[i], R), R)


def _mat_cols_mul(F_cols, P_cols, R, trunc=None):
    """Columns of F * P where both are given as raw columns (F: m rows)."""
    m = len(F_cols[0])
    out = []
    for pc in P_cols:
        acc = [[] for _ in range(m)]
        for l, entry in enumerate(pc):
            if not entry:
                continue
            fcol = F_cols[l]
            for i in range(m):
                if fcol[i]:
                    prod = _mul(entry, fcol[i], R)
                    if trunc is not None:
                        prod = _trim(prod[:trunc], R)
                    acc[i] = _add(acc[i], prod, R)
        if trunc is not None:
            acc = [_trim(c[:trunc], R) for c in acc]
        out.append(acc)
    return out


def _coeff(poly_list, s, R):
    return poly_list[s] if s < len(poly_list) else R.zero


def _mbasis(F_cols, sigma, shift, R):
    """Iterative order basis: returns (P_cols, deltas).

    P's columns generate {v : F v = 0 mod y^sigma}; deltas are the updated
    shifted degrees.  Pivot selection: columns are processed by increasing
    (delta, index); within a column the lowest available row index wins.
    """
    k = len(F_cols)
    m = len(F_cols[0]) if k else 0
    zero_c = []
    P_cols = [[[R.one] if i == j else list(zero_c) for i in range(k)]
              for j in range(k)]
    G_cols = [[list(c) for c in col] for col in F_cols]
    deltas = list(shift)
    for s in range(sigma):
        M = [[_coeff(G_cols[j][i], s, R) for i in range(m)]
             for j in range(k)]           # M[j][i]: column-major constants
        order = sorted(range(k), key=lambda j: (deltas[j], j))
        pivot_rows = []                   # (row, col) in selection order
        is_zero = R.is_zero
        for j in order:
            colM = M[j]
            for (pi, pj) in pivot_rows:
                c = colM[pi]
                if not is_zero(c):
                    factor = R.mul(c, R.inv(M[pj][pi]))
                    src = M[pj]
                    for i in range(m):
                        if not is_zero(src[i]):
                            colM[i] = R.sub(colM[i], R.mul(factor, src[i]))
                    _col_sub_scaled(P_cols[j], P_cols[pj], factor, R)
                    _col_sub_scaled(G_cols[j], G_cols[pj], factor, R)
            piv = None
            for i in range(m):
                if not is_zero(colM[i]):
                    piv = i
                    break
            if piv is not None:
                pivot_rows.append((piv, j))
        # only now multiply the pivot columns by y: the eliminations above
        # must combine columns as they stood at the start of the pass
        zero = R.zero
        for (_, j) in pivot_rows:
            P_cols[j] = [[zero] + c if c else [] for c in P_cols[j]]
            G_cols[j] = [[zero] + c if c else [] for c in G_cols[j]]
            deltas[j] += 1
    return P_cols, deltas


def _pmbasis(F_cols, sigma, shift, R):
    """Divide-and-conquer order basis; same contract as _mbasis."""
    if sigma <= MBASIS_BASE:
        return _mbasis(F_cols, sigma, shift, R)
    s1 = sigma // 2
    s2 = sigma - s1
    F1 = [[_trim(c[:s1], R) for c in col] for col in F_cols]
    P1, d1 = _pmbasis(F1, s1, shift, R)
    G = _mat_cols_mul(F_cols, P1, R, trunc=sigma)
    G2 = [[_trim(c[s1:sigma], R) for c in col] for col in G]
    P2, d2 = _pmbasis(G2, s2, d1, R)
    P = _mat_cols_mul(P1, P2, R)
    return P, d2


def _sdeg_pivot(col, shift):
    """(shifted degree, pivot row) of a raw column; pivot = largest index."""
    best = None
    piv = None
    for i, c in enumerate(col):
        if not c:
            continue
        d = len(c) - 1 + shift[i]
        if best is None or d >= best:
            best = d
            piv = i
    return best, piv


def _weak_popov_ms(cols, shift, R):
    """Mulders-Storjohann: column ops until pivots are pairwise distinct.

    Zero columns are rejected (the input must be nonsingular).
    """
    while True:
        seen = {}
        clash = None
        for j, col in enumerate(cols):
            sd, piv = _sdeg_pivot(col, shift)
            if piv is None:
                raise SingularMatrix("zero column during reduction")
            if piv in seen:
                clash = (seen[piv], j, piv)
                break
            seen[piv] = j
        if clash is None:
            return cols
        j1, j2, piv = clash
        d1 = len(cols[j1][piv]) - 1
        d2 = len(cols[j2][piv]) - 1
        if d1 > d2:
            j1, j2 = j2, j1
            d1, d2 = d2, d1
        c = R.mul(cols[j2][piv][-1], R.inv(cols[j1][piv][-1]))
        q = [R.zero] * (d2 - d1) + [c]
        _col_sub_polymul(cols[j2], cols[j1], q, R)


def _popov_normalize(cols, shift, R):
    """Canonicalize a column-reduced basis into shifted Popov form."""
    cols = _weak_popov_ms(cols, shift, R)
    k = len(cols)
    by_pivot = [None] * len(cols[0])
    for col in cols:
        _, piv = _sdeg_pivot(col, shift)
        by_pivot[piv] = col
    if any(c is None for c in by_pivot[:k]) or len(cols[0]) != k:
        # pivots of a square nonsingular reduced basis are a permutation
        raise SingularMatrix("pivot structure is not a permutation")
    cols = by_pivot
    for j, col in enumerate(cols):
        lead = col[j][-1]
        if not R.is_zero(R.sub(lead, R.one)):
            inv = R.inv(lead)
            cols[j] = [_scale(c, inv, R) for c in col]
    # reduce off-pivot entries of every pivot row below the pivot degree
    for _ in range(k * k + 2):
        changed = False
        for j in range(k):
            for i in range(k):
                if i == j:
                    continue
                if len(cols[j][i]) - 1 >= len(cols[i][i]) - 1 and cols[j][i]:
                    q, _ = _divrem(cols[j][i], cols[i][i], R)
                    if q:
                        _col_sub_polymul(cols[j], cols[i], q, R)
                        changed = True
        if not changed:
            return cols
    raise AssertionError("Popov reduction did not converge")


def approximant_basis(F, sigma, t):
    """The t-shifted Popov basis of {v in K[y]^k : F v = 0 mod y^sigma}."""
    if len(t) != F.ncols:
        raise DimensionMismatch("shift length %d for %d columns"
                                % (len(t), F.ncols))
    if sigma < 0:
        raise ValueError("negative order")
    R = F.ring
    if sigma == 0 or F.ncols == 0:
        return PolyMatrix.identity(F.ncols, R)
    F_cols = [[_trim(c[:sigma], R) for c in col] for col in F.columns_raw()]
    P_cols, _ = _pmbasis(F_cols, sigma, list(t), R)
    P_cols = _popov_normalize(P_cols, list(t), R)
    return PolyMatrix.from_columns(P_cols, R)


def hermite_form(R_mat):
    """Column-style Hermite normal form of a nonsingular matrix.

    Returns (T, certified): T upper triangular with monic diagonal, each row's
    off-diagonal entries of degree below the diagonal of that row, and T spans
    the same column module as the input.  The computation is a staircase-shift
    Popov reduction, so the transformation is a product of elementary
    (unimodular) column operations; `certified` records the structural
    re-checks on T.
    """
    R = R_mat.ring
    m = R_mat.nrows
    if m != R_mat.ncols:
        raise DimensionMismatch("Hermite form needs a square matrix")
    bound = sum(max(R_mat.e[i][j].degree if R_mat.e[i][j].c else 0
                    for i in range(m)) for j in range(m)) + 1
    shift = [i * (int(bound) + 1) for i in range(m)]
    cols = _popov_normalize(R_mat.columns_raw(), shift, R)
    T = PolyMatrix.from_columns(cols, R)
    certified = True
    for i in range(m):
        if not T.e[i][i].c or not R.is_zero(R.sub(T.e[i][i].c[-1], R.one)):
            certified = False
        for j in range(m):
            if j < i and T.e[i][j].c:
                certified = False
            if j > i and T.e[i][j].degree >= T.e[i][i].degree:
                certified = False
    return T, certified


def _det_by_gauss(mat, R):
    """Determinant of a constant matrix given as row lists of ring elements."""
    m = [list(row) for row in mat]
    k = len(m)
    det = R.one
    for col in range(k):
        piv = None
        for r in range(col, k):
            if not R.is_zero(m[r][col]):
                piv = r
                break
        if piv is None:
            return R.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = R.neg(det)
        det = R.mul(det, m[col][col])
        inv = R.inv(m[col][col])
        for r in range(col + 1, k):
            if not R.is_zero(m[r][col]):
                f = R.mul(m[r][col], inv)
                m[r] = [R.sub(a, R.mul(f, b)) for a, b in zip(m[r], m[col])]
    return det


def _lagrange_interp(xs, ys, R):
    """The polynomial of degree < len(xs) through (xs[i], ys[i])."""
    n = len(xs)
    # full product prod (y - x_i)
    full = [R.one]
    for x in xs:
        full = _mul(full, [R.neg(x), R.one], R)
    out = []
    for i in range(n):
        num, _ = _divrem(full, [R.neg(xs[i]), R.one], R)
        denom = R.one
        for j in range(n):
            if j != i:
                denom = R.mul(denom, R.sub(xs[i], xs[j]))
        c = R.mul(ys[i], R.inv(denom))
        out = _add(out, [R.mul(c, v) for v in num], R)
    return out


def _det_bareiss(rows, R):
    """Fraction-free determinant over K[y]; exact divisions by prior pivots."""
    a = [[list(e) for e in row] for row in rows]
    k = len(a)
    sign = R.one
    prev = [R.one]
    for col in range(k - 1):
        piv = None
        for r in range(col, k):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return []
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = R.neg(sign)
        for r in range(col + 1, k):
            for c in range(col + 1, k):
                num = _sub(_mul(a[r][c], a[col][col], R),
                           _mul(a[r][col], a[col][c], R), R)
                q, rem = _divrem(num, prev, R)
                assert not rem, "Bareiss division must be exact"
                a[r][c] = q
            a[r][col] = []
        prev = a[col][col]
    return _scale(a[k - 1][k - 1], sign, R)


def pm_determinant(M):
    """det M in K[y], by evaluation-interpolation when the field is large
    enough, else by fraction-free elimination."""
    if M.nrows != M.ncols:
        raise DimensionMismatch("determinant of a non-square matrix")
    if M.nrows == 0:
        return Poly.one(M.ring)
    R = M.ring
    k = M.nrows
    bound = sum(max(int(M.e[i][j].degree) if M.e[i][j].c else 0
                    for i in range(k)) for j in range(k)) + 1
    if getattr(R, "char", 0) > bound and R.is_prime_field:
        xs = list(range(bound))
        ys = []
        for x in xs:
            const = [[M.e[i][j].eval(x) for j in range(k)] for i in range(k)]
            ys.append(_det_by_gauss(const, R))
        return Poly._raw(_lagrange_interp(xs, ys, R), R)
    return Poly._raw(_det_bareiss([[e.c for e in row] for row in M.e], R), R)


def minimal_kernel_vector(R_mat, v):
    """(u, r) with R u = r v, r monic of minimal degree.

    Realized as an approximant basis of (R | -v) at an order past every
    degree the exact kernel generator can reach, with the last row's shift
    raised by deg v.
    """
    R = R_mat.ring
    m = R_mat.nrows
    if m != R_mat.ncols:
        raise DimensionMismatch("square matrix required")
    degR = max(0, int(R_mat.degree()))
    degv = max(0, max((int(p.degree) for p in v if p.c), default=0))
    # order high enough that any module element of the generator's shifted
    # degree has residual degree < sigma, hence is an exact kernel vector
    sigma = (m + 1) * degR + degv + 1
    Fe = [[R_mat.e[i][j] for j in range(m)] + [-v[i]] for i in range(m)]
    F = PolyMatrix(Fe, R)
    t = [0] * m + [degv]
    P = approximant_basis(F, sigma, Shift(t))
    best = None
    for j in range(m + 1):
        col = P.column(j)
        r = col[m]
        if r.is_zero():
            continue
        # exactness: R u = r v identically, not only mod y^sigma
        exact = True
        for i in range(m):
            acc = []
            for l in range(m):
                acc = _add(acc, _mul(R_mat.e[i][l].c, col[l].c, R), R)
            if _sub(acc, _mul(r.c, v[i].c, R), R):
                exact = False
                break
        if not exact:
            continue
        if best is None or r.degree < best[1].degree:
            best = ([col[i] for i in range(m)], r)
    if best is None:
        raise SingularMatrix("no exact kernel vector found")
    u, r = best
    lead = r.c[-1]
    if not R.is_zero(R.sub(lead, R.one)):
        inv = R.inv(lead)
        u = [Poly._raw(_scale(p.c, inv, R), R) for p in u]
        r = Poly._raw(_scale(r.c, inv, R), R)
    return u, r


def reduce_vector(P, w, t):
    """Divide the vector w by the column-reduced basis P: w = P q + rem,
    where no leading term of rem can be cancelled by a column of P.
    Returns (q, rem)."""
    R = P.ring
    k = P.nrows
    cols = P.columns_raw()
    pivots = {}
    for j in range(P.ncols):
        sd, piv = _sdeg_pivot(cols[j], t)
        pivots[piv] = (j, sd, len(cols[j][piv]) - 1)
    work = [list(p.c) for p in w]
    rem = [[] for _ in range(k)]
    quot = [[] for _ in range(P.ncols)]
    while True:
        sd, piv = _sdeg_pivot(work, t)
        if piv is None:
            break
        dw = len(work[piv]) - 1
        hit = pivots.get(piv)
        if hit is not None and hit[2] <= dw:
            j, _, dp = hit
            c = R.mul(work[piv][-1], R.inv(cols[j][piv][-1]))
            q = [R.zero] * (dw - dp) + [c]
            _col_sub_polymul(work, cols[j], q, R)
            quot[j] = _add(quot[j], q, R)
        else:
            lead = work[piv][-1]
            rem_i = rem[piv]
            if len(rem_i) < dw + 1:
                rem_i.extend([R.zero] * (dw + 1 - len(rem_i)))
            rem_i[dw] = R.add(rem_i[dw], lead)
            rem[piv] = rem_i
            work[piv] = _trim(work[piv][:-1], R)
    return ([Poly._raw(q, R) for q in quot],
            [Poly._raw(_trim(r, R), R) for r in rem])
