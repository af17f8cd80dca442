"""Matrices of relations for modular composition.

A relation of the pair (a, f) is a bivariate polynomial r(x, y) with
x-degree below m such that r(x, a) = 0 mod f.  This module builds candidate
bases of the module of relations by matrix fraction reconstruction from
truncated expansions of X^T (yI - M_a)^{-1} X at y = 0, certifies or repairs
them, divides by them to compose, and changes between the x- and y-bases of
K[x]/<f>.
"""

from math import ceil

from .field import NotCoprime
from .upoly import Poly, _add, _sub, _mul, _rem, _trim, _scale, _xgcd
from .pmat import (
    PolyMatrix, Shift, SingularMatrix, approximant_basis, hermite_form,
    minimal_kernel_vector, pm_determinant,
)
from .blockseq import (
    BivarPoly, FAIL, ZeroConstantTerm, brent_kung_compose, bivar_compose_nz,
    block_truncated_powers, truncated_powers,
)

__all__ = [
    "ParameterProfile", "DEFAULT_PROFILE", "HankelBlock", "RelationMatrix",
    "build_block_hankel", "candidate_basis", "matrix_of_relations",
    "compose_with_relation_matrix", "change_of_basis", "NotCoprime",
]

CERT = "Cert"
NOCERT = "NoCert"


class ParameterProfile:
    """Block size and degree choices for the composition pipeline.

    The defaults correspond to cubic-time matrix products, giving block
    size m(n) = ceil(n^(1/3)) and degree d = ceil(n/m).  Override eta to
    experiment with other trade-offs.
    """

    __slots__ = ("omega", "omega2", "eta", "kappa")

    def __init__(self, omega=3, omega2=4, eta=None, kappa=None):
        self.omega = omega
        self.omega2 = omega2
        if eta is None:
            eta = 1 / (1 + (omega - 1) / ((omega2 - 2) / 2))
        if kappa is None:
            kappa = 1 + 1 / (1 / (omega - 1) + 2 / (omega2 - 2))
        self.eta = eta
        self.kappa = kappa

    def block_size(self, n):
        m = ceil(n ** self.eta - 1e-9)
        return max(1, min(m, n))

    def block_degree(self, n, m):
        return max(1, -(-n // m))


DEFAULT_PROFILE = ParameterProfile()


class HankelBlock:
    """Constant (md) x (md) matrix with block (i, j) = X^T M_a^{i+j} X."""

    __slots__ = ("h", "m", "d", "ring")

    def __init__(self, h, m, d, ring):
        self.h = h
        self.m = m
        self.d = d
        self.ring = ring

    def block(self, i, j):
        m = self.m
        return [row[j * m:(j + 1) * m] for row in self.h[i * m:(i + 1) * m]]


class RelationMatrix:
    """Candidate basis of relations with its certification flag."""

    __slots__ = ("R", "flag", "m", "d")

    def __init__(self, R, flag, m, d):
        self.R = R
        self.flag = flag
        self.m = m
        self.d = d

    @property
    def certified(self):
        return self.flag == CERT

    def __repr__(self):
        return "RelationMatrix(m=%d, d=%d, %s)" % (self.m, self.d, self.flag)


def _check_block_args(f, m):
    n = int(f.degree)
    if n < 1:
        raise ValueError("f must have positive degree")
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= deg f")
    return n


def _power_blocks(f, a, m, count):
    """[x^i a^k rem f]_0^{m-1} for i < m, k < count, as raw lists."""
    R = f.ring
    if f.c and not R.is_zero(f.c[0]):
        grid = block_truncated_powers(f, a, m, count)
        return [[grid[i][k].c for k in range(count)] for i in range(m)]
    # f(0) = 0: fall back to plain powers (test-only path)
    out = [[None] * count for _ in range(m)]
    ak = [R.one]
    for k in range(count):
        for i in range(m):
            v = _rem([R.zero] * i + ak, f.c, R)
            out[i][k] = _trim(v[:m], R)
        ak = _rem(_mul(ak, a.c, R), f.c, R)
    return out


def build_block_hankel(f, a, m, d):
    """The block-Hankel matrix with blocks X^T M_a^k X, k < 2d - 1."""
    n = _check_block_args(f, m)
    del n
    R = f.ring
    count = 2 * d - 1
    cols = _power_blocks(f, a, m, count)
    blocks = []
    for k in range(count):
        blk = [[R.zero] * m for _ in range(m)]
        for j in range(m):
            col = cols[j][k]
            for i in range(min(m, len(col))):
                blk[i][j] = col[i]
        blocks.append(blk)
    h = [[blocks[bi + bj][i][j]
          for bj in range(d) for j in range(m)]
         for bi in range(d) for i in range(m)]
    return HankelBlock(h, m, d, R)


def _series_matrix_cols(f, ainv, m, order):
    """Columns of S = sum_k S_k y^k with S_k = -X^T M_a^{-k-1} X, truncated
    at the given order, in the column-of-rows raw layout."""
    R = f.ring
    grid = block_truncated_powers(f, ainv, m, order + 1)
    # column i of S holds, in row j, the y-polynomial whose k-th coefficient
    # is -(coefficient of x^j in x^i a^{-k-1} rem f)
    cols = []
    for i in range(m):
        col = []
        for j in range(m):
            cj = [R.neg(grid[i][k + 1].c[j]) if j < len(grid[i][k + 1].c)
                  else R.zero for k in range(order)]
            col.append(_trim(cj, R))
        cols.append(col)
    return cols


def _inverse_mod(a, f):
    R = f.ring
    g, u, _ = _xgcd(a.c, f.c, R)
    if len(g) != 1:
        raise NotCoprime("gcd(a, f) != 1")
    return Poly._raw(_rem(_scale(u, R.inv(g[0]), R), f.c, R), R)


def candidate_basis(f, a, m, d):
    """Weak Popov candidate basis of the relations of (a, f), with a flag
    telling whether it is certifiably a basis."""
    n = _check_block_args(f, m)
    R = f.ring
    if not f.c or R.is_zero(f.c[0]):
        raise ZeroConstantTerm("f(0) = 0")
    ainv = _inverse_mod(a, f)
    order = 2 * d
    s_cols = _series_matrix_cols(f, ainv, m, order)
    zero = Poly.zero(R)
    ident_cols = [[zero] * m for _ in range(m)]
    for i in range(m):
        ident_cols[i][i] = Poly.constant(R.neg(R.one), R)
    cols = ([[Poly._raw(list(c), R) for c in col] for col in s_cols]
            + [[ident_cols[i][j] for j in range(m)] for i in range(m)])
    F = PolyMatrix.from_columns(cols, R)
    P = approximant_basis(F, order, Shift([0] * (2 * m)))
    Rm = PolyMatrix([[P.e[i][j] for j in range(m)] for i in range(m)], R)
    diag_sum = sum(max(0, int(Rm.e[j][j].degree)) for j in range(m))
    degR = max(0, int(Rm.degree()))
    cert = diag_sum == n and all(
        int(P.column_degree(j)) >= degR for j in range(m, 2 * m))
    return RelationMatrix(Rm, CERT if cert else NOCERT, m, d)


def _column_to_bivar(col, m, R):
    return BivarPoly(list(col), R, m=m)


def matrix_of_relations(f, a, m, d, tape):
    """A matrix whose columns are relations of (a, f), of size m' < 2m,
    or Fail.  Consumes m - 2 tape entries when m > 2."""
    R = f.ring
    cand = candidate_basis(f, a, m, d)
    if cand.certified:
        return cand
    Rm = cand.R
    if m == 1:
        if not brent_kung_compose(f, a, Rm.e[0][0]).is_zero():
            return FAIL
        return cand
    r_col = Rm.column(0)
    s_col = list(Rm.column(1))
    for i in range(2, m):
        ci = tape.next()
        if not R.is_zero(ci):
            col = Rm.column(i)
            s_col = [Poly._raw(_add(s_col[j].c, _scale(col[j].c, ci, R), R), R)
                     for j in range(m)]
    r_biv = _column_to_bivar(r_col, m, R)
    s_biv = _column_to_bivar(s_col, m, R)
    if not bivar_compose_nz(f, a, r_biv).is_zero():
        return FAIL
    if not bivar_compose_nz(f, a, s_biv).is_zero():
        return FAIL
    if m == 2:
        return RelationMatrix(Rm, NOCERT, m, d)
    return _sylvester_relations(r_col, s_col, d, R)


def _xdeg(col, R):
    for i in range(len(col) - 1, -1, -1):
        if col[i].c:
            return i
    return -1


def _sylvester_relations(r_col, s_col, d, R):
    """Matrix of relations built from two coprime relations r, s, viewed as
    polynomials in x over K[y]; Fail when they share a factor in K(y)[x]."""
    dr = _xdeg(r_col, R)
    ds = _xdeg(s_col, R)
    if dr < 0 or ds < 0:
        return FAIL
    if dr == 0 and ds == 0:
        g = Poly._raw(list(r_col[0].c), R).gcd(Poly._raw(list(s_col[0].c), R))
        return RelationMatrix(PolyMatrix([[g]], R), NOCERT, 1, d)
    mprime = dr + ds
    zero = Poly.zero(R)
    cols = []
    for j in range(ds):
        cols.append([zero] * j + [r_col[i] for i in range(dr + 1)]
                    + [zero] * (ds - 1 - j))
    for j in range(dr):
        cols.append([zero] * j + [s_col[i] for i in range(ds + 1)]
                    + [zero] * (dr - 1 - j))
    S = PolyMatrix.from_columns(cols, R)
    det = pm_determinant(S)
    if det.is_zero():
        return FAIL
    return RelationMatrix(S, NOCERT, mprime, d)


def compose_with_relation_matrix(f, a, g, rel):
    """g(x, a) rem f given a matrix of relations: divide the coefficient
    vector of g by the matrix, then evaluate the small remainder."""
    R = f.ring
    Rm = rel.R if isinstance(rel, RelationMatrix) else rel
    m = Rm.nrows
    if isinstance(g, BivarPoly):
        if g.m > m:
            raise ValueError("x-degree of g exceeds the matrix size")
        v = list(g.cols) + [Poly.zero(R)] * (m - g.m)
    else:
        v = [g] + [Poly.zero(R)] * (m - 1)
    if all(p.is_zero() for p in v):
        return Poly.zero(R)
    u, r = minimal_kernel_vector(Rm, v)
    ubar = [p % r for p in u]
    vt = []
    for i in range(m):
        acc = []
        for j in range(m):
            acc = _add(acc, _mul(Rm.e[i][j].c, ubar[j].c, R), R)
        q, rem = Poly._raw(acc, R).divrem(r)
        assert rem.is_zero()
        vt.append(q)
    gt = BivarPoly(vt, R, m=m)
    return bivar_compose_nz(f, a, gt)


def change_of_basis(f, gamma, a, m, d):
    """(R, mu, alpha) with R the Popov basis of relations of (gamma, f),
    mu the degree-n minimal polynomial of gamma mod f, and alpha the unique
    polynomial of degree < n with alpha(gamma) = a mod f; or Fail."""
    n = _check_block_args(f, m)
    R = f.ring
    if not f.c or R.is_zero(f.c[0]):
        raise ZeroConstantTerm("f(0) = 0")
    try:
        ginv = _inverse_mod(gamma, f)
    except NotCoprime:
        return FAIL
    order = 2 * d
    ginva = Poly._raw(_rem(_mul(ginv.c, a.c, R), f.c, R), R)
    rks = truncated_powers(f, ginv, ginva, m, order)
    s_vec = []
    for j in range(m):
        cj = [rks[k].c[j] if j < len(rks[k].c) else R.zero
              for k in range(order)]
        s_vec.append(Poly._raw(_trim(cj, R), R))
    s_cols = _series_matrix_cols(f, ginv, m, order)
    cols = [[Poly._raw(list(c), R) for c in col] for col in s_cols]
    zero = Poly.zero(R)
    for i in range(m):
        col = [zero] * m
        col[i] = Poly.constant(R.neg(R.one), R)
        cols.append(col)
    cols.append(s_vec)
    F = PolyMatrix.from_columns(cols, R)
    t = Shift([0] * (2 * m) + [order])
    Pbar = approximant_basis(F, order, t)
    Rm = PolyMatrix([[Pbar.e[i][j] for j in range(m)] for i in range(m)], R)
    valpha = [Pbar.e[i][2 * m] for i in range(m)]
    diag_sum = sum(max(0, int(Rm.e[j][j].degree)) for j in range(m))
    degR = max(0, int(Rm.degree()))
    if diag_sum < n:
        return FAIL
    P2m = [[Pbar.e[i][j] for j in range(2 * m)] for i in range(2 * m)]
    P = PolyMatrix(P2m, R)
    for j in range(m, 2 * m):
        if int(P.column_degree(j)) < degR:
            return FAIL
    T, certified = hermite_form(Rm)
    if not certified:
        return FAIL
    mu = T.e[0][0]
    if mu.degree < n:
        return FAIL
    acc = list(valpha[0].c)
    for j in range(1, m):
        acc = _sub(acc, _mul(T.e[0][j].c, valpha[j].c, R), R)
    alpha = Poly._raw(_rem(acc, mu.c, R), R)
    return Rm, mu, alpha
