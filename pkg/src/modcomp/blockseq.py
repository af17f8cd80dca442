"""Baby-steps/giant-steps kernels: Brent-Kung composition, power projection,
composition through a small minimal polynomial, bivariate (Nusken-Ziegler)
composition, and truncated modular powers.

All routines are generic over the coefficient ring; bivariate inputs use
:class:`BivarPoly`, which identifies g(x, y) = sum_j cols[j](y) x^j with the
column vector of its x-coefficients.
"""

from math import isqrt

from .upoly import (
    Poly, _add, _sub, _mul, _divrem, _rem, _trim, _scale, _series_inv,
    _rev, _powmod, _horner_mod,
)

__all__ = [
    "BivarPoly", "ProjectionVector", "Fail", "ZeroConstantTerm",
    "brent_kung_compose", "power_projection", "compose_small_minpoly",
    "simultaneous_bivar_compose", "bivar_compose_nz",
    "simultaneous_truncated_modmul", "truncated_powers",
    "block_truncated_powers", "seq_minpoly",
]

DEBUG_CHECKS = False


class Fail:
    """Las Vegas failure marker. Falsy, compares equal to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "Fail"


FAIL = Fail()


class ZeroConstantTerm(ValueError):
    """f(0) = 0 where a nonzero constant term is required."""


class BivarPoly:
    """g(x, y) with deg_x g < m, stored as m columns over K[y]."""

    __slots__ = ("m", "cols", "ring")

    def __init__(self, cols, ring, m=None):
        cols = list(cols)
        if m is None:
            m = max(1, len(cols))
        if len(cols) > m:
            raise ValueError("more columns than the x-degree bound allows")
        cols = cols + [Poly.zero(ring)] * (m - len(cols))
        self.m = m
        self.cols = cols
        self.ring = ring

    @classmethod
    def from_univariate_y(cls, g, m=1):
        """g(y) viewed as a bivariate polynomial constant in x."""
        return cls([g], g.ring, m=m)

    @property
    def ydeg(self):
        return max((c.degree for c in self.cols), default=float("-inf"))

    def y_coefficient(self, j):
        """The x-polynomial multiplying y^j, as a raw coefficient list."""
        return _trim([c[j] for c in self.cols], self.ring)

    def y_chunks(self, r):
        """Split as g = g_0 + g_1 y^r + ... with deg_y g_i < r."""
        top = int(self.ydeg) if self.cols and self.ydeg >= 0 else -1
        s = max(1, -(-(top + 1) // r))
        out = []
        for i in range(s):
            cols = [Poly._raw(_trim(c.c[i * r:(i + 1) * r], self.ring),
                              self.ring) for c in self.cols]
            out.append(BivarPoly(cols, self.ring, m=self.m))
        return out

    def substitute(self, f, a):
        """Naive g(x, a) rem f, for cross-checks."""
        R = self.ring
        out = []
        for j, col in enumerate(self.cols):
            val = _horner_mod(f.c, a.c, col.c, R)
            out = _add(out, [R.zero] * j + val, R)
        return Poly._raw(_rem(out, f.c, R), R)

    def __repr__(self):
        return "BivarPoly(m=%d, ydeg=%s)" % (self.m, self.ydeg)


class ProjectionVector:
    """Coefficients (r_0, ..., r_{n-1}) of a linear form on K[x]/<f>."""

    __slots__ = ("r", "ring")

    def __init__(self, r, ring):
        self.r = list(r)
        self.ring = ring

    def __len__(self):
        return len(self.r)

    def apply(self, coeffs):
        R = self.ring
        acc = R.zero
        for ri, ci in zip(self.r, coeffs):
            acc = R.add(acc, R.mul(ri, ci))
        return acc


def _bsgs_split(d):
    r = isqrt(d)
    if r * r < d:
        r += 1
    return r, -(-d // r)


def brent_kung_compose(f, a, g):
    """g(a) rem f by baby steps / giant steps in deg g."""
    R = f.ring
    d = len(g.c)
    if d == 0:
        return Poly.zero(R)
    if d == 1:
        return Poly.constant(g.c[0], R)
    r, s = _bsgs_split(d)
    ahat = [[R.one]]
    for _ in range(r):
        ahat.append(_rem(_mul(a.c, ahat[-1], R), f.c, R))
    # b_i = sum_j g_{ir+j} a^j rem f, 0 <= j < r
    bs = []
    gc = g.c
    for i in range(s):
        acc = []
        for j in range(r):
            k = i * r + j
            if k < len(gc) and not R.is_zero(gc[k]):
                acc = _add(acc, _scale(ahat[j], gc[k], R), R)
        bs.append(acc)
        if DEBUG_CHECKS:
            chunk = gc[i * r:(i + 1) * r]
            assert acc == _horner_mod(f.c, a.c, list(chunk), R)
    giant = ahat[r]
    out = bs[-1]
    for i in range(s - 2, -1, -1):
        out = _add(_rem(_mul(out, giant, R), f.c, R), bs[i], R)
    return Poly._raw(out, R)


def _transposed_mulmod(psi, b, f, R):
    """From psi_k = l(x^k rem f) for k < n, the functional of c -> l(b c rem f).

    Extends the sequence l(x^j rem f) up to j < 2n-1 through the linear
    recurrence given by f, then reads the new coefficients off one product
    with the reversal of b.
    """
    n = len(f) - 1
    lam = list(psi) + [R.zero] * max(0, n - len(psi))
    revf = list(reversed(f))
    u = _trim(_mul(lam, revf, R)[:n], R)
    lam_full = _mul(u, _series_inv(revf, 2 * n - 1, R), R)[:2 * n - 1]
    lam_full += [R.zero] * (2 * n - 1 - len(lam_full))
    br = _rev(b, n - 1, R) if b else []
    prod = _mul(br, lam_full, R)
    out = [prod[n - 1 + k] if n - 1 + k < len(prod) else R.zero
           for k in range(n)]
    return out


def power_projection(f, a, d, ell, engine="transposed"):
    """(l(1), l(a), ..., l(a^{d-1} rem f)) for the linear form ell."""
    R = f.ring
    n = len(f.c) - 1
    if d <= 0:
        return []
    if engine == "naive":
        out = []
        b = [R.one]
        for _ in range(d):
            out.append(ell.apply(b + [R.zero] * (n - len(b))))
            b = _rem(_mul(b, a.c, R), f.c, R)
        return out
    r, s = _bsgs_split(d)
    ahat = [[R.one]]
    for _ in range(r):
        ahat.append(_rem(_mul(a.c, ahat[-1], R), f.c, R))
    psi = list(ell.r) + [R.zero] * (n - len(ell.r))
    out = []
    for j in range(s):
        for i in range(r):
            k = i + r * j
            if k >= d:
                break
            coeffs = ahat[i]
            acc = R.zero
            for ci, pi in zip(coeffs, psi):
                acc = R.add(acc, R.mul(ci, pi))
            out.append(acc)
        if j != s - 1:
            psi = _transposed_mulmod(psi, ahat[r], f.c, R)
    return out


def seq_minpoly(seq, R):
    """Monic minimal generator of a linearly recurrent scalar sequence
    (Berlekamp-Massey).  With 2d terms of a sequence of true complexity
    <= d, the output is its exact minimal polynomial."""
    c = [R.one]          # current connection polynomial, little-endian in y
    b = [R.one]
    L = 0
    shift = 1
    binv = R.one
    for i, s in enumerate(seq):
        # discrepancy
        delta = s
        for j in range(1, L + 1):
            if j < len(c) and i - j >= 0:
                delta = R.add(delta, R.mul(c[j], seq[i - j]))
        if R.is_zero(delta):
            shift += 1
            continue
        coef = R.mul(delta, binv)
        adj = [R.zero] * shift + [R.mul(coef, x) for x in b]
        if 2 * L <= i:
            old = list(c)
            c = _sub(c + [R.zero] * max(0, len(adj) - len(c)), adj, R)
            if not c:
                c = []
            L = i + 1 - L
            b = old
            binv = R.inv(delta)
            shift = 1
        else:
            c = _sub(c + [R.zero] * max(0, len(adj) - len(c)), adj, R)
            shift += 1
    # c(y) = 1 + c_1 y + ...: connection with s_k + sum c_j s_{k-j} = 0;
    # the minimal polynomial is its reversal of degree L
    cpad = list(c) + [R.zero] * (L + 1 - len(c))
    mu = list(reversed(cpad[:L + 1]))
    mu = _trim(mu, R)
    if not mu:
        return [R.one]
    if not R.is_zero(R.sub(mu[-1], R.one)):
        mu = _scale(mu, R.inv(mu[-1]), R)
    return mu


def compose_small_minpoly(f, a, g, d, ell):
    """g(a) rem f through the minimal polynomial of a, when its degree is at
    most d; Fail otherwise (and with small probability even when it is)."""
    R = f.ring
    if not 1 <= d <= len(f.c) - 1:
        raise ValueError("d out of range")
    seq = power_projection(f, a, 2 * d, ell)
    mu = seq_minpoly(seq, R)
    if len(mu) - 1 > d:
        return FAIL
    t = brent_kung_compose(f, a, Poly._raw(list(mu), R))
    if not t.is_zero():
        return FAIL
    ghat = _rem(g.c, mu, R)
    return brent_kung_compose(f, a, Poly._raw(ghat, R))


def _slice(c, lo, width, R):
    if width <= 0 or lo >= len(c):
        return []
    return _trim(list(c[max(lo, 0):lo + width]), R)


def simultaneous_bivar_compose(f, a, gs, m, r):
    """(g_i(x, a) rem f)_i for g_i in K[x,y]_{<(m,r)}."""
    R = f.ring
    n = len(f.c) - 1
    nb = max(1, -(-n // m))
    ahat = [[R.one]]
    for _ in range(r - 1):
        ahat.append(_rem(_mul(a.c, ahat[-1], R), f.c, R))
    A = [[_slice(ahat[i], j * m, m, R) for j in range(nb)] for i in range(r)]
    out = []
    for g in gs:
        G_row = [g.y_coefficient(j) for j in range(r)]
        acc = []
        for j in range(nb):
            cell = []
            for i in range(r):
                if G_row[i] and A[i][j]:
                    cell = _add(cell, _mul(G_row[i], A[i][j], R), R)
            acc = _add(acc, [R.zero] * (j * m) + cell, R)
        out.append(Poly._raw(_rem(acc, f.c, R), R))
    return out


def bivar_compose_nz(f, a, g):
    """g(x, a) rem f (Nusken-Ziegler): y^r-chunking plus Horner in a^r."""
    R = f.ring
    top = g.ydeg
    if top < 0:
        return Poly.zero(R)
    d = int(top) + 1
    r, s = _bsgs_split(d)
    chunks = g.y_chunks(r)
    bs = simultaneous_bivar_compose(f, a, chunks, g.m, r)
    giant = _powmod(a.c, r, f.c, R)
    out = bs[-1].c
    for i in range(len(bs) - 2, -1, -1):
        out = _add(_rem(_mul(out, giant, R), f.c, R), bs[i].c, R)
    return Poly._raw(out, R)


def simultaneous_truncated_modmul(f, ps, qs, m):
    """Grid of [p_i q_j rem f]_0^{m-1} without computing full remainders."""
    R = f.ring
    n = len(f.c) - 1
    if m >= n:
        return [[Poly._raw(_rem(_mul(p.c, q.c, R), f.c, R), R) for q in qs]
                for p in ps]
    ell, t = divmod(n - m - 1, m)
    pbars = [_rev(p.c, n - 1, R) for p in ps]
    invrevf = _series_inv(_rev(f.c, n, R), max(n - 1, 1), R)
    qbars = [_trim(_mul(_rev(q.c, n - 1, R), invrevf, R)[:n - 1], R)
             for q in qs]
    P1 = [[_slice(pb, j * m + t, m, R) for j in range(ell + 1)]
          for pb in pbars]
    Q1 = [[_slice(qb, (ell - i) * m, m, R) for qb in qbars]
          for i in range(ell + 1)]
    Q2 = [[_slice(qb, (ell - 1 - i) * m, m, R) for qb in qbars]
          for i in range(ell)]
    out = []
    for i, p in enumerate(ps):
        row = []
        for j, q in enumerate(qs):
            h1 = []
            for k in range(ell + 1):
                if P1[i][k] and Q1[k][j]:
                    h1 = _add(h1, _mul(P1[i][k], Q1[k][j], R), R)
            hbar = _slice(h1, 0, m, R)
            h2 = []
            for k in range(ell):
                if P1[i][k] and Q2[k][j]:
                    h2 = _add(h2, _mul(P1[i][k], Q2[k][j], R), R)
            hbar = _add(hbar, _slice(h2, m, m, R), R)
            if t > 0:
                extra = _mul(_slice(pbars[i], 0, t, R),
                             _slice(qbars[j], ell * m + 1, m + t - 1, R), R)
                hbar = _add(hbar, _slice(extra, t - 1, m, R), R)
            # r_ij = (p_i q_j - rev(hbar, m-1) f) rem x^m
            pq = _trim(_mul(p.c, q.c, R)[:m], R)
            corr = _trim(_mul(_rev(hbar, m - 1, R), f.c, R)[:m], R)
            row.append(Poly._raw(_sub(pq, corr, R), R))
        out.append(row)
    return out


def truncated_powers(f, a, b, m, d):
    """([b a^k rem f]_0^{m-1})_{0 <= k < d}."""
    R = f.ring
    r, s = _bsgs_split(d)
    ahat = [Poly.one(R)]
    for _ in range(r):
        ahat.append(Poly._raw(_rem(_mul(a.c, ahat[-1].c, R), f.c, R), R))
    abar = [Poly._raw(_rem(b.c, f.c, R), R)]
    for _ in range(s - 1):
        abar.append(Poly._raw(_rem(_mul(ahat[r].c, abar[-1].c, R), f.c, R), R))
    grid = simultaneous_truncated_modmul(f, ahat[:r], abar, m)
    out = []
    for k in range(d):
        i, j = k % r, k // r
        out.append(grid[i][j])
    return out


def block_truncated_powers(f, a, m, d):
    """Grid cell (i, k) = [x^i a^k rem f]_0^{m-1}; needs f(0) != 0."""
    R = f.ring
    fc = f.c
    if not fc or R.is_zero(fc[0]):
        raise ZeroConstantTerm("f(0) = 0")
    xm1 = Poly._raw(_rem([R.zero] * (m - 1) + [R.one], fc, R), R)
    rks = truncated_powers(f, a, xm1, 2 * m - 1, d)
    f0inv = R.inv(fc[0])
    grid = [[None] * d for _ in range(m)]
    for k in range(d):
        cur = list(rks[k].c)
        grid[m - 1][k] = Poly._raw(_trim(cur[:m], R), R)
        for i in range(m - 1, 0, -1):
            c0 = cur[0] if cur else R.zero
            c = R.neg(R.mul(c0, f0inv))
            if not R.is_zero(c):
                fsl = fc[:m + i]
                add = [R.mul(c, x) for x in fsl]
                cur = _add(cur, add, R)
            assert not cur or R.is_zero(cur[0])
            cur = _trim(cur[1:], R)
            grid[i - 1][k] = Poly._raw(_trim(cur[:m], R), R)
    return grid
