"""Composition modulo arbitrary moduli over prime fields.

A general modulus factors, through its separable decomposition, into pairwise
coprime parts of the shape h(x^(p^e))^ell with h monic separable.  Each part
is handled in the algebra F_p[theta, z] / <h(theta), (z^(p^e) - theta)^ell>:
an isomorphism mapping x to z (computed by the untangle/tangle pair) turns
the problem into a purely inseparable composition with coefficients in the
product of fields L = F_p[theta]/<h>, which the single-modulus machinery
solves under dynamic evaluation.  Chinese remaindering glues the parts back
together.
"""

from .field import QuotientRing, RandomTape, SplitError, qr_crt
from .upoly import (
    Poly, _add, _deriv, _divrem, _gcd, _monic, _mul, _pow_list, _rem,
    _scale, _series_inv, _sub, _trim,
)
from .blockseq import FAIL
from .compose import (
    annihilating_polynomial, base_case_compose, ceil_root_pow,
    compose_modulo_inseparable,
)

__all__ = [
    "NotSeparable", "SeparableDecomposition", "separable_decomposition",
    "TowerElement", "untangle", "tangle", "untangle_general",
    "tangle_general", "bivariate_reduction", "main_reduction",
    "compose_insep_product_of_fields", "compose_modulo_power",
    "modular_composition",
]


class NotSeparable(ValueError):
    """Tangling needs a separable outer modulus; this one has gcd(h, h') != 1."""


# ---------------------------------------------------------------------------
# separable decomposition

def _substitute_x_power(c, q, R):
    """u(x) -> u(x^q) on raw coefficient lists."""
    if q == 1 or not c:
        return list(c)
    out = [R.zero] * ((len(c) - 1) * q + 1)
    for i, v in enumerate(c):
        out[i * q] = v
    return out


class SeparableDecomposition:
    """A partial factorization f = c * prod h_i(x^(p^e_i))^ell_i.

    The parts are pairwise coprime, each h_i is monic separable of positive
    degree, no ell_i is divisible by p, and the (e_i, ell_i) pairs are
    pairwise distinct.
    """

    __slots__ = ("c", "parts", "ring")

    def __init__(self, c, parts, ring):
        self.c = c
        self.parts = parts
        self.ring = ring

    def factor(self, i):
        """The full part f_i = h_i(x^(p^e_i))^ell_i as a Poly."""
        h, e, ell = self.parts[i]
        R = self.ring
        q = R.char ** e
        return Poly._raw(_pow_list(_substitute_x_power(h.c, q, R), ell, R), R)

    def reconstruct(self):
        R = self.ring
        out = [self.c]
        for i in range(len(self.parts)):
            out = _mul(out, self.factor(i).c, R)
        return Poly._raw(out, R)

    def __repr__(self):
        return "SeparableDecomposition(c=%r, parts=%r)" % (self.c, self.parts)


def separable_decomposition(f):
    """Squarefree-style decomposition into separable parts, valid in char p.

    Multiplicities not divisible by p are peeled off by the classical
    gcd chain; what remains is a p-th power, hence of the form v(x^p) over a
    prime field, and recursing on v raises e by one.
    """
    R = f.ring
    p = R.char
    n = int(f.degree)
    if n < 1:
        raise ValueError("f must have positive degree")
    lead = f.c[-1]
    acc = {}

    def recurse(w, e):
        if len(w) <= 1:
            return
        dw = _deriv(w, R)
        if not dw:
            # w has only exponents divisible by p: w = v(x^p) over F_p
            recurse(w[::p], e + 1)
            return
        g = _gcd(w, dw, R)
        s, r = _divrem(w, g, R)
        assert not r
        i = 1
        while len(s) > 1:
            y = _gcd(s, g, R)
            out, r = _divrem(s, y, R)
            assert not r
            if len(out) > 1:
                key = (e, i)
                prev = acc.get(key)
                acc[key] = out if prev is None else _mul(prev, out, R)
            s = y
            g, r = _divrem(g, y, R)
            assert not r
            i += 1
        if len(g) > 1:
            recurse(g[::p], e + 1)

    recurse(_monic(f.c, R), 0)
    parts = [(Poly._raw(_monic(h, R), R), e, ell)
             for (e, ell), h in sorted(acc.items())]
    return SeparableDecomposition(lead, parts, R)


# ---------------------------------------------------------------------------
# tangling and untangling

class TowerElement:
    """A canonical representative in F_p[theta,z] / <h(theta), f_tower>.

    The polynomial is stored collapsed over L = F_p[theta]/<h>: a Poly in z
    whose coefficients are L-elements, with deg_z < ell * p^e.
    """

    __slots__ = ("poly", "h", "e", "ell")

    def __init__(self, poly, h, e, ell):
        self.poly = poly
        self.h = h
        self.e = e
        self.ell = ell

    @property
    def ring(self):
        return self.poly.ring

    def __eq__(self, other):
        return (isinstance(other, TowerElement) and self.poly == other.poly
                and self.h == other.h and (self.e, self.ell)
                == (other.e, other.ell))

    def __repr__(self):
        return "TowerElement(%r, e=%d, ell=%d)" % (self.poly, self.e,
                                                   self.ell)


def _theta_shift_digits(u, hq, ell, R):
    """Digits of u(theta + w) in (F_p[theta]/<hq>)[w] / <w^ell>.

    Coefficients are raw lists reduced modulo hq; hq need not be separable.
    Horner in theta + w: multiplying a digit vector by (theta + w) sends
    digit i to theta*digit_i + digit_{i-1}.
    """
    acc = [[] for _ in range(ell)]
    for coeff in reversed(u):
        nxt = []
        for i in range(ell):
            t = _rem([R.zero] + acc[i], hq, R)
            if i > 0:
                t = _add(t, acc[i - 1], R)
            nxt.append(t)
        acc = nxt
        if not R.is_zero(coeff):
            acc[0] = _add(acc[0], [coeff], R)
    return acc


def _untangle_raw(hq, ell, u, R):
    """z-coefficients of u(z) rem <hq(theta), (z - theta)^ell>, raw lists."""
    digits = _theta_shift_digits(u, hq, ell, R)
    # Horner in (z - theta) over the digits, highest first
    acc = [[] for _ in range(ell)]
    for k in range(ell - 1, -1, -1):
        nxt = []
        for i in range(ell):
            t = _rem([R.zero] + acc[i], hq, R) if acc[i] else []
            prev = acc[i - 1] if i > 0 else []
            nxt.append(_sub(prev, t, R))
        acc = nxt
        acc[0] = _add(acc[0], digits[k], R)
    return acc


def _quotient_ring(h):
    R = h.ring
    try:
        return QuotientRing(R, h.c)
    except ValueError as exc:
        raise NotSeparable(str(exc)) from exc


def untangle(h, ell, u):
    """The image of u under x -> z in F_p[theta,z]/<h(theta), (z-theta)^ell>."""
    R = h.ring
    L = _quotient_ring(h)
    cols = _untangle_raw(h.c, ell, u.c, R)
    poly = Poly._raw(_trim([tuple(c) for c in cols], L), L)
    return TowerElement(poly, h, 0, ell)


def _tangle_core(h, ell, Uc, L):
    """Preimage in F_p[x]_{<d*ell} of a z-polynomial with L-coefficients."""
    R = h.ring
    theta = L.reduce((0, 1))
    # digits of U(theta, theta + w) in L[w]/<w^ell>
    V = [L.zero] * ell
    for coeff in reversed(Uc):
        V = [L.add(L.mul(theta, V[i]), V[i - 1] if i > 0 else L.zero)
             for i in range(ell)]
        V[0] = L.add(V[0], coeff)
    # h(z) = (z - theta) * q with q a unit: q digits come from h(theta + w)
    hw = [L.zero] * (ell + 1)
    for coeff in reversed(h.c):
        hw = [L.add(L.mul(theta, hw[i]), hw[i - 1] if i > 0 else L.zero)
              for i in range(ell + 1)]
        hw[0] = L.add(hw[0], L.lift(coeff))
    qinv = _series_inv(_trim(hw[1:], L), ell, L)
    u = []
    hpow = [R.one]
    for k in range(ell):
        uk = _trim(list(V[0]), R)
        u = _add(u, _mul(uk, hpow, R), R)
        if k == ell - 1:
            break
        # strip psi(u_k * h^k) and divide once by (z - theta) * q
        D = [L.zero] * ell
        for coeff in reversed(uk):
            D = [L.add(L.mul(theta, D[i]), D[i - 1] if i > 0 else L.zero)
                 for i in range(ell)]
            D[0] = L.add(D[0], L.lift(coeff))
        V = [L.sub(V[i], D[i]) for i in range(ell)]
        V = V[1:] + [L.zero]
        prod = _mul(_trim(V, L), qinv, L)[:ell]
        V = prod + [L.zero] * (ell - len(prod))
        hpow = _mul(hpow, h.c, R)
    return u


def tangle(h, ell, U):
    """Inverse of untangle; requires h separable."""
    L = _quotient_ring(h)
    Uc = U.poly.c if isinstance(U, TowerElement) else list(U.c)
    Uc = [L.reduce(c) for c in Uc]
    if len(Uc) < ell:
        Uc = Uc + [L.zero] * (ell - len(Uc))
    return Poly._raw(_trim(_tangle_core(h, ell, Uc, L), h.ring), h.ring)


def untangle_general(h, e, ell, a):
    """x -> z into F_p[theta,z]/<h(theta), (z^(p^e) - theta)^ell>.

    Splits a along residues of exponents modulo p^e; each slice untangles at
    e = 0 and re-expands with z^(p^e) in place of z.
    """
    R = h.ring
    q = R.char ** e
    L = _quotient_ring(h)
    out = [L.zero] * (ell * q)
    for i in range(q):
        ai = _trim(a.c[i::q], R)
        if not ai:
            continue
        cols = _untangle_raw(h.c, ell, ai, R)
        for k in range(ell):
            out[k * q + i] = tuple(cols[k])
    poly = Poly._raw(_trim(out, L), L)
    return TowerElement(poly, h, e, ell)


def tangle_general(h, e, ell, B):
    """Inverse of untangle_general; requires h separable."""
    R = h.ring
    q = R.char ** e
    L = _quotient_ring(h)
    Bc = B.poly.c if isinstance(B, TowerElement) else list(B.c)
    Bc = [L.reduce(c) for c in Bc]
    Bc = Bc + [L.zero] * (ell * q - len(Bc))
    out = [R.zero] * (len(h.c) - 1) * ell * q
    for i in range(q):
        bi = _tangle_core(h, ell, Bc[i::q], L)
        for j, v in enumerate(bi):
            out[j * q + i] = v
    return Poly._raw(_trim(out, R), R)


# ---------------------------------------------------------------------------
# degree reduction of g

def bivariate_reduction(h, ell, alpha, g, tape):
    """g rem <h(theta), (y - alpha(theta))^ell>, or Fail.

    An annihilating polynomial mu of alpha modulo h lets g be reduced modulo
    mu^ell first; untangling along mu then yields coefficients in gamma that
    a modular composition with alpha pushes down to F_p[theta].  All subcalls
    share one random vector, replayed from the same tape slice.
    """
    R = h.ring
    d = int(h.degree)
    vals = tape.read(d + ceil_root_pow(d, 1))
    mu = annihilating_polynomial(h, alpha, RandomTape(R, vals))
    if mu is FAIL:
        return FAIL
    gred = _rem(g.c, _pow_list(mu.c, ell, R), R)
    tilde = _untangle_raw(mu.c, ell, gred, R)
    L = _quotient_ring(h)
    cols = []
    for ti in tilde:
        gi = Poly._raw(_trim(list(ti), R), R)
        Gi = base_case_compose(h, alpha, gi, RandomTape(R, vals))
        if Gi is FAIL:
            return FAIL
        cols.append(L.reduce(Gi.c))
    return Poly._raw(_trim(cols, L), L)


def main_reduction(h, e, ell, A, g, tape):
    """G with G(theta, A) = g(A) mod <h(theta), (z^(p^e) - theta)^ell>, or Fail.

    The characteristic polynomial of A in the tower is (y^(p^e) - alpha)^ell
    where alpha is A with p^e-th powered coefficients evaluated at theta, so
    g splits along exponent residues mod p^e and each slice reduces through
    bivariate_reduction against that alpha.
    """
    R = h.ring
    q = R.char ** e
    L = _quotient_ring(h)
    Ac = A.poly.c if isinstance(A, TowerElement) else list(A.c)
    alpha_L = L.zero
    tpow = L.one
    theta = L.reduce((0, 1))
    for Ai in Ac:
        alpha_L = L.add(alpha_L, L.mul(L.pow(L.reduce(Ai), q), tpow))
        tpow = L.mul(tpow, theta)
    alpha = Poly._raw(_trim(list(alpha_L), R), R)
    d = int(h.degree)
    vals = tape.read(d + ceil_root_pow(d, 1))
    out = [L.zero] * (ell * q)
    for i in range(q):
        gi = Poly._raw(_trim(g.c[i::q], R), R)
        Gi = bivariate_reduction(h, ell, alpha, gi, RandomTape(R, vals))
        if Gi is FAIL:
            return FAIL
        for k, v in enumerate(Gi.c):
            out[k * q + i] = v
    return Poly._raw(_trim(out, L), L)


# ---------------------------------------------------------------------------
# dynamic evaluation over a product of fields

class _LiftedTape:
    """A read-once tape whose entries live in a quotient ring.

    Base-field scalars are lifted on construction; entries that are already
    ring elements pass through, so a branch can replay a recorded segment.
    """

    __slots__ = ("field", "entries", "cursor")

    def __init__(self, field, values):
        self.field = field
        self.entries = [field.lift(v) if isinstance(v, int) else v
                        for v in values]
        self.cursor = 0

    def next(self):
        v = self.entries[self.cursor]
        self.cursor += 1
        return v

    def read(self, k):
        out = self.entries[self.cursor:self.cursor + k]
        if len(out) < k:
            raise IndexError("tape exhausted")
        self.cursor += k
        return out


def compose_insep_product_of_fields(h, c, e, ell, A, G, tape):
    """G(theta, A) rem <h(theta), (z^(p^e) - c(theta))^ell>, or Fail.

    Runs the purely inseparable composition with coefficients in the product
    of fields F_p[theta]/<h> under dynamic evaluation: an inversion hitting a
    zero divisor splits h, each branch replays the same random segment over
    its factor, and branch results recombine by Chinese remaindering.
    """
    R = h.ring
    n = ell * R.char ** e
    raw = tape.read(n + ceil_root_pow(n, 1))
    cc = list(c.c) if isinstance(c, Poly) else list(c)
    Ac = [list(v) for v in (A.poly.c if isinstance(A, TowerElement)
                            else A.c)]
    Gc = [list(v) for v in (G.poly.c if isinstance(G, TowerElement)
                            else G.c)]

    def branch(hc, cc, Ac, Gc):
        L = QuotientRing(R, hc)
        try:
            a_poly = Poly._raw(_trim([L.reduce(v) for v in Ac], L), L)
            g_poly = Poly._raw(_trim([L.reduce(v) for v in Gc], L), L)
            res = compose_modulo_inseparable(L.reduce(cc), e, ell, a_poly,
                                             g_poly, _LiftedTape(L, raw))
            return [(hc, res)]
        except SplitError as exc:
            out = []
            for hi in (exc.event.h1, exc.event.h2):
                hi = list(hi)
                out += branch(hi,
                              _rem(cc, hi, R),
                              [_rem(v, hi, R) for v in Ac],
                              [_rem(v, hi, R) for v in Gc])
            return out

    parts = branch(list(h.c), cc, Ac, Gc)
    if any(res is FAIL for _, res in parts):
        return FAIL
    L = _quotient_ring(h)
    out = []
    for k in range(n):
        pieces = [(hc, list(res.c[k]) if k < len(res.c) else [])
                  for hc, res in parts]
        out.append(L.reduce(qr_crt(pieces, R)))
    return TowerElement(Poly._raw(_trim(out, L), L), h, e, ell)


# ---------------------------------------------------------------------------
# composition modulo h(x^(p^e))^ell and the general driver

def compose_modulo_power(h, e, ell, a, g, tape):
    """g(a) rem h(x^(p^e))^ell, or Fail.

    Untangle a into the tower, reduce g against the characteristic polynomial
    of the image, compose over the product of fields, tangle back.
    """
    R = h.ring
    d = int(h.degree)
    q = R.char ** e
    nd = ell * q
    rho = max(d, nd)
    vals = tape.read(rho + ceil_root_pow(rho, 1))
    fc = _pow_list(_substitute_x_power(h.c, q, R), ell, R)
    A = untangle_general(h, e, ell, Poly._raw(_rem(a.c, fc, R), R))
    G = main_reduction(h, e, ell, A, g,
                       RandomTape(R, vals[:d + ceil_root_pow(d, 1)]))
    if G is FAIL:
        return FAIL
    theta = Poly._raw(_rem([R.zero, R.one], h.c, R), R)
    B = compose_insep_product_of_fields(
        h, theta, e, ell, A, G,
        RandomTape(R, vals[:nd + ceil_root_pow(nd, 1)]))
    if B is FAIL:
        return FAIL
    return tangle_general(h, e, ell, B)


def modular_composition(f, a, g, tape):
    """g(a) rem f for arbitrary f, or Fail; never a wrong value.

    Consumes n + ceil(n^(1/3)) tape entries for n = deg f; per-part subcalls
    replay prefixes of that single segment.
    """
    R = f.ring
    p = R.char
    n = int(f.degree)
    if n < 1:
        raise ValueError("f must have positive degree")
    vals = tape.read(n + ceil_root_pow(n, 1))
    dec = separable_decomposition(f)
    parts = []
    for i, (h, e, ell) in enumerate(dec.parts):
        fi = dec.factor(i).c
        ai = _rem(a.c, fi, R)
        q = p ** e
        alpha = Poly._raw(_rem([R.pow(ck, q) for ck in ai], h.c, R), R)
        d = int(h.degree)
        mu = annihilating_polynomial(
            h, alpha, RandomTape(R, vals[:d + ceil_root_pow(d, 1)]))
        if mu is FAIL:
            return FAIL
        chi = _pow_list(_substitute_x_power(mu.c, q, R), ell, R)
        gi = Poly._raw(_rem(g.c, chi, R), R)
        ni = d * ell * q
        rho = max(d, ni // d)
        bi = compose_modulo_power(
            h, e, ell, Poly._raw(ai, R), gi,
            RandomTape(R, vals[:rho + ceil_root_pow(rho, 1)]))
        if bi is FAIL:
            return FAIL
        parts.append((fi, bi.c))
    return Poly._raw(_trim(qr_crt(parts, R), R), R)
