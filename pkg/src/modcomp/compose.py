"""Randomized modular composition for a single modulus.

The base case composes g(a) rem f through a random change of basis and two
divisions by matrices of relations.  Around it sit an annihilating-polynomial
extractor, a minimal-polynomial routine that reports its certification
status, the deterministic small-characteristic recursion for purely
inseparable moduli, the Las Vegas dispatcher for those moduli, and power
series reversion.
"""

from .upoly import (
    Poly, _add, _mul, _rem, _trim, _scale, _pow_list, _series_inv,
    _shift_var,
)
from .field import NotCoprime
from .pmat import pm_determinant, hermite_form
from .blockseq import (
    FAIL, Fail, ProjectionVector, brent_kung_compose, compose_small_minpoly,
)
from .relations import (
    DEFAULT_PROFILE, change_of_basis, matrix_of_relations,
    compose_with_relation_matrix,
)

__all__ = [
    "base_case_compose", "annihilating_polynomial", "minimal_polynomial",
    "MinPolyResult", "compose_small_char", "compose_modulo_inseparable",
    "series_reversion", "BadSeriesUnit", "CharacteristicTooSmall",
    "ceil_root_pow", "inseparable_modulus",
]


class BadSeriesUnit(ValueError):
    """Series has the wrong valuation for reversion."""


class CharacteristicTooSmall(ValueError):
    """The field characteristic does not exceed the requested precision."""


def ceil_root_pow(n, num, den=3):
    """ceil(n^(num/den)) computed exactly on integers."""
    if n <= 1:
        return n
    t = max(1, round(n ** (num / den)))
    while t ** den < n ** num:
        t += 1
    while t > 1 and (t - 1) ** den >= n ** num:
        t -= 1
    return t


def _gcd_is_one(a, f, R):
    from .upoly import _gcd
    return len(_gcd(a, f, R)) == 1


def base_case_compose(f, a, g, tape, r1=None, r2=None):
    """g(a) rem f, or Fail.  Consumes n + ceil(n^(1/3)) tape entries for
    n = deg f > 1 (fewer when r1, r2 are supplied by the caller)."""
    R = f.ring
    n = int(f.degree)
    if n < 1:
        raise ValueError("f must have positive degree")
    if n == 1:
        return Poly.constant(g.eval(a.c[0] if a.c else R.zero), R)
    if r1 is None:
        r1 = tape.next()
    if r2 is None:
        r2 = tape.next()
    gs = Poly._raw(_shift_var(g.c, R.neg(r1), R), R)      # g(y - r1)
    ac = _add(a.c, [r1], R)
    if not _gcd_is_one(ac, f.c, R):
        return FAIL
    fc = _shift_var(f.c, r2, R)                           # f(x + r2)
    ac = _shift_var(ac, r2, R)
    fs = Poly._raw(fc, R)
    if not fc or R.is_zero(fc[0]):
        return FAIL
    m = ceil_root_pow(n, 1)
    d = -(-n // m)
    gamma = Poly._raw(_trim(tape.read(n), R), R)
    res = change_of_basis(fs, gamma, Poly._raw(ac, R), m, d)
    if res is FAIL:
        return FAIL
    Rgamma, mu, alpha = res
    if not mu.c or R.is_zero(mu.c[0]):
        return FAIL
    rel = matrix_of_relations(mu, alpha, m, d, tape)
    if rel is FAIL:
        return FAIL
    beta = compose_with_relation_matrix(mu, alpha, gs, rel)
    b = compose_with_relation_matrix(fs, gamma, beta, Rgamma)
    return Poly._raw(_shift_var(b.c, R.neg(r2), R), R)


def annihilating_polynomial(f, a, tape):
    """A nonzero mu of degree at most 4n with mu(a) = 0 mod f, or Fail."""
    R = f.ring
    n = int(f.degree)
    if n == 1:
        c = a.c[0] if a.c else R.zero
        return Poly([R.neg(c), R.one], R)
    r1 = tape.next()
    r2 = tape.next()
    ac = _add(a.c, [r1], R)
    if not _gcd_is_one(ac, f.c, R):
        return FAIL
    fc = _shift_var(f.c, r2, R)
    ac = _shift_var(ac, r2, R)
    if not fc or R.is_zero(fc[0]):
        return FAIL
    m = ceil_root_pow(n, 1)
    d = -(-n // m)
    gamma = Poly._raw(_trim(tape.read(n), R), R)
    res = change_of_basis(Poly._raw(fc, R), gamma, Poly._raw(ac, R), m, d)
    if res is FAIL:
        return FAIL
    _, mu_g, alpha = res
    if not mu_g.c or R.is_zero(mu_g.c[0]):
        return FAIL
    rel = matrix_of_relations(mu_g, alpha, m, d, tape)
    if rel is FAIL:
        return FAIL
    mu = pm_determinant(rel.R)
    if mu.is_zero():
        return FAIL
    # mu annihilates a + r1, so mu(y + r1) annihilates a
    out = Poly._raw(_shift_var(mu.c, r1, R), R)
    lead = out.c[-1]
    if not R.is_zero(R.sub(lead, R.one)):
        out = Poly._raw(_scale(out.c, R.inv(lead), R), R)
    return out


CERTIFIED = "Certified"
MONTE_CARLO = "MonteCarloOnly"


class MinPolyResult:
    """Minimal polynomial candidate and how much it is to be trusted."""

    __slots__ = ("mu", "status")

    def __init__(self, mu, status):
        self.mu = mu
        self.status = status

    @property
    def certified(self):
        return self.status == CERTIFIED

    def __repr__(self):
        return "MinPolyResult(deg=%s, %s)" % (self.mu.degree, self.status)


def minimal_polynomial(f, a, tape):
    """The minimal polynomial of a modulo f, or Fail.

    The result carries a status: Certified when it comes from the Hermite
    form of a certified basis of relations (or from a verified small-degree
    generator), MonteCarloOnly otherwise.
    """
    from .relations import candidate_basis
    from .blockseq import power_projection, seq_minpoly
    R = f.ring
    n = int(f.degree)
    if int(a.degree) <= 0:
        c = a.c[0] if a.c else R.zero
        return MinPolyResult(Poly([R.neg(c), R.one], R), CERTIFIED)
    # small-degree fast path: the Berlekamp-Massey generator of the projected
    # power sequence has degree at most deg(mu_a); if it also annihilates a
    # then mu_a divides it, so the two coincide and the result is exact
    dcap = ceil_root_pow(n, 2)
    ell = ProjectionVector(tape.read(n), R)
    seq = power_projection(f, a, 2 * dcap, ell)
    mu_small = seq_minpoly(seq, R)
    if 1 <= len(mu_small) - 1 <= dcap:
        cand_mu = Poly._raw(list(mu_small), R)
        if brent_kung_compose(f, a, cand_mu).is_zero():
            return MinPolyResult(cand_mu, CERTIFIED)
    # relation-matrix path
    r1 = tape.next()
    r2 = tape.next()
    ac = _add(a.c, [r1], R)
    if not _gcd_is_one(ac, f.c, R):
        return FAIL
    fc = _shift_var(f.c, r2, R)
    ac = _shift_var(ac, r2, R)
    if not fc or R.is_zero(fc[0]):
        return FAIL
    m = ceil_root_pow(n, 1)
    d = -(-n // m)
    try:
        cand = candidate_basis(Poly._raw(fc, R), Poly._raw(ac, R), m, d)
    except NotCoprime:
        return FAIL
    T, ok = hermite_form(cand.R)
    if not ok:
        return FAIL
    mu_shifted = T.e[0][0]
    mu = Poly._raw(_shift_var(mu_shifted.c, r1, R), R)
    if not brent_kung_compose(f, a, mu).is_zero():
        return FAIL
    status = CERTIFIED if cand.certified else MONTE_CARLO
    return MinPolyResult(mu, status)


def _frobenius_coeffs(c, R):
    p = R.char
    return [R.pow(x, p) for x in c]


def _series_compose_small_char(a, g, n, R):
    """g(a) rem x^n in characteristic p, by splitting g along powers of y^p
    and recursing on the coefficientwise p-th power of a."""
    p = R.char
    ac = _trim(a[:n], R)
    gc = list(g)
    if n <= 0:
        return []
    if not gc:
        return []
    if n == 1 or len(gc) == 1:
        a0 = ac[0] if ac else R.zero
        acc = R.zero
        for coef in reversed(gc):
            acc = R.add(R.mul(acc, a0), coef)
        return _trim([acc], R)
    abar = _frobenius_coeffs(ac, R)
    nsub = -(-n // p)
    out = []
    apow = [R.one]
    for i in range(p):
        gi = gc[i::p]
        if gi:
            hi = _series_compose_small_char(abar, gi, nsub, R)
            # h_i(x^p) picks up the p-th power structure of a^p
            hxp = [R.zero] * (len(hi) * p)
            for k, v in enumerate(hi):
                hxp[k * p] = v
            out = _add(out, _trim(_mul(hxp, apow, R)[:n], R), R)
        if i != p - 1:
            apow = _trim(_mul(apow, ac, R)[:n], R)
    return _trim(out[:n], R)


def _as_elem(c, R):
    return R.lift(c) if isinstance(c, int) else c


def inseparable_modulus(c, e, ell, R):
    """(x^(p^e) - c)^ell as a Poly."""
    p = R.char
    base = [R.neg(_as_elem(c, R))] + [R.zero] * (p ** e - 1) + [R.one]
    return Poly._raw(_pow_list(base, ell, R), R)


def compose_small_char(c, e, ell, a, g):
    """g(a) rem (x^(p^e) - c)^ell, deterministic, for small characteristic."""
    R = a.ring
    p = R.char
    cval = _as_elem(c, R)
    n = ell * p ** e
    if e == 0:
        # work at the origin: shift by c, compose as series, shift back
        at = _shift_var(_rem(a.c, inseparable_modulus(cval, 0, ell, R).c, R),
                        cval, R)
        bt = _series_compose_small_char(at, g.c, ell, R)
        return Poly._raw(_shift_var(bt, R.neg(cval), R), R)
    f = inseparable_modulus(cval, e, ell, R)
    fsub = inseparable_modulus(cval, e - 1, ell, R)
    ac = _rem(a.c, f.c, R)
    abar = Poly._raw(_rem(_frobenius_coeffs(ac, R), fsub.c, R), R)
    parts = []
    for i in range(p):
        gi = Poly._raw(_trim(g.c[i::p], R), R)
        parts.append(compose_small_char(cval, e - 1, ell, abar, gi))
    out = []
    apow = [R.one]
    for i in range(p):
        hi = parts[i].c
        hxp = [R.zero] * (len(hi) * p)
        for k, v in enumerate(hi):
            hxp[k * p] = v
        out = _add(out, _rem(_mul(hxp, apow, R), f.c, R), R)
        if i != p - 1:
            apow = _rem(_mul(apow, ac, R), f.c, R)
    return Poly._raw(_rem(out, f.c, R), R)


def compose_modulo_inseparable(c, e, ell, a, g, tape):
    """g(a) rem (x^(p^e) - c)^ell, or Fail; never a wrong value."""
    R = a.ring
    p = R.char
    cval = _as_elem(c, R)
    n = ell * p ** e
    if 0 < p <= ceil_root_pow(n, 1):
        return compose_small_char(cval, e, ell, a, g)
    f = inseparable_modulus(cval, e, ell, R)
    m = ceil_root_pow(n, 1)
    vals = tape.read(n + m)
    proj = ProjectionVector(vals[:n], R)
    dcap = ceil_root_pow(n, 2)
    if 1 <= dcap <= n:
        b = compose_small_minpoly(f, a, g, dcap, proj)
        if not isinstance(b, Fail):
            return b
    r1 = R.zero if _gcd_is_one(a.c, f.c, R) else R.one
    r2 = R.zero if not R.is_zero(cval) else R.one
    sub = tape.__class__(tape.field, list(vals))
    return base_case_compose(f, a, g, sub, r1=r1, r2=r2)


def series_reversion(a, n):
    """g with g(0) = 0 and a(g) = g(a) = x mod x^n, by Newton iteration."""
    R = a.ring
    if getattr(R, "char", 0) <= n:
        raise CharacteristicTooSmall("need characteristic > %d" % n)
    ac = _trim(a.c[:n], R)
    if ac and not R.is_zero(ac[0]):
        raise BadSeriesUnit("a(0) != 0")
    if len(ac) < 2 or R.is_zero(ac[1]):
        raise BadSeriesUnit("a'(0) = 0")
    if n <= 1:
        return Poly.zero(R)
    inv1 = R.inv(ac[1])
    g = [R.zero, inv1]
    prec = 2
    da = Poly._raw(ac, R).derivative().c
    while prec < n:
        prec = min(2 * prec, n)
        xk = Poly._raw([R.zero] * prec + [R.one], R)
        gp = Poly._raw(_trim(g[:prec], R), R)
        comp = brent_kung_compose(xk, gp, Poly._raw(ac, R))       # a(g)
        err = _trim(_add(comp.c, [R.zero, R.neg(R.one)], R), R)   # a(g) - x
        dag = brent_kung_compose(xk, gp, Poly._raw(da, R))        # a'(g)
        inv = _series_inv(dag.c, prec, R)
        step = _trim(_mul(err, inv, R)[:prec], R)
        g = _trim(_add(g, [R.neg(v) for v in step], R)[:prec], R)
    return Poly._raw(_trim(g[:n], R), R)
