"""Dense univariate polynomial arithmetic over a prime field or quotient ring.

Polynomials are little-endian coefficient sequences, always normalized (no
trailing zeros; the zero polynomial is the empty sequence and has degree
``NEG_INF``).  The :class:`Poly` wrapper carries its coefficient ring; the
module-level functions are the public operations.  Everything is generic over
the small ring protocol of :mod:`modcomp.field`, so the same code runs over
F_p and over F_p[theta]/<h>, where inversions may raise ``SplitError``.
"""

from .field import PrimeField

__all__ = [
    "Poly", "NEG_INF", "poly_mul", "poly_divrem", "poly_xgcd", "series_inv",
    "rev", "shift_var", "powmod", "horner_mod_compose",
    "NonUnitConstant", "DegreeTooLarge",
]

NEG_INF = float("-inf")

KARATSUBA_CROSSOVER = 32


class NonUnitConstant(ValueError):
    """Series inversion of a polynomial with constant term 0."""


class DegreeTooLarge(ValueError):
    """rev(u, m) with deg u > m."""


# ---------------------------------------------------------------------------
# raw-list kernels; coefficients are ring elements, lists are normalized

def _trim(c, R):
    zero = R.is_zero
    while c and zero(c[-1]):
        c.pop()
    return c


def _add(u, v, R):
    if len(u) < len(v):
        u, v = v, u
    out = list(u)
    add = R.add
    for i, c in enumerate(v):
        out[i] = add(out[i], c)
    return _trim(out, R)


def _sub(u, v, R):
    out = list(u) + [R.zero] * (len(v) - len(u))
    sub = R.sub
    for i, c in enumerate(v):
        out[i] = sub(out[i], c)
    return _trim(out, R)


def _neg(u, R):
    neg = R.neg
    return [neg(c) for c in u]


def _scale(u, c, R):
    if R.is_zero(c):
        return []
    mul = R.mul
    return _trim([mul(x, c) for x in u], R)


def _mul_fp_kronecker(u, v, p):
    """Multiply over F_p by packing into one big-integer product."""
    bits = (min(len(u), len(v)) * (p - 1) * (p - 1)).bit_length() + 1
    nb = (bits + 7) // 8
    ub = b"".join(c.to_bytes(nb, "little") for c in u)
    vb = b"".join(c.to_bytes(nb, "little") for c in v)
    w = int.from_bytes(ub, "little") * int.from_bytes(vb, "little")
    total = len(u) + len(v) - 1
    wb = w.to_bytes(nb * total + nb, "little")
    out = [int.from_bytes(wb[i * nb:(i + 1) * nb], "little") % p
           for i in range(total)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _mul_schoolbook(u, v, R):
    add, mul, zero = R.add, R.mul, R.is_zero
    out = [R.zero] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if zero(ui):
            continue
        for j, vj in enumerate(v):
            out[i + j] = add(out[i + j], mul(ui, vj))
    return _trim(out, R)


def _mul(u, v, R):
    if not u or not v:
        return []
    short = min(len(u), len(v))
    if short < KARATSUBA_CROSSOVER:
        return _mul_schoolbook(u, v, R)
    if R.is_prime_field:
        return _mul_fp_kronecker(u, v, R.p)
    # Karatsuba over quotient-ring coefficients
    k = (max(len(u), len(v)) + 1) // 2
    u0, u1 = u[:k], u[k:]
    v0, v1 = v[:k], v[k:]
    z0 = _mul(u0, v0, R)
    z2 = _mul(u1, v1, R)
    zm = _mul(_add(u0, u1, R), _add(v0, v1, R), R)
    zm = _sub(_sub(zm, z0, R), z2, R)
    out = [R.zero] * (len(u) + len(v) - 1)
    for i, c in enumerate(z0):
        out[i] = R.add(out[i], c)
    for i, c in enumerate(zm):
        out[k + i] = R.add(out[k + i], c)
    for i, c in enumerate(z2):
        out[2 * k + i] = R.add(out[2 * k + i], c)
    return _trim(out, R)


def _mul_trunc(u, v, k, R):
    """u*v rem x^k (inputs need not be pre-truncated)."""
    return _trim(_mul(u[:k], v[:k], R)[:k], R)


def _divrem(u, f, R):
    if not f:
        raise ZeroDivisionError("polynomial division by zero")
    df = len(f) - 1
    r = list(u)
    if len(r) - 1 < df:
        return [], r
    lead = f[-1]
    monic = R.is_zero(R.sub(lead, R.one))
    inv_lead = R.one if monic else R.inv(lead)
    q = [R.zero] * (len(r) - df)
    sub, mul, zero = R.sub, R.mul, R.is_zero
    for k in range(len(r) - df - 1, -1, -1):
        c = r[k + df]
        if zero(c):
            continue
        if not monic:
            c = mul(c, inv_lead)
        q[k] = c
        for i in range(df + 1):
            r[k + i] = sub(r[k + i], mul(c, f[i]))
    del r[df:]
    return _trim(q, R), _trim(r, R)


def _rem(u, f, R):
    return _divrem(u, f, R)[1]


def _monic(u, R):
    if not u:
        return []
    if R.is_zero(R.sub(u[-1], R.one)):
        return list(u)
    return _scale(u, R.inv(u[-1]), R)


def _xgcd(u, v, R):
    r0, r1 = list(u), list(v)
    s0, s1 = [R.one], []
    t0, t1 = [], [R.one]
    while r1:
        q, r = _divrem(r0, r1, R)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, R), R)
        t0, t1 = t1, _sub(t0, _mul(q, t1, R), R)
    if not r0:
        return [], [], []
    c = R.inv(r0[-1])
    return _scale(r0, c, R), _scale(s0, c, R), _scale(t0, c, R)


def _gcd(u, v, R):
    r0, r1 = list(u), list(v)
    while r1:
        r0, r1 = r1, _rem(r0, r1, R)
    return _monic(r0, R)


def _series_inv(u, k, R):
    if not u or R.is_zero(u[0]):
        raise NonUnitConstant("constant term is not a unit")
    w = [R.inv(u[0])]
    prec = 1
    two = R.add(R.one, R.one)
    while prec < k:
        prec = min(2 * prec, k)
        uw = _mul_trunc(u, w, prec, R)
        corr = _neg(uw, R)
        if corr:
            corr[0] = R.add(corr[0], two)
        else:
            corr = [two]
        w = _mul_trunc(w, corr, prec, R)
    return _trim(w[:k], R)


def _rev(u, m, R):
    if len(u) - 1 > m:
        raise DegreeTooLarge("rev window %d below degree %d" % (m, len(u) - 1))
    out = [R.zero] * (m + 1 - len(u)) + list(reversed(u))
    return _trim(out, R)


def _shift_var(u, c, R):
    if R.is_zero(c) or not u:
        return list(u)
    n = len(u)
    if n <= 64:
        out = []
        for coeff in reversed(u):
            out = _mul(out, [c, R.one], R)
            if not R.is_zero(coeff):
                out = _add(out, [coeff], R)
        return out
    k = n // 2
    lo = _shift_var(u[:k], c, R)
    hi = _shift_var(u[k:], c, R)
    xk = _pow_list([c, R.one], k, R)
    return _add(lo, _mul(xk, hi, R), R)


def _pow_list(b, k, R):
    out = [R.one]
    while k:
        if k & 1:
            out = _mul(out, b, R)
        b = _mul(b, b, R)
        k >>= 1
    return out


def _powmod(a, k, f, R):
    out = [R.one]
    b = _rem(a, f, R)
    while k:
        if k & 1:
            out = _rem(_mul(out, b, R), f, R)
        b = _rem(_mul(b, b, R), f, R)
        k >>= 1
    return out


def _horner_mod(f, a, g, R):
    a = _rem(a, f, R)
    out = []
    for coeff in reversed(g):
        out = _rem(_mul(out, a, R), f, R)
        if not R.is_zero(coeff):
            out = _add(out, [coeff], R)
    return out


def _eval(u, x0, R):
    acc = R.zero
    for coeff in reversed(u):
        acc = R.add(R.mul(acc, x0), coeff)
    return acc


def _deriv(u, R):
    if R.is_prime_field:
        p = R.p
        out = [u[i] * i % p for i in range(1, len(u))]
    else:
        out = [R.mul(R.lift(i), u[i]) for i in range(1, len(u))]
    return _trim(out, R)


# ---------------------------------------------------------------------------
# public wrapper

class Poly:
    """Dense univariate polynomial over a fixed coefficient ring."""

    __slots__ = ("c", "ring")

    def __init__(self, coeffs, ring, _normalized=False):
        if _normalized:
            self.c = list(coeffs)
        else:
            if ring.is_prime_field:
                p = ring.p
                self.c = _trim([x % p for x in coeffs], ring)
            else:
                self.c = _trim(list(coeffs), ring)
        self.ring = ring

    @classmethod
    def _raw(cls, coeffs, ring):
        self = object.__new__(cls)
        self.c = coeffs
        self.ring = ring
        return self

    @classmethod
    def zero(cls, ring):
        return cls._raw([], ring)

    @classmethod
    def one(cls, ring):
        return cls._raw([ring.one], ring)

    @classmethod
    def x(cls, ring):
        return cls._raw([ring.zero, ring.one], ring)

    @classmethod
    def constant(cls, c, ring):
        return cls._raw([] if ring.is_zero(c) else [c], ring)

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else NEG_INF

    def is_zero(self):
        return not self.c

    def is_one(self):
        return len(self.c) == 1 and self.ring.is_zero(
            self.ring.sub(self.c[0], self.ring.one))

    def __getitem__(self, i):
        return self.c[i] if i < len(self.c) else self.ring.zero

    def __iter__(self):
        return iter(self.c)

    def __len__(self):
        return len(self.c)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.c == other.c)

    def __hash__(self):
        return hash((tuple(self.c),))

    def __add__(self, other):
        return Poly._raw(_add(self.c, other.c, self.ring), self.ring)

    def __sub__(self, other):
        return Poly._raw(_sub(self.c, other.c, self.ring), self.ring)

    def __neg__(self):
        return Poly._raw(_neg(self.c, self.ring), self.ring)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly._raw(_scale(self.c, other, self.ring), self.ring)
        return Poly._raw(_mul(self.c, other.c, self.ring), self.ring)

    __rmul__ = __mul__

    def divrem(self, other):
        q, r = _divrem(self.c, other.c, self.ring)
        return Poly._raw(q, self.ring), Poly._raw(r, self.ring)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return Poly._raw(_rem(self.c, other.c, self.ring), self.ring)

    def monic(self):
        return Poly._raw(_monic(self.c, self.ring), self.ring)

    def truncate(self, k):
        return Poly._raw(_trim(self.c[:k], self.ring), self.ring)

    def mul_xk(self, k):
        if not self.c:
            return self
        return Poly._raw([self.ring.zero] * k + self.c, self.ring)

    def div_xk(self, k):
        return Poly._raw(self.c[k:], self.ring)

    def slice(self, lo, width):
        """Coefficients lo .. lo+width-1, re-based at degree 0."""
        return Poly._raw(_trim(self.c[lo:lo + width], self.ring), self.ring)

    def eval(self, x0):
        return _eval(self.c, x0, self.ring)

    def derivative(self):
        return Poly._raw(_deriv(self.c, self.ring), self.ring)

    def gcd(self, other):
        return Poly._raw(_gcd(self.c, other.c, self.ring), self.ring)

    def __repr__(self):
        return "Poly(%r)" % (self.c,)


def poly_mul(u, v):
    return u * v


def poly_divrem(u, f):
    return u.divrem(f)


def poly_xgcd(u, v):
    if u.is_zero() and v.is_zero():
        raise ValueError("xgcd(0, 0)")
    g, s, t = _xgcd(u.c, v.c, u.ring)
    return Poly._raw(g, u.ring), Poly._raw(s, u.ring), Poly._raw(t, u.ring)


def series_inv(u, k):
    return Poly._raw(_series_inv(u.c, k, u.ring), u.ring)


def rev(u, m):
    return Poly._raw(_rev(u.c, m, u.ring), u.ring)


def shift_var(u, c):
    return Poly._raw(_shift_var(u.c, c, u.ring), u.ring)


def powmod(a, k, f):
    return Poly._raw(_powmod(a.c, k, f.c, a.ring), a.ring)


def horner_mod_compose(f, a, g):
    """g(a) rem f by Horner with reduction at each step: the reference answer
    every faster composition routine is tested against."""
    return Poly._raw(_horner_mod(f.c, a.c, g.c, f.ring), f.ring)
