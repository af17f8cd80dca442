"""Prime fields F_p and quotient rings F_p[theta]/<h> that split on zero divisors.

Elements of a :class:`PrimeField` are plain Python ints in [0, p); elements of
a :class:`QuotientRing` are normalized little-endian coefficient tuples over
the base field.  Both classes expose the same small ring protocol (zero, one,
add, sub, mul, neg, inv, is_zero, lift) so that polynomial code can run over
either one.  Inverting a zero divisor of a quotient ring raises
:class:`SplitError` carrying a proper coprime factorization of the modulus;
callers that implement dynamic evaluation catch it and re-run per branch.
"""

__all__ = [
    "PrimeField", "FieldElem", "QuotientRing", "SplitEvent", "SplitError",
    "RandomTape", "ZeroInverse", "ZeroDivisorAll", "NotCoprime",
    "TapeExhausted", "ff_inv", "qr_invert_or_split", "qr_crt", "is_prime",
]


class ZeroInverse(ZeroDivisionError):
    """Inversion of 0 in a field."""


class ZeroDivisorAll(ZeroDivisionError):
    """The inverted element is 0 modulo every factor of the modulus."""


class NotCoprime(ValueError):
    """CRT moduli share a nontrivial common factor."""


class TapeExhausted(RuntimeError):
    """A RandomTape was read past its end."""


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid for all n < 3.3*10^24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p for a word-sized prime p.  Elements are ints in [0, p)."""

    __slots__ = ("p",)

    is_prime_field = True
    zero = 0
    one = 1

    def __init__(self, p):
        if not (2 <= p < 1 << 62):
            raise ValueError("modulus out of range: %r" % (p,))
        if not is_prime(p):
            raise ValueError("modulus %d is not prime" % p)
        self.p = p

    @property
    def char(self):
        return self.p

    def add(self, x, y):
        z = x + y
        p = self.p
        return z - p if z >= p else z

    def sub(self, x, y):
        z = x - y
        return z + self.p if z < 0 else z

    def mul(self, x, y):
        return x * y % self.p

    def neg(self, x):
        return self.p - x if x else 0

    def inv(self, x):
        if not x:
            raise ZeroInverse("inverse of 0 in F_%d" % self.p)
        return pow(x, -1, self.p)

    def div(self, x, y):
        return x * self.inv(y) % self.p

    def pow(self, x, k):
        return pow(x, k, self.p)

    @staticmethod
    def is_zero(x):
        return x == 0

    def lift(self, c):
        return c % self.p

    def elem(self, value):
        return FieldElem(value % self.p, self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


class FieldElem:
    """A residue paired with its field; convenience wrapper over the raw int."""

    __slots__ = ("value", "field")

    def __init__(self, value, field):
        if not 0 <= value < field.p:
            raise ValueError("residue %r out of range for %r" % (value, field))
        self.value = value
        self.field = field

    def __add__(self, other):
        return FieldElem(self.field.add(self.value, _val(other)), self.field)

    def __sub__(self, other):
        return FieldElem(self.field.sub(self.value, _val(other)), self.field)

    def __mul__(self, other):
        return FieldElem(self.field.mul(self.value, _val(other)), self.field)

    def __neg__(self):
        return FieldElem(self.field.neg(self.value), self.field)

    def inverse(self):
        return FieldElem(self.field.inv(self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.value == other.value and self.field == other.field
        return self.value == other

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __repr__(self):
        return "FieldElem(%d, p=%d)" % (self.value, self.field.p)


def _val(x):
    return x.value if isinstance(x, FieldElem) else x


def ff_inv(x):
    """Inverse of a nonzero FieldElem."""
    return x.inverse()


# Raw little-endian polynomial helpers over F_p, used for quotient-ring
# arithmetic and CRT without pulling in the full polynomial layer.

def _ptrim(u):
    while u and u[-1] == 0:
        u.pop()
    return u


def _pmul(u, v, p):
    if not u or not v:
        return []
    out = [0] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] += ui * vj
    return _ptrim([c % p for c in out])


def _pdivrem(u, f, p):
    r = [c % p for c in u]
    _ptrim(r)
    df = len(f) - 1
    lead_inv = pow(f[-1], -1, p)
    q = [0] * max(0, len(r) - df)
    while len(r) - 1 >= df:
        c = r[-1] * lead_inv % p
        k = len(r) - 1 - df
        q[k] = c
        for i in range(df + 1):
            r[k + i] = (r[k + i] - c * f[i]) % p
        _ptrim(r)
    return q, r


def _pxgcd(u, v, p):
    """Monic g with g = s*u + t*v."""
    r0, r1 = list(u), list(v)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivrem(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    if not r0:
        return [], [], []
    c = pow(r0[-1], -1, p)
    scale = lambda w: [x * c % p for x in w]
    return scale(r0), scale(s0), scale(t0)


def _psub(u, v, p):
    out = [0] * max(len(u), len(v))
    for i, c in enumerate(u):
        out[i] = c
    for i, c in enumerate(v):
        out[i] = (out[i] - c) % p
    return _ptrim(out)


class SplitEvent:
    """A proper coprime factorization h = h1 * h2 discovered during inversion."""

    __slots__ = ("h1", "h2")

    def __init__(self, h1, h2):
        self.h1 = tuple(h1)
        self.h2 = tuple(h2)

    def __repr__(self):
        return "SplitEvent(h1=%r, h2=%r)" % (list(self.h1), list(self.h2))


class SplitError(ArithmeticError):
    """Raised when quotient-ring code hits a zero divisor; carries the split."""

    def __init__(self, event):
        super().__init__("zero divisor: modulus splits")
        self.event = event


class QuotientRing:
    """F_p[theta]/<h> with h monic and separable (a product of fields).

    Elements are normalized little-endian tuples of ints, degree < deg h.
    """

    __slots__ = ("base", "h")

    is_prime_field = False

    def __init__(self, base, h):
        h = tuple(c % base.p for c in h)
        while h and h[-1] == 0:
            h = h[:-1]
        if len(h) < 2:
            raise ValueError("modulus must have degree >= 1")
        if h[-1] != 1:
            raise ValueError("modulus must be monic")
        dh = [c * i % base.p for i, c in enumerate(h)][1:]
        _ptrim(dh)
        if not dh:
            # h' = 0 with deg h >= 1 means h is a polynomial in theta^p.
            raise ValueError("modulus is not separable")
        g, _, _ = _pxgcd(list(h), dh, base.p)
        if len(g) != 1:
            raise ValueError("modulus is not separable")
        self.base = base
        self.h = h

    @property
    def degree(self):
        return len(self.h) - 1

    @property
    def p(self):
        return self.base.p

    @property
    def char(self):
        return self.base.p

    zero = ()
    one = (1,)

    def lift(self, c):
        c %= self.p
        return (c,) if c else ()

    def reduce(self, coeffs):
        _, r = _pdivrem(list(coeffs), list(self.h), self.p)
        return tuple(r)

    def add(self, x, y):
        p = self.p
        if len(x) < len(y):
            x, y = y, x
        out = list(x)
        for i, c in enumerate(y):
            out[i] = (out[i] + c) % p
        return tuple(_ptrim(out))

    def sub(self, x, y):
        return tuple(_psub(list(x), list(y), self.p))

    def neg(self, x):
        p = self.p
        return tuple((p - c) % p for c in x)

    def mul(self, x, y):
        if not x or not y:
            return ()
        prod = _pmul(list(x), list(y), self.p)
        if len(prod) >= len(self.h):
            _, prod = _pdivrem(prod, list(self.h), self.p)
        return tuple(prod)

    def inv(self, x):
        g, s, _ = _pxgcd(list(x), list(self.h), self.p)
        if len(g) == 1:
            _, r = _pdivrem(s, list(self.h), self.p)
            return tuple(r)
        if len(g) == len(self.h):
            raise ZeroDivisorAll("element is 0 in every residue field")
        h2, rem = _pdivrem(list(self.h), g, self.p)
        assert not rem
        raise SplitError(SplitEvent(g, h2))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, k):
        out = self.one
        b = x
        while k:
            if k & 1:
                out = self.mul(out, b)
            b = self.mul(b, b)
            k >>= 1
        return out

    @staticmethod
    def is_zero(x):
        return not x

    def __eq__(self, other):
        return (isinstance(other, QuotientRing) and other.base == self.base
                and other.h == self.h)

    def __hash__(self):
        return hash(("QuotientRing", self.base.p, self.h))

    def __repr__(self):
        return "QuotientRing(F_%d, h=%r)" % (self.p, list(self.h))


def qr_invert_or_split(q, ring):
    """Inverse of q mod h, or the SplitEvent exposing gcd(q, h).

    Returns either a coefficient tuple u with q*u = 1 mod h, or a
    :class:`SplitEvent`.  Raises :class:`ZeroDivisorAll` when q = 0 mod h.
    """
    q = ring.reduce(q)
    try:
        return ring.inv(q)
    except SplitError as exc:
        return exc.event


def qr_crt(parts, field):
    """Chinese remainders: v with v = v_i mod h_i for pairwise coprime h_i."""
    parts = [(list(h), list(v)) for h, v in parts]
    p = field.p
    for i, (hi, _) in enumerate(parts):
        for hj, _ in parts[i + 1:]:
            g, _, _ = _pxgcd(hi, hj, p)
            if len(g) != 1:
                raise NotCoprime("moduli share a factor: %r" % (g,))
    h_all, v = parts[0]
    for hi, vi in parts[1:]:
        # v + h_all * w = vi mod hi  =>  w = (vi - v) / h_all mod hi
        _, s, _ = _pxgcd(h_all, hi, p)
        diff = _psub(vi, v, p)
        _, w = _pdivrem(_pmul(diff, s, p), hi, p)
        v = _psub(v, [(p - c) % p for c in _pmul(h_all, w, p)], p)
        h_all = _pmul(h_all, hi, p)
    _, v = _pdivrem(v, h_all, p)
    return v


class RandomTape:
    """A finite, read-once sequence of F_p values.

    Randomness never originates inside the library; callers fill a tape and
    algorithms consume it left to right.  Reading past the end raises
    :class:`TapeExhausted` rather than silently recycling entries.
    """

    __slots__ = ("field", "entries", "cursor")

    def __init__(self, field, values):
        self.field = field
        p = field.p
        self.entries = [v % p for v in values]
        self.cursor = 0

    def __len__(self):
        return len(self.entries)

    @property
    def remaining(self):
        return len(self.entries) - self.cursor

    def next(self):
        if self.cursor >= len(self.entries):
            raise TapeExhausted("random tape exhausted")
        v = self.entries[self.cursor]
        self.cursor += 1
        return v

    def read(self, k):
        if self.cursor + k > len(self.entries):
            raise TapeExhausted("random tape exhausted")
        out = self.entries[self.cursor:self.cursor + k]
        self.cursor += k
        return out

    def take_slice(self, k):
        """Consume k entries and hand them back as a fresh tape."""
        return RandomTape(self.field, self.read(k))

    def fork(self):
        """A tape over the same remaining entries, with an independent cursor.

        Dynamic-evaluation branches replay one tape segment; each branch gets
        a fork so reads in one branch do not advance the others.
        """
        t = RandomTape(self.field, self.entries)
        t.cursor = self.cursor
        return t
