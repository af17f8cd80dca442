import pytest

from modcomp.field import (
    PrimeField, FieldElem, QuotientRing, SplitEvent, RandomTape,
    ZeroInverse, ZeroDivisorAll, NotCoprime, TapeExhausted,
    ff_inv, qr_invert_or_split, qr_crt, is_prime,
)

import oracles

F5 = PrimeField(5)
F7 = PrimeField(7)


def test_primality_guard():
    for p in (2, 3, 5, 65537, 2**31 - 1):
        PrimeField(p)
    for bad in (0, 1, 4, 91, 2**62):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)


def test_ff_inv_pinned():
    assert ff_inv(F5.elem(1)).value == 1
    assert ff_inv(F5.elem(2)).value == 3
    assert ff_inv(F7.elem(3)).value == 5
    with pytest.raises(ZeroInverse):
        ff_inv(F5.elem(0))


def test_field_axioms_random():
    import random
    rng = random.Random(1)
    for p in (5, 65537, 2**31 - 1):
        F = PrimeField(p)
        for _ in range(50):
            a, b, c = (rng.randrange(p) for _ in range(3))
            assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            if a:
                assert F.mul(a, F.inv(a)) == 1


def test_fieldelem_ops():
    a = F5.elem(3)
    b = F5.elem(4)
    assert (a + b).value == 2
    assert (a - b).value == 4
    assert (a * b).value == 2
    assert (-a).value == 2
    assert a == 3 and a != b


def test_quotient_ring_rejects_inseparable():
    with pytest.raises(ValueError):
        QuotientRing(F5, [0, 0, 0, 0, 0, 1])    # theta^5 = (theta)^5 over F5
    with pytest.raises(ValueError):
        QuotientRing(PrimeField(2), [1, 0, 1])  # (theta+1)^2 over F2


def test_qr_invert_or_split_pinned():
    # h = theta^2 + 4 theta = theta (theta - 1) over F5: q = theta splits
    ring = QuotientRing(F5, [0, 4, 1])
    out = qr_invert_or_split((0, 1), ring)
    assert isinstance(out, SplitEvent)
    assert list(out.h1) == [0, 1]
    assert list(out.h2) == [4, 1]
    # irreducible h: q = theta has inverse 2*theta (theta*2theta = 2theta^2 = -4 = 1)
    ring2 = QuotientRing(F5, [2, 0, 1])
    inv = qr_invert_or_split((0, 1), ring2)
    assert ring2.mul((0, 1), inv) == (1,)
    with pytest.raises(ZeroDivisorAll):
        qr_invert_or_split((), ring2)


def test_qr_split_factors_multiply_back():
    import random
    rng = random.Random(7)
    p = 5
    for _ in range(40):
        h = oracles.rand_separable(rng, rng.randrange(2, 6), p)
        try:
            ring = QuotientRing(PrimeField(p), h)
        except ValueError:
            continue
        q = tuple(oracles.rand_poly_upto(rng, len(h) - 2, p))
        if not q:
            continue
        out = qr_invert_or_split(q, ring)
        if isinstance(out, SplitEvent):
            prod = oracles.omul(list(out.h1), list(out.h2), p)
            assert prod == list(h)
            assert oracles.ogcd(list(out.h1), list(out.h2), p) == [1]
        else:
            assert ring.mul(q, out) == (1,)


def test_qr_arithmetic_matches_oracle():
    import random
    rng = random.Random(3)
    ring = QuotientRing(F7, [3, 1, 0, 1])   # theta^3 + theta + 3
    p = 7
    for _ in range(60):
        x = tuple(oracles.rand_poly_upto(rng, 2, p))
        y = tuple(oracles.rand_poly_upto(rng, 2, p))
        assert list(ring.mul(x, y)) == oracles.orem(
            oracles.omul(list(x), list(y), p), [3, 1, 0, 1], p)
        assert list(ring.add(x, y)) == oracles.oadd(list(x), list(y), p)
        assert list(ring.sub(x, y)) == oracles.osub(list(x), list(y), p)


def test_qr_crt_pinned():
    # residues 0 at theta=0 and 1 at theta=1 interpolate to theta
    v = qr_crt([(((0, 1)), (0,)), (((4, 1)), (1,))], F5)
    assert v == [0, 1]
    assert qr_crt([((2, 0, 1), (0, 1))], F5) == [0, 1]
    v = qr_crt([((2, 0, 1), (0, 1)), ((1, 1), (3,))], F5)
    assert len(v) <= 3
    assert oracles.orem(v, [2, 0, 1], 5) == [0, 1]
    assert oracles.orem(v, [1, 1], 5) == [3]


def test_qr_crt_random_roundtrip():
    import random
    rng = random.Random(11)
    p = 13
    F = PrimeField(p)
    for _ in range(40):
        pts = rng.sample(range(p), 3)
        mods = [[(-t) % p, 1] for t in pts]
        vals = [oracles.trim([rng.randrange(p)]) for _ in pts]
        v = qr_crt(list(zip(mods, vals)), F)
        for h, val in zip(mods, vals):
            assert oracles.orem(v, h, p) == val


def test_qr_crt_not_coprime():
    with pytest.raises(NotCoprime):
        qr_crt([((0, 1), ()), ((0, 0, 1), (1,))], F5)


def test_random_tape_semantics():
    t = RandomTape(F5, [1, 2, 3, 4, 9])
    assert t.entries[-1] == 4          # reduced mod p
    assert t.next() == 1
    assert t.read(2) == [2, 3]
    fork = t.fork()
    assert fork.read(2) == [4, 4]
    assert t.read(2) == [4, 4]         # fork did not advance the original
    with pytest.raises(TapeExhausted):
        t.next()
    s = RandomTape(F5, [1, 2, 3]).take_slice(2)
    assert s.read(2) == [1, 2]
    with pytest.raises(TapeExhausted):
        s.next()
