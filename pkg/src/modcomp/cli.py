"""Command-line front end and benchmark harness.

Subcommands: compose, annihilate, minpoly, reverse, bench, selftest.
Polynomials are read as space-separated little-endian coefficient lists, or
in sparse ``c*x^k`` form; an ``@path`` argument loads the text from a file.
All randomness comes from a seedable counter-based generator materialized
into RandomTape slices, so runs are reproducible apart from timings.

Exit codes: 0 success, 2 usage or parse error, 3 internal invariant
violation.
"""

import argparse
import csv
import hashlib
import re
import statistics
import sys
import time

from .field import PrimeField, RandomTape, is_prime
from .upoly import Poly, horner_mod_compose
from .blockseq import FAIL, brent_kung_compose
from .compose import (
    BadSeriesUnit, CharacteristicTooSmall, annihilating_polynomial,
    ceil_root_pow, minimal_polynomial, series_reversion,
)
from .towers import modular_composition

__all__ = ["main", "parse_poly_text", "ParseError", "CounterRng"]

CSV_HEADER = ["algo", "n", "p", "trials", "ns_median", "fail_count",
              "cert_rate"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class ParseError(ValueError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coeff>\d+)?\s*"
    r"(?:(?P<times>\*)?\s*x\s*(?:\^\s*(?P<exp>\d+))?)?")


def parse_poly_text(s, field):
    """A Poly from dense ("1 0 1") or sparse ("2*x^3 + 1") text."""
    text = s.strip()
    if not text:
        raise ParseError("empty polynomial", 0)
    if "x" not in text and "+" not in text and "-" not in text:
        coeffs = []
        pos = 0
        for tok in text.split():
            pos = s.find(tok, pos)
            if not tok.isdigit():
                raise ParseError("bad coefficient %r" % tok, pos)
            coeffs.append(int(tok))
            pos += len(tok)
        return Poly(coeffs, field)
    # sparse form: signed terms c, x^k, or c*x^k, summed together
    coeffs = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos or (m.group("coeff") is None
                                           and "x" not in m.group(0)):
            raise ParseError("unrecognized term", pos)
        if m.group("sign") is None and not first and m.group(0).strip():
            raise ParseError("missing + or - between terms", pos)
        sign = -1 if m.group("sign") == "-" else 1
        coeff = int(m.group("coeff")) if m.group("coeff") is not None else 1
        if "x" in m.group(0):
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        else:
            exp = 0
        coeffs[exp] = coeffs.get(exp, 0) + sign * coeff
        pos = m.end()
        first = False
        if not s[pos:].strip():
            break
    out = [0] * (max(coeffs) + 1)
    for k, v in coeffs.items():
        out[k] = v
    return Poly(out, field)


def format_poly(poly):
    if not poly.c:
        return "0"
    return " ".join(str(c) for c in poly.c)


class CounterRng:
    """Splittable counter-based generator over SHA-256.

    Each draw hashes (seed, path, counter); ``split`` derives an independent
    stream, so parallel consumers never share state.
    """

    __slots__ = ("_key", "_counter")

    def __init__(self, seed, path=b""):
        self._key = hashlib.sha256(
            b"modcomp:%d:%s" % (seed, path)).digest()
        self._counter = 0

    def split(self, tag):
        child = CounterRng.__new__(CounterRng)
        child._key = hashlib.sha256(self._key + b"/%d" % tag).digest()
        child._counter = 0
        return child

    def below(self, bound):
        # rejection sampling on 128-bit draws keeps the output unbiased
        while True:
            h = hashlib.sha256(
                self._key + self._counter.to_bytes(8, "little")).digest()
            self._counter += 1
            v = int.from_bytes(h[:16], "little")
            if v < (1 << 128) - (1 << 128) % bound:
                return v % bound

    def tape(self, field, k):
        return RandomTape(field, [self.below(field.p) for _ in range(k)])


def _load_arg(text):
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return text


def _field(args):
    if args.prime is None:
        raise ParseError("missing --prime", 0)
    if not is_prime(args.prime):
        raise ParseError("%d is not prime" % args.prime, 0)
    return PrimeField(args.prime)


def _poly_arg(args, name, field):
    raw = getattr(args, name)
    if raw is None:
        raise ParseError("missing --%s" % name, 0)
    return parse_poly_text(_load_arg(raw), field)


def _compose_once(f, a, g, algo, rng, retries):
    """(value, used_fallback); value comes from the requested algorithm."""
    if algo == "horner":
        return horner_mod_compose(f, a, g), False
    if algo == "brentkung":
        return brent_kung_compose(f, a, g), False
    n = int(f.degree)
    need = n + ceil_root_pow(n, 1)
    for attempt in range(max(1, retries)):
        out = modular_composition(f, a, g, rng.split(attempt).tape(
            f.ring, need))
        if out is not FAIL:
            return out, False
    if algo == "relations":
        return FAIL, False
    return horner_mod_compose(f, a, g), True


def cmd_compose(args, out):
    F = _field(args)
    f = _poly_arg(args, "f", F)
    a = _poly_arg(args, "a", F)
    g = _poly_arg(args, "g", F)
    if int(f.degree) < 1:
        raise ParseError("f must have positive degree", 0)
    a = a % f
    rng = CounterRng(args.seed)
    value, _ = _compose_once(f, a, g, args.algo, rng, args.retries)
    if value is FAIL:
        print("Fail", file=out)
        return EXIT_OK
    if args.verify and int(f.degree) <= 512:
        if value.c != horner_mod_compose(f, a, g).c:
            print("internal error: result does not match oracle",
                  file=sys.stderr)
            return EXIT_INTERNAL
    print(format_poly(value), file=out)
    return EXIT_OK


def cmd_annihilate(args, out):
    F = _field(args)
    f = _poly_arg(args, "f", F)
    a = _poly_arg(args, "a", F)
    rng = CounterRng(args.seed)
    n = int(f.degree)
    if n < 1:
        raise ParseError("f must have positive degree", 0)
    need = n + ceil_root_pow(n, 1)
    for attempt in range(max(1, args.retries)):
        mu = annihilating_polynomial(f, a % f, rng.split(attempt).tape(
            F, need))
        if mu is not FAIL:
            print(format_poly(mu), file=out)
            return EXIT_OK
    print("Fail", file=out)
    return EXIT_OK


def cmd_minpoly(args, out):
    F = _field(args)
    f = _poly_arg(args, "f", F)
    a = _poly_arg(args, "a", F)
    rng = CounterRng(args.seed)
    n = int(f.degree)
    if n < 1:
        raise ParseError("f must have positive degree", 0)
    need = 2 * n + 2 + ceil_root_pow(n, 1)
    for attempt in range(max(1, args.retries)):
        res = minimal_polynomial(f, a % f, rng.split(attempt).tape(F, need))
        if res is not FAIL:
            print("%s # %s" % (format_poly(res.mu), res.status), file=out)
            return EXIT_OK
    print("Fail", file=out)
    return EXIT_OK


def cmd_reverse(args, out):
    F = _field(args)
    a = _poly_arg(args, "a", F)
    prec = args.precision if args.precision is not None else len(a.c)
    try:
        g = series_reversion(a, prec)
    except (BadSeriesUnit, CharacteristicTooSmall) as exc:
        raise ParseError(str(exc), 0) from exc
    print(format_poly(g), file=out)
    return EXIT_OK


def _bench_instance(rng, F, n):
    # separable f keeps the relations pipeline on its high-probability path
    while True:
        fc = [rng.below(F.p) for _ in range(n)] + [1]
        f = Poly(fc, F)
        df = f.derivative()
        from .upoly import _gcd
        if len(_gcd(f.c, df.c, F)) == 1:
            break
    a = Poly([rng.below(F.p) for _ in range(n)], F)
    g = Poly([rng.below(F.p) for _ in range(n)], F)
    return f, a, g


def cmd_bench(args, out):
    F = _field(args)
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else [16]
    algos = ([args.algo] if args.algo != "auto"
             else ["horner", "brentkung", "relations"])
    rows = []
    rng = CounterRng(args.seed)
    for algo in algos:
        for n in sizes:
            times = []
            fails = 0
            certs = 0
            for t in range(args.trials):
                sub = rng.split(hash((algo, n, t)) & 0x7FFFFFFF)
                f, a, g = _bench_instance(sub, F, n)
                t0 = time.perf_counter_ns()
                if algo == "horner":
                    horner_mod_compose(f, a, g)
                elif algo == "brentkung":
                    brent_kung_compose(f, a, g)
                else:
                    res = modular_composition(
                        f, a, g, sub.tape(F, n + ceil_root_pow(n, 1)))
                    if res is FAIL:
                        fails += 1
                    else:
                        certs += 1
                times.append(time.perf_counter_ns() - t0)
            cert_rate = certs / args.trials if algo == "relations" else 1.0
            rows.append([algo, n, F.p, args.trials,
                         int(statistics.median(times)), fails,
                         "%.4f" % cert_rate])
    writer = csv.writer(out if args.csv is None
                        else open(args.csv, "w", newline=""))
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    return EXIT_OK


def cmd_selftest(args, out):
    rng = CounterRng(args.seed)
    p = args.prime if args.prime is not None else 65537
    F = PrimeField(p)
    trials = args.trials if args.trials else 25
    bad = 0
    for t in range(trials):
        sub = rng.split(t)
        n = 2 + sub.below(15)
        f, a, g = _bench_instance(sub, F, n)
        res = modular_composition(f, a, g,
                                  sub.tape(F, n + ceil_root_pow(n, 1)))
        if res is FAIL:
            continue
        if res.c != horner_mod_compose(f, a, g).c:
            bad += 1
    print("selftest: %d trials, %d mismatches" % (trials, bad), file=out)
    return EXIT_OK if bad == 0 else EXIT_INTERNAL


def build_parser():
    ap = argparse.ArgumentParser(
        prog="modcomp",
        description="Modular composition over prime fields")
    ap.add_argument("command", choices=["compose", "annihilate", "minpoly",
                                        "reverse", "bench", "selftest"])
    ap.add_argument("--prime", "-p", type=int)
    ap.add_argument("--f")
    ap.add_argument("--a")
    ap.add_argument("--g")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--algo", choices=["horner", "brentkung", "relations",
                                       "auto"], default="auto")
    ap.add_argument("--retries", type=int, default=3)
    ap.add_argument("--verify", action="store_true")
    ap.add_argument("--sizes")
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--precision", type=int)
    ap.add_argument("--csv")
    return ap


_COMMANDS = {
    "compose": cmd_compose,
    "annihilate": cmd_annihilate,
    "minpoly": cmd_minpoly,
    "reverse": cmd_reverse,
    "bench": cmd_bench,
    "selftest": cmd_selftest,
}


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args, out)
    except (ParseError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
