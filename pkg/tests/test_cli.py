import csv
import io

import pytest

from modcomp.field import PrimeField
from modcomp.cli import (
    CSV_HEADER, CounterRng, ParseError, main, parse_poly_text,
)


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


# -------------------------------------------------------------------- parsing

def test_parse_zero():
    F = PrimeField(5)
    assert parse_poly_text("0", F).c == []


def test_parse_dense():
    F = PrimeField(5)
    assert parse_poly_text("1 0 1", F).c == [1, 0, 1]


def test_parse_sparse():
    F = PrimeField(7)
    assert parse_poly_text("2*x^3 + 1", F).c == [1, 0, 0, 2]
    assert parse_poly_text("x^2 - x + 3", F).c == [3, 6, 1]
    assert parse_poly_text("x + x", F).c == [0, 2]


def test_parse_errors_with_position():
    F = PrimeField(5)
    with pytest.raises(ParseError):
        parse_poly_text("1 q 1", F)
    with pytest.raises(ParseError):
        parse_poly_text("", F)


# ------------------------------------------------------------------- commands

def test_compose_pinned():
    code, out = run(["compose", "-p", "5", "--f", "1 0 1", "--a", "0 1",
                     "--g", "0 0 0 1", "--verify"])
    assert code == 0
    assert out.strip() == "0 4"


def test_compose_identity_g():
    code, out = run(["compose", "-p", "5", "--f", "1 0 1", "--a", "3 2",
                     "--g", "0 1"])
    assert code == 0
    assert out.strip() == "3 2"


def test_compose_malformed_f():
    code, _ = run(["compose", "-p", "5", "--f", "1 zz", "--a", "0 1",
                   "--g", "0 1"])
    assert code == 2


def test_compose_missing_prime():
    code, _ = run(["compose", "--f", "1 0 1", "--a", "0 1", "--g", "0 1"])
    assert code == 2


def test_compose_file_input(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("1 0 1\n")
    code, out = run(["compose", "-p", "5", "--f", "@" + str(path),
                     "--a", "0 1", "--g", "0 0 0 1"])
    assert code == 0
    assert out.strip() == "0 4"


def test_compose_auto_always_answers_with_verify():
    # auto falls back to Horner after retries, so --verify must accept it
    for seed in range(3):
        code, out = run(["compose", "-p", "65537", "--f", "3 1 4 1 5 1",
                         "--a", "1 2 3 4 5", "--g", "9 8 7 6 5",
                         "--seed", str(seed), "--verify"])
        assert code == 0
        assert out.strip() != "Fail"


def test_annihilate_runs():
    code, out = run(["annihilate", "-p", "65537", "--f", "1 0 0 0 1",
                     "--a", "0 1"])
    assert code == 0
    assert out.strip() != ""


def test_minpoly_reports_status():
    code, out = run(["minpoly", "-p", "5", "--f", "1 0 1", "--a", "0 1"])
    assert code == 0
    assert out.startswith("1 0 1 #")


def test_reverse_pinned():
    code, out = run(["reverse", "-p", "7", "--a", "0 1 1",
                     "--precision", "3"])
    assert code == 0
    assert out.strip() == "0 1 6"


def test_bench_schema_and_determinism():
    argv = ["bench", "-p", "65537", "--sizes", "4,6", "--trials", "2",
            "--algo", "horner", "--seed", "7"]
    code, out1 = run(argv)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out1)))
    assert rows[0] == CSV_HEADER
    assert len(rows) == 3
    for row in rows[1:]:
        assert row[0] == "horner"
        assert int(row[5]) == 0              # horner never fails
        assert 0.0 <= float(row[6]) <= 1.0
    _, out2 = run(argv)
    strip_time = lambda r: [r[i] for i in range(len(r)) if i != 4]
    assert [strip_time(r) for r in csv.reader(io.StringIO(out1))] \
        == [strip_time(r) for r in csv.reader(io.StringIO(out2))]


def test_bench_relations_low_fail_rate():
    code, out = run(["bench", "-p", str(2**31 - 1), "--sizes", "8,16",
                     "--trials", "20", "--algo", "relations", "--seed", "3"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    for row in rows[1:]:
        assert int(row[5]) / int(row[3]) <= 0.01 + 1e-9


def test_selftest():
    code, out = run(["selftest", "-p", "65537", "--trials", "10"])
    assert code == 0
    assert "0 mismatches" in out


def test_csv_file_output(tmp_path):
    path = tmp_path / "bench.csv"
    code, _ = run(["bench", "-p", "5", "--sizes", "4", "--trials", "1",
                   "--algo", "horner", "--csv", str(path)])
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == CSV_HEADER


# ------------------------------------------------------------------------ rng

def test_counter_rng_reproducible_and_split():
    r1 = CounterRng(42)
    r2 = CounterRng(42)
    assert [r1.below(1000) for _ in range(5)] \
        == [r2.below(1000) for _ in range(5)]
    s1 = CounterRng(42).split(1)
    s2 = CounterRng(42).split(2)
    assert [s1.below(10**9) for _ in range(4)] \
        != [s2.below(10**9) for _ in range(4)]


def test_counter_rng_tape():
    F = PrimeField(101)
    t = CounterRng(9).tape(F, 8)
    vals = t.read(8)
    assert len(vals) == 8 and all(0 <= v < 101 for v in vals)
