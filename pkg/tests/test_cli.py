"""The ffspectra command: examples, exit codes, parsing and export."""

import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from ffspectra.cli import FuncExpr, Term, main, parse_func
from ffspectra.errors import ParseError
from ffspectra.field import mk_field
from ffspectra.spectra import Monomial, SparsePoly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field_command(capsys):
    code, out, _ = run(capsys, "field", "--p", "2", "--n", "3")
    assert code == 0
    assert "q = 8" in out and "modulus: x^3 + x + 1" in out and "log tables: built" in out
    code, out, _ = run(capsys, "field", "--p", "3", "--n", "2")
    assert "q = 9" in out
    code, _, err = run(capsys, "field", "--p", "4", "--n", "1")
    assert code == 2 and "NotPrime" in err


def test_field_custom_modulus(capsys):
    code, out, _ = run(capsys, "field", "--p", "2", "--n", "3", "--modulus", "1,0,1,1")
    assert code == 0 and "x^3 + x^2 + 1" in out
    code, _, err = run(capsys, "field", "--p", "2", "--n", "2", "--modulus", "1,0,1")
    assert code == 2 and "ReducibleModulus" in err


@pytest.mark.parametrize(
    "p,n,func,nabla",
    [("2", "5", "x^21", 0), ("11", "1", "x^9 + x^4", 1), ("2", "3", "x^3", 0), ("5", "3", "x^14", 4)],
)
def test_fbct_command(capsys, p, n, func, nabla):
    code, out, _ = run(capsys, "fbct", "--p", p, "--n", n, "--func", func)
    assert code == 0
    assert f"nabla_F = {nabla}" in out


def test_ddt_and_uniformity(capsys):
    code, out, _ = run(capsys, "ddt", "--p", "11", "--n", "1", "--func", "x^9 + x^4")
    assert code == 0 and "Delta_F = 3" in out
    code, out, _ = run(capsys, "uniformity", "--p", "5", "--n", "3", "--func", "x^14", "--format", "json")
    doc = json.loads(out)
    assert doc["Delta_F"] == 2 and doc["nabla_F"] == 4 and doc["class"] == "APN"


def test_exports_are_byte_identical(capsys, tmp_path):
    paths = []
    for i in range(2):
        for fmt in ("csv", "json"):
            path = tmp_path / f"t{i}.{fmt}"
            code, _, _ = run(capsys, "fbct", "--p", "3", "--n", "2", "--func", "x^8 + 2*x^2", "--out", str(path), "--format", fmt)
            assert code == 0
            paths.append(path)
    assert paths[0].read_bytes() == paths[2].read_bytes()
    assert paths[1].read_bytes() == paths[3].read_bytes()
    rows = paths[0].read_text().splitlines()
    assert rows[0] == "a,b,count" and len(rows) == 82
    assert json.loads(paths[1].read_text())["kind"] == "FBCT"


def test_budget_guard(capsys, tmp_path):
    code, _, err = run(capsys, "fbct", "--p", "2", "--n", "11", "--func", "x^3 + x^5")
    assert code == 2 and "BudgetExceeded" in err
    # monomials use the scaling row and are allowed up to 2^16
    code, out, _ = run(capsys, "fbct", "--p", "2", "--n", "11", "--func", "x^3")
    assert code == 0 and "nabla_F = 0" in out
    out_file = tmp_path / "big.csv"
    code, _, err = run(capsys, "fbct", "--p", "2", "--n", "11", "--func", "x^3", "--out", str(out_file))
    assert code == 2 and not out_file.exists()


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "quarter_family", "--p", "3", "--n", "7")
    assert code == 0
    assert "d=1640" in out and "nabla=8" in out and "bound 8" in out and "PASS" in out
    code, out, _ = run(capsys, "verify", "--theorem", "binomial", "--p", "3", "--n", "2", "--u", "g")
    assert code == 0 and "0 mismatches" in out
    code, out, _ = run(capsys, "verify", "--theorem", "cubic_general", "--p", "2", "--n", "5", "--func", "x^21")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "--theorem", "inverse_like", "--p", "2", "--n", "7", "--s", "4", "--format", "json")
    assert code == 0 and json.loads(out)["mismatches"] == []
    code, _, err = run(capsys, "verify", "--theorem", "inverse_like", "--p", "2", "--n", "6", "--s", "2")
    assert code == 2 and "GcdViolation" in err
    code, _, err = run(capsys, "verify", "--theorem", "cubic_general", "--p", "2", "--n", "5", "--func", "x^6")
    assert code == 2 and "ParseError" in err


def test_search_command(capsys):
    code, out, _ = run(capsys, "search", "--family", "monomial", "--p", "2", "--n", "6", "--predicate", "0apn", "--exp", "21")
    assert code == 0 and "MISS" in out
    code, out, _ = run(capsys, "search", "--p", "2", "--n", "3-5,7", "--predicate", "0apn", "--exp", "21")
    assert out.count("HIT") == 4
    code, out, _ = run(capsys, "search", "--p", "2", "--n", "5", "--predicate", "apn")
    assert "n=5:" in out and " 3 " in f" {out.split(chr(10))[1]} "
    code, _, err = run(capsys, "search", "--p", "2", "--n", "5", "--predicate", "bogus")
    assert code == 2


def test_solve_command(capsys):
    code, out, _ = run(capsys, "solve", "--kind", "cubic", "--p", "2", "--n", "5", "--a", "3")
    assert code == 0 and "roots (3): 7 17 22" in out
    code, out, _ = run(capsys, "solve", "--kind", "trinomial", "--p", "3", "--n", "2", "--k", "1", "--A", "g", "--B", "1")
    assert code == 0 and "roots" in out
    code, out, _ = run(capsys, "solve", "--kind", "companion", "--p", "2", "--n", "7", "--A", "3", "--t", "3")
    assert code == 0 and "kernel dimension" in out


def test_entry_point_runs():
    res = subprocess.run([sys.executable, "-m", "ffspectra.cli", "field", "--p", "2", "--n", "4"], capture_output=True, text=True)
    assert res.returncode == 0 and "q = 16" in res.stdout


# -- expression grammar ------------------------------------------------------------


def test_parse_examples():
    assert parse_func("x^21") == FuncExpr((Term(1, 21),))
    assert parse_func(" x^9 + x^4 ") == FuncExpr((Term(1, 9), Term(1, 4)))
    assert parse_func("g^3*x^2+5*x^7") == FuncExpr((Term(3, 2, gen=True), Term(5, 7)))
    ctx = mk_field(3, 2)
    assert parse_func("x^4").to_func(ctx) == Monomial(4)
    assert parse_func("2*x^4 + x^2").to_func(ctx) == SparsePoly(((2, 4), (1, 2)))


@pytest.mark.parametrize(
    "text,pos",
    [("x^3 + y", 6), ("x^", 2), ("x^3 +", 5), ("3x^2", 1), ("x^3 ++ x", 5), ("", 0), ("x^3 x^4", 4), ("g*x^2", 1)],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_func(text)
    assert info.value.position == pos


def test_coefficient_outside_field():
    with pytest.raises(ParseError):
        parse_func("9*x^2").to_func(mk_field(3, 2))


terms = st.builds(
    Term,
    coeff=st.integers(0, 10**4),
    exp=st.integers(0, 10**6),
    gen=st.booleans(),
)


@settings(max_examples=300)
@given(st.lists(terms, min_size=1, max_size=6))
def test_parse_print_fixed_point(ts):
    expr = FuncExpr(tuple(ts))
    once = parse_func(str(expr))
    assert once == expr
    assert parse_func(str(once)) == once


@settings(max_examples=100)
@given(st.text(alphabet="xg^*+0123 ", max_size=20))
def test_parser_never_crashes(text):
    try:
        expr = parse_func(text)
    except ParseError as exc:
        assert exc.position is not None and 0 <= exc.position <= len(text)
    else:
        assert parse_func(str(expr)) == expr
