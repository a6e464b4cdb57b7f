import io
import json
import subprocess
import sys

import jsonschema
import pytest

from conftest import rel
from ellmult.cli import (EXIT_FAIL, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, Generator, Power, Product,
                         Sum, format_expr, format_monomial, main, parse_complex_list,
                         parse_expression, to_element)
from ellmult.coefficients import MultiParams, elliptic_multinomial
from ellmult.errors import ExpressionError
from ellmult.identities import REPORT_SCHEMA

G1, G2, G3 = Generator(1), Generator(2), Generator(3)

POINT = ["--q", "0.9,0.2", "--p", "0.1,0.05", "--a", "1.1,0;0.8,0.3;1.3,-0.2"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_examples():
    assert parse_expression("(X1+X2)^3") == Power(Sum((G1, G2)), 3)
    assert parse_expression("X2 X1") == Product((G2, G1))
    assert parse_expression(" X1 ( X2 + X3 ) ^ 2 X1 ") == Product((G1, Power(Sum((G2, G3)), 2), G1))
    assert parse_expression("X1X2") == Product((G1, G2))
    assert parse_expression("X12") == Generator(12)


@pytest.mark.parametrize("text, offset", [
    ("X1^", 3), ("", 0), ("X", 1), ("(X1+X2", 6), ("X1 + ", 5), ("X1)", 2), ("3 X1", 0),
    ("X1^-1", 3), ("é X1", 0), ("X1 é", 3),
])
def test_syntax_errors(text, offset):
    with pytest.raises(ExpressionError) as info:
        parse_expression(text)
    assert info.value.kind == "syntax"
    assert info.value.offset == offset


def test_semantic_errors():
    with pytest.raises(ExpressionError) as info:
        parse_expression("X1 X0")
    assert info.value.kind == "semantic" and info.value.offset == 4
    with pytest.raises(ExpressionError) as info:
        parse_expression("X1 + X3", r=2)
    assert info.value.kind == "semantic" and info.value.offset == 6


def test_format_round_trip():
    for text in ("(X1+X2)^3", "X2 X1", "X1 (X2+X3)^2 X1", "(X1 X2)^2+X3"):
        ast = parse_expression(text)
        assert parse_expression(format_expr(ast)) == ast


def test_monomial_skeleton_round_trip():
    for r, n in ((2, 3), (3, 2), (1, 0)):
        elem = to_element(Power(Sum(tuple(Generator(i) for i in range(1, r + 1))), n)
                          if r > 1 else Power(G1, n), r)
        for k in elem.terms:
            back = to_element(parse_expression(format_monomial(k)), r)
            assert list(back.terms) == [k]


def test_normalize_command():
    code, out, _ = run("normalize", "(X1+X2)^2", "--r", "2")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 3
    mixed = [x for x in lines if x.startswith("X1^1 X2^1 :")]
    assert mixed and mixed[0].split(" : ")[1].startswith("1 + q^1 * theta(")


def test_normalize_with_values_and_json():
    argv = ["normalize", "(X1+X2+X3)^2", *POINT]
    code, out, _ = run(*argv)
    assert code == EXIT_OK and all(" = " in x for x in out.strip().splitlines())
    code, out, _ = run(*argv, "--json")
    rows = json.loads(out)
    P = MultiParams((1.1, 0.8 + 0.3j, 1.3 - 0.2j), 0.9 + 0.2j, 0.1 + 0.05j)
    for row in rows:
        assert rel(complex(*row["value"]), elliptic_multinomial(tuple(row["k"]), P)) < 1e-9


def test_coeff_command_matches_closed_form():
    code, out, _ = run("coeff", "(X1+X2+X3)^4", "--k", "2,1,1", *POINT)
    assert code == EXIT_OK
    value = out.strip().splitlines()[-1].split("=")[1].strip()
    z = complex(*map(float, value.split(",")))
    P = MultiParams((1.1, 0.8 + 0.3j, 1.3 - 0.2j), 0.9 + 0.2j, 0.1 + 0.05j)
    assert rel(z, elliptic_multinomial((2, 1, 1), P)) < 1e-9
    code, out, _ = run("coeff", "X2 X1", "--k", "2,0")
    assert code == EXIT_OK and out.strip().endswith(": 0")


def test_verify_command():
    code, out, _ = run("verify", "ellmthm", "--trials", "5", "--seed", "7")
    assert code == EXIT_OK and out.startswith("PASS ellmthm")
    code, out, _ = run("verify", "estr", "--trials", "1", "--json")
    assert code == EXIT_FAIL
    for doc in json.loads(out):
        jsonschema.validate(doc, REPORT_SCHEMA)
    code, out, _ = run("verify", "rec", "--trials", "2", "--tol", "1e-30")
    assert code == EXIT_FAIL


def test_verify_json_is_bytewise_reproducible():
    argv = ["--json", "verify", "addf", "pfd", "subst-bridge", "--trials", "3", "--seed", "9"]
    assert run(*argv)[1] == run(*argv)[1]
    assert run(*argv)[1] != run(*argv[:-1], "10")[1]


def test_paths_command():
    code, out, _ = run("paths", "--endpoint", "2,1", "--split", "1", "--q", "0.9,0.2",
                       "--p", "0.1,0.05", "--a", "1.1,0,0.8,0.3", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["paths"] == 3
    assert rel(complex(*doc["gf"]), complex(*doc["closed_form"])) < 1e-10
    assert rel(complex(*doc["split_total"]), complex(*doc["gf"])) < 1e-10
    code, out, err = run("paths", "--endpoint", "1,1,1")
    assert code == EXIT_OK and "drawn parameters" in err


@pytest.mark.parametrize("argv, code", [
    (["normalize", "X1^"], EXIT_USAGE),
    (["normalize", "X3", "--r", "2"], EXIT_USAGE),
    (["normalize", "(X1+X2)^40"], EXIT_USAGE),
    (["frobnicate"], EXIT_USAGE),
    ([], EXIT_USAGE),
    (["coeff", "X1 X2"], EXIT_USAGE),
    (["coeff", "X1 X2", "--k", "1,1,1"], EXIT_USAGE),
    (["coeff", "X1", "--k", "1", "--q", "1,0"], EXIT_USAGE),
    (["coeff", "X1", "--k", "1", "--q", "banana", "--p", "0,0", "--a", "1,0"], EXIT_USAGE),
    (["coeff", "X1", "--k", "1", "--q", "1,0", "--p", "0.99,0.5", "--a", "1,0"], EXIT_USAGE),
    (["verify", "nope"], EXIT_USAGE),
    (["verify", "addf", "--trials", "0"], EXIT_USAGE),
    (["paths", "--endpoint", "9,9,9"], EXIT_USAGE),
    (["paths", "--endpoint", "1,-1"], EXIT_USAGE),
])
def test_usage_errors(argv, code):
    assert run(*argv)[0] == code


def test_numeric_error_exit_code():
    # a_1 = 1/q makes theta(a_1 q) vanish in a denominator
    code, _, err = run("coeff", "X2 X1", "--k", "1,1", "--q", "0.5,0", "--p", "0.1,0",
                       "--a", "2,0;0.7,0.1")
    assert code == EXIT_NUMERIC and "numeric" in err


def test_complex_list_forms():
    assert parse_complex_list("1,2;3,-4") == (1 + 2j, 3 - 4j)
    assert parse_complex_list("1,2,3,-4") == (1 + 2j, 3 - 4j)
    assert parse_complex_list("1,2 3,-4") == (1 + 2j, 3 - 4j)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ellmult", "normalize", "X2 X1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("X1^1 X2^1 : q^1")
