"""Command-line front end.

    ellmult normalize "(X1+X2)^2" --r 2
    ellmult coeff "(X1+X2+X3)^4" --k 2,1,1 --q 0.9,0.2 --p 0.1,0.05 --a 1.1,0;0.8,0.3;1.3,-0.2
    ellmult verify ellmthm --trials 5 --seed 7 --json
    ellmult paths --endpoint 2,1 --split 1

Expressions follow

    Expr   := Term ('+' Term)*
    Term   := Factor+              (juxtaposition, noncommutative)
    Factor := Base ('^' UINT)?
    Base   := 'X' UINT | '(' Expr ')'

Complex numbers are written ``re,im``; a list of them is separated by
``;`` or given as one flat comma list of pairs.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from .algebra import Evaluator, NormalFormElement, multiply, power_of_sum
from .coefficients import MultiParams, elliptic_multinomial
from .errors import (BudgetError, DomainError, EllmultError, ExpressionError,
                     InconclusiveError, PrecisionError, SamplingError,
                     SingularParameterError)
from .identities import IDENTITIES, SuiteConfig, run_suite
from .lattice import (PathQuery, convolution_split_terms, count_paths,
                      gf_at_endpoint)
from .sampling import multiparams_sampler

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

# largest total degree the CLI will expand symbolically
MAX_DEGREE = 16


# ------------------------------------------------------------------ AST

@dataclass(frozen=True)
class Generator:
    index: int


@dataclass(frozen=True)
class Power:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Product:
    items: tuple


@dataclass(frozen=True)
class Sum:
    items: tuple


Node = Union[Generator, Power, Product, Sum]


class _Parser:
    def __init__(self, text: str, r: Optional[int]):
        self.text = text
        self.pos = 0
        self.r = r

    def offset(self, pos: int = None) -> int:
        # byte offset, not character offset
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def fail(self, msg: str, pos: int = None, kind: str = "syntax"):
        raise ExpressionError(msg, self.offset(pos), kind)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            self.fail("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def parse(self) -> Node:
        node = self.expr()
        if self.peek():
            self.fail(f"unexpected {self.peek()!r}")
        return node

    def expr(self) -> Node:
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.peek() in ("X", "("):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            return Power(base, self.uint())
        return base

    def base(self) -> Node:
        c = self.peek()
        if c == "X":
            self.pos += 1
            self.skip()
            at = self.pos
            i = self.uint()
            if i == 0 or (self.r is not None and i > self.r):
                bound = "1.." + (str(self.r) if self.r is not None else "r")
                self.fail(f"generator index {i} outside {bound}", at, "semantic")
            return Generator(i)
        if c == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return node
        self.fail("expected 'X' or '('" if c else "unexpected end of input")


def parse_expression(text: str, r: int = None) -> Node:
    """Parse ``text``; raises ExpressionError with a byte offset on bad input."""
    return _Parser(text, r).parse()


def format_expr(node: Node) -> str:
    if isinstance(node, Generator):
        return f"X{node.index}"
    if isinstance(node, Power):
        inner = format_expr(node.base)
        if not isinstance(node.base, Generator):
            inner = f"({inner})"
        return f"{inner}^{node.exp}"
    if isinstance(node, Product):
        return " ".join(f"({format_expr(x)})" if isinstance(x, Sum) else format_expr(x)
                        for x in node.items)
    return "+".join(format_expr(x) for x in node.items)


def max_index(node: Node) -> int:
    if isinstance(node, Generator):
        return node.index
    if isinstance(node, Power):
        return max_index(node.base)
    return max(max_index(x) for x in node.items)


def degree(node: Node) -> int:
    """Largest total degree of any monomial in the expansion."""
    if isinstance(node, Generator):
        return 1
    if isinstance(node, Power):
        return degree(node.base) * node.exp
    if isinstance(node, Product):
        return sum(degree(x) for x in node.items)
    return max(degree(x) for x in node.items)


def _is_full_sum(node: Node, r: int) -> bool:
    return (isinstance(node, Sum)
            and tuple(node.items) == tuple(Generator(i) for i in range(1, r + 1)))


def to_element(node: Node, r: int) -> NormalFormElement:
    """Expand and normal-order an AST."""
    if degree(node) > MAX_DEGREE:
        raise BudgetError(f"expression degree {degree(node)} exceeds {MAX_DEGREE}")
    return _expand(node, r)


def _expand(node: Node, r: int) -> NormalFormElement:
    if isinstance(node, Generator):
        return NormalFormElement.generator(r, node.index)
    if isinstance(node, Sum):
        out = _expand(node.items[0], r)
        for x in node.items[1:]:
            out = out + _expand(x, r)
        return out
    if isinstance(node, Product):
        out = _expand(node.items[0], r)
        for x in node.items[1:]:
            out = multiply(out, _expand(x, r))
        return out
    if _is_full_sum(node.base, r):
        return power_of_sum(r, node.exp)
    base = _expand(node.base, r)
    out = NormalFormElement.one(r)
    for _ in range(node.exp):
        out = multiply(out, base)
    return out


def format_monomial(k: Sequence[int]) -> str:
    parts = [f"X{i + 1}^{e}" for i, e in enumerate(k) if e]
    return " ".join(parts) if parts else "X1^0"


# ------------------------------------------------------------------ flags

def parse_complex(text: str) -> complex:
    parts = [x.strip() for x in text.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")


def parse_complex_list(text: str) -> tuple:
    if ";" in text or " " in text.strip():
        return tuple(parse_complex(x) for x in text.replace(";", " ").split())
    parts = text.split(",")
    if len(parts) % 2:
        raise argparse.ArgumentTypeError(f"expected pairs RE,IM,..., got {text!r}")
    return tuple(parse_complex(",".join(parts[i:i + 2])) for i in range(0, len(parts), 2))


def parse_uint_list(text: str) -> tuple:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n1,n2,..., got {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("entries must be nonnegative")
    return values


class _UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    # defaults are suppressed so the flags may appear before or after the command
    common = _ArgParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--r", type=int, default=S, help="number of generators")
    common.add_argument("--q", type=parse_complex, default=S, help="base q as RE,IM")
    common.add_argument("--p", type=parse_complex, default=S, help="nome p as RE,IM")
    common.add_argument("--a", type=parse_complex_list, default=S,
                        help="a_1..a_r as RE,IM;RE,IM;...")
    common.add_argument("--json", action="store_true", default=S, help="JSON on stdout")
    common.add_argument("--tol", type=float, default=S, help="tolerance override")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _ArgParser(prog="ellmult", parents=[common],
                        description="Elliptic multinomial theorem toolkit.")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgParser)
    sub.required = True

    p = sub.add_parser("normalize", parents=[common], help="normal-order an expression")
    p.add_argument("expr")

    p = sub.add_parser("coeff", parents=[common], help="one normal-form coefficient")
    p.add_argument("expr")
    p.add_argument("--k", type=parse_uint_list, required=True)

    p = sub.add_parser("verify", parents=[common], help="run identity checks")
    p.add_argument("names", nargs="*", metavar="NAME")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("paths", parents=[common], help="lattice path generating function")
    p.add_argument("--endpoint", type=parse_uint_list, required=True)
    p.add_argument("--split", type=int, metavar="M")
    p.add_argument("--seed", type=int, default=0, help="seed for parameters not given")
    return parser


def _flag(ns, name, default=None):
    return getattr(ns, name, default)


def _params(ns, r: int) -> Optional[MultiParams]:
    given = [_flag(ns, x) is not None for x in ("q", "p", "a")]
    if not any(given):
        return None
    if not all(given):
        raise _UsageError("--q, --p and --a must be given together")
    a = _flag(ns, "a")
    if len(a) != r:
        raise _UsageError(f"--a has {len(a)} entries, expected r={r}")
    return MultiParams(a, _flag(ns, "q"), _flag(ns, "p"))


def _fmt_complex(z: complex) -> str:
    return f"{z.real!r},{z.imag!r}"


# ------------------------------------------------------------------ commands

def _resolve_expr(ns):
    r = _flag(ns, "r")
    if r is not None and r < 1:
        raise _UsageError("--r must be at least 1")
    ast = parse_expression(ns.expr, r)
    r = r if r is not None else max_index(ast)
    return ast, r


def _cmd_normalize(ns, out, err) -> int:
    ast, r = _resolve_expr(ns)
    elem = to_element(ast, r)
    params = _params(ns, r)
    ev = Evaluator(params) if params else None
    rows = []
    for k, c in elem.terms.items():
        row = {"k": list(k), "monomial": format_monomial(k), "coeff": str(c)}
        if ev:
            row["value"] = ev(c)
        rows.append(row)
    if _flag(ns, "json"):
        for row in rows:
            if "value" in row:
                row["value"] = [row["value"].real, row["value"].imag]
        print(json.dumps(rows, indent=2), file=out)
        return EXIT_OK
    for row in rows:
        line = f"{row['monomial']} : {row['coeff']}"
        if "value" in row:
            line += f"  = {_fmt_complex(row['value'])}"
        print(line, file=out)
    return EXIT_OK


def _cmd_coeff(ns, out, err) -> int:
    ast, r = _resolve_expr(ns)
    if len(ns.k) != r:
        raise _UsageError(f"--k has {len(ns.k)} entries, expected r={r}")
    c = to_element(ast, r).coefficient(ns.k)
    params = _params(ns, r)
    value = Evaluator(params)(c) if params else None
    if _flag(ns, "json"):
        doc = {"k": list(ns.k), "coeff": str(c)}
        if value is not None:
            doc["value"] = [value.real, value.imag]
        print(json.dumps(doc, indent=2), file=out)
    else:
        print(f"{format_monomial(ns.k)} : {c}", file=out)
        if value is not None:
            print(f"value = {_fmt_complex(value)}", file=out)
    return EXIT_OK


def _cmd_verify(ns, out, err) -> int:
    names = ns.names or None
    for name in names or ():
        if name not in IDENTITIES:
            raise _UsageError(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)}")
    if ns.trials is not None and ns.trials < 1:
        raise _UsageError("--trials must be positive")
    tol = _flag(ns, "tol")
    tolerances = {n: tol for n in (names or IDENTITIES)} if tol is not None else {}
    reports = run_suite(SuiteConfig(seed=ns.seed, trials=ns.trials,
                                    tolerances=tolerances, identities=names))
    if _flag(ns, "json"):
        print(json.dumps([rep.to_json() for rep in reports], indent=2), file=out)
    else:
        for rep in reports:
            print(rep.summary(), file=out)
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAIL


def _cmd_paths(ns, out, err) -> int:
    n = ns.endpoint
    r = _flag(ns, "r", len(n))
    if r != len(n):
        raise _UsageError(f"--endpoint has {len(n)} entries, expected r={r}")
    params = _params(ns, r)
    if params is None:
        params = multiparams_sampler(r, ns.seed)(0)
        print(f"# drawn parameters: q={_fmt_complex(params.q)} p={_fmt_complex(params.p)} "
              f"a={';'.join(_fmt_complex(x) for x in params.a)}", file=err)
    query = PathQuery(n, ns.split)
    gf = gf_at_endpoint(query, params)
    closed = elliptic_multinomial(n, params)
    doc = {"endpoint": list(n), "paths": count_paths(n), "gf": gf, "closed_form": closed}
    if ns.split is not None:
        split = convolution_split_terms(query, params)
        doc["split"] = [{"k": list(k), "term": t} for k, t, _ in split]
        doc["split_total"] = sum((t for _, t, _ in split), 0j)
    if _flag(ns, "json"):
        def enc(z):
            return [z.real, z.imag] if isinstance(z, complex) else z
        doc = {k: ([{**d, "term": enc(d["term"])} for d in v] if k == "split" else enc(v))
               for k, v in doc.items()}
        print(json.dumps(doc, indent=2), file=out)
        return EXIT_OK
    print(f"endpoint {tuple(n)}: {doc['paths']} paths", file=out)
    print(f"path sum    = {_fmt_complex(gf)}", file=out)
    print(f"closed form = {_fmt_complex(closed)}", file=out)
    if ns.split is not None:
        for d in doc["split"]:
            print(f"  via {tuple(d['k'])}: {_fmt_complex(d['term'])}", file=out)
        print(f"split total = {_fmt_complex(doc['split_total'])}", file=out)
    return EXIT_OK


COMMANDS = {"normalize": _cmd_normalize, "coeff": _cmd_coeff,
            "verify": _cmd_verify, "paths": _cmd_paths}


def main(argv: List[str] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        return COMMANDS[ns.command](ns, out, err)
    except _UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except ExpressionError as exc:
        print(f"ellmult: {exc}", file=err)
        return EXIT_USAGE
    except (PrecisionError, SingularParameterError, InconclusiveError, SamplingError) as exc:
        print(f"ellmult: numeric error: {exc}", file=err)
        return EXIT_NUMERIC
    except (DomainError, BudgetError) as exc:
        print(f"ellmult: {exc}", file=err)
        return EXIT_USAGE
    except EllmultError as exc:
        print(f"ellmult: {exc}", file=err)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
