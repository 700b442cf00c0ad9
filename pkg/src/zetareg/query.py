"""Query language: a single function call over numeric literals and names.

Grammar::

    query  := name "(" [ arg ("," arg)* ] ")"
    arg    := number | name
    number := ["-"] digits ["." digits]
    name   := letter (letter | digit | "_")*

Numbers are read as exact rationals, so ``3`` and ``3.0`` are the same
integer while ``3.5`` is not an integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import DomainError, QueryParseError
from .exact import bernoulli, binomial_exact, format_rational, zeta_neg_int
from .mucore import (
    DEFAULT_TRUNCATION,
    IntegerExact,
    delta,
    delta_binomial_form,
    lambda_,
    mu,
)
from .regint import builtin_series, load_series_file, mu_sum_partial, regularize_integral
from .special import DEFAULT_PRECISION, EvalPrecision, gamma, zeta_real

__all__ = [
    "Number",
    "Name",
    "Call",
    "FUNCTIONS",
    "MAX_QUERY_LENGTH",
    "parse",
    "evaluate",
    "render_decimal",
]

MAX_QUERY_LENGTH = 4096
SIGNIFICANT_DIGITS = 12

FUNCTIONS = {
    "mu": 1,
    "zeta": 1,
    "gamma": 1,
    "bernoulli": 1,
    "binomial": 2,
    "lambda": 1,
    "delta": 2,
    "regint": 2,
    "musum": 1,
}


def _fraction_text(q: Fraction) -> str:
    # parsed literals always have denominators dividing a power of ten
    if q.denominator == 1:
        return str(q.numerator)
    d = Decimal(q.numerator) / Decimal(q.denominator)
    return format(d.normalize(), "f")


@dataclass(frozen=True)
class Number:
    value: Fraction
    offset: int = field(default=0, compare=False)

    @property
    def is_integer(self) -> bool:
        return self.value.denominator == 1

    def __str__(self) -> str:
        return _fraction_text(self.value)


@dataclass(frozen=True)
class Name:
    name: str
    offset: int = field(default=0, compare=False)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Call:
    function: str
    args: Tuple[Union[Number, Name], ...]
    offset: int = field(default=0, compare=False)

    def __str__(self) -> str:
        return f"{self.function}({', '.join(str(a) for a in self.args)})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self, pos: Optional[int] = None) -> int:
        """Byte offset of a character position."""
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def error(self, message, code, expected=None, pos=None):
        return QueryParseError(message, code=code, offset=self.offset(pos), expected=expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def describe(self) -> str:
        ch = self.peek()
        return "end of input" if not ch else repr(ch)

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}, found {self.describe()}", "E_UNEXPECTED_TOKEN",
                             expected=repr(ch))
        self.pos += 1

    def name(self) -> Name:
        start = self.pos
        if not (self.peek().isascii() and self.peek().isalpha()):
            raise self.error(f"expected a name, found {self.describe()}", "E_UNEXPECTED_TOKEN",
                             expected="name")
        while self.peek() and self.peek().isascii() and (self.peek().isalnum() or self.peek() == "_"):
            self.pos += 1
        return Name(self.text[start:self.pos], self.offset(start))

    def digits(self) -> str:
        start = self.pos
        while self.peek() and self.peek() in "0123456789":
            self.pos += 1
        return self.text[start:self.pos]

    def number(self) -> Number:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if not self.digits():
            raise self.error("malformed number: expected digits", "E_MALFORMED_NUMBER",
                             expected="digit")
        if self.peek() == ".":
            self.pos += 1
            if not self.digits():
                raise self.error("malformed number: expected digits after '.'",
                                 "E_MALFORMED_NUMBER", expected="digit")
        nxt = self.peek()
        if nxt and (nxt.isalnum() or nxt in "._"):
            raise self.error(f"malformed number: unexpected {nxt!r}", "E_MALFORMED_NUMBER",
                             expected="',' or ')'")
        return Number(Fraction(self.text[start:self.pos]), self.offset(start))

    def arg(self) -> Union[Number, Name]:
        self.skip_ws()
        ch = self.peek()
        if ch == "-" or ch.isdigit():
            return self.number()
        if ch.isascii() and ch.isalpha():
            return self.name()
        raise self.error(f"expected a number or name, found {self.describe()}",
                         "E_UNEXPECTED_TOKEN", expected="number or name")

    def query(self) -> Call:
        self.skip_ws()
        fn = self.name()
        if fn.name not in FUNCTIONS:
            raise QueryParseError(f"unknown function {fn.name!r}", code="E_UNKNOWN_FUNCTION",
                                  offset=fn.offset, expected=" | ".join(FUNCTIONS))
        self.expect("(")
        args = []
        self.skip_ws()
        if self.peek() != ")":
            args.append(self.arg())
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                args.append(self.arg())
                self.skip_ws()
        close = self.pos
        self.expect(")")
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error(f"unexpected trailing input {self.describe()}", "E_TRAILING_INPUT",
                             expected="end of input")
        arity = FUNCTIONS[fn.name]
        if len(args) != arity:
            where = args[arity].offset if len(args) > arity else self.offset(close)
            raise QueryParseError(f"{fn.name} takes {arity} argument(s), got {len(args)}",
                                  code="E_ARITY", offset=where, expected=f"{arity} argument(s)")
        return Call(fn.name, tuple(args), fn.offset)


def parse(text: str) -> Call:
    if len(text) > MAX_QUERY_LENGTH:
        raise QueryParseError(f"query longer than {MAX_QUERY_LENGTH} characters",
                              code="E_INPUT_TOO_LONG", offset=MAX_QUERY_LENGTH)
    return _Parser(text).query()


def render_decimal(x) -> str:
    """12 significant digits, round-half-even, trailing zeros dropped."""
    ctx = Context(prec=SIGNIFICANT_DIGITS, rounding=ROUND_HALF_EVEN)
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        d = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    else:
        x = float(x)
        if math.isnan(x) or math.isinf(x):
            return str(x)
        d = ctx.plus(Decimal(x))
    if d.is_zero():
        return "0"
    d = d.normalize(ctx)
    exp = d.adjusted()
    if -6 <= exp < SIGNIFICANT_DIGITS:
        return format(d, "f")
    return format(d, "e")


def _numeric(doc: dict, value) -> dict:
    if isinstance(value, (int, Fraction)):
        doc["exact"] = format_rational(Fraction(value))
    text = render_decimal(value)
    doc["decimal"] = float(text)
    doc["decimal_text"] = text
    return doc


def _number_arg(call: Call, i: int) -> Number:
    a = call.args[i]
    if not isinstance(a, Number):
        raise DomainError(f"{call.function}: argument {i + 1} must be a number, got {a.name!r}",
                          code="E_ARGUMENT_TYPE", offset=a.offset)
    return a


def _int_arg(call: Call, i: int, minimum: int = 0) -> int:
    a = _number_arg(call, i)
    if not a.is_integer or a.value < minimum:
        raise DomainError(f"{call.function}: argument {i + 1} must be an integer >= {minimum}, "
                          f"got {a}", code="E_ARGUMENT_TYPE", offset=a.offset)
    return int(a.value)


def _arg_value(a: Number):
    return int(a.value) if a.is_integer else float(a.value)


def _eval_mu(call, precision, truncation, series_file):
    a = _number_arg(call, 0)
    m = mu(_arg_value(a), truncation=truncation, precision=precision)
    doc = {"function": "mu", "argument": str(a)}
    if isinstance(m.branch, IntegerExact):
        b = m.branch
        doc["branch"] = "integer"
        _numeric(doc, b.value)
        doc["routes_agree"] = b.routes_agree
        doc["routes"] = {
            "zeta_sum": format_rational(b.zeta_sum),
            "bernoulli_sum": format_rational(b.bernoulli_sum),
            "closed_form": format_rational(b.closed_form),
        }
        doc["route"] = "closed_form; checked against zeta_sum and bernoulli_sum"
    else:
        c = m.branch.certificate
        doc["branch"] = "noninteger"
        doc["value"] = 0
        _numeric(doc, 0)
        doc["lambda"] = c.lambda_value
        doc["series_N"] = c.truncation_N
        doc["series_value"] = c.truncated_series_value
        if c.reciprocity_argument is not None:
            doc["reciprocity_argument"] = c.reciprocity_argument
            doc["reciprocity_factor"] = c.reciprocity_factor
            doc["route"] = "zero certificate via reciprocity"
        else:
            doc["route"] = "zero certificate"
    return doc


def _eval_zeta(call, precision, truncation, series_file):
    a = _number_arg(call, 0)
    doc = {"function": "zeta", "argument": str(a)}
    if a.is_integer and a.value <= 0:
        doc["route"] = "bernoulli"
        return _numeric(doc, zeta_neg_int(-int(a.value)))
    s = float(a.value)
    doc["route"] = "eta_series" if s > 0 else "functional_equation"
    return _numeric(doc, zeta_real(s, precision))


def _eval_gamma(call, precision, truncation, series_file):
    a = _number_arg(call, 0)
    doc = {"function": "gamma", "argument": str(a)}
    if a.is_integer and a.value >= 1:
        doc["route"] = "factorial"
        return _numeric(doc, math.factorial(int(a.value) - 1))
    doc["route"] = "lanczos" if a.value >= Fraction(1, 2) else "lanczos_reflection"
    return _numeric(doc, gamma(float(a.value)))


def _eval_bernoulli(call, precision, truncation, series_file):
    n = _int_arg(call, 0)
    return _numeric({"function": "bernoulli", "argument": str(n), "route": "recurrence"},
                    bernoulli(n))


def _eval_binomial(call, precision, truncation, series_file):
    r = _number_arg(call, 0)
    k = _int_arg(call, 1)
    doc = {"function": "binomial", "arguments": [str(r), str(k)]}
    if r.is_integer and r.value >= 0:
        doc["route"] = "factorial"
        return _numeric(doc, binomial_exact(int(r.value), k))
    # falling factorial over the exact rational literal
    c = Fraction(1)
    for j in range(k):
        c *= (r.value - j) / (j + 1)
    doc["route"] = "falling_factorial"
    return _numeric(doc, c)


def _eval_lambda(call, precision, truncation, series_file):
    a = _number_arg(call, 0)
    return _numeric({"function": "lambda", "argument": str(a)}, lambda_(float(a.value)))


def _eval_delta(call, precision, truncation, series_file):
    r = _number_arg(call, 0)
    n = _int_arg(call, 1, minimum=1)
    doc = {"function": "delta", "arguments": [str(r), str(n)]}
    if r.is_integer and r.value >= 0:
        doc["route"] = "binomial_expansion"
        return _numeric(doc, delta_binomial_form(int(r.value), n))
    doc["route"] = "direct"
    return _numeric(doc, delta(float(r.value), n))


def _eval_regint(call, precision, truncation, series_file):
    s = call.args[0]
    if not isinstance(s, Name):
        raise DomainError("regint: first argument must be a series name",
                          code="E_ARGUMENT_TYPE", offset=s.offset)
    n = _int_arg(call, 1, minimum=1)
    if s.name == "file":
        if series_file is None:
            raise DomainError("regint(file, N) needs --series-file", code="E_SERIES_FILE",
                              offset=s.offset)
        series = load_series_file(series_file)
    else:
        try:
            series = builtin_series(s.name)
        except DomainError as exc:
            exc.offset = s.offset
            raise
    return regint_document(series, n)


def regint_document(series, n: int) -> dict:
    res = regularize_integral(series, n)
    doc = {"function": "regint", "series": series.name, "N": n}
    _numeric(doc, res.value)
    if res.partial_sum_exact is not None:
        doc["partial_sum_exact"] = format_rational(res.partial_sum_exact)
    doc["tail_estimate"] = res.tail_estimate
    doc["alternating"] = res.alternating
    if res.exact_value is not None:
        doc["exact"] = res.exact_value
    doc["route"] = "exact partial sum of a_k mu(k)"
    return doc


def _eval_musum(call, precision, truncation, series_file):
    n = _int_arg(call, 0)
    doc = {"function": "musum", "argument": str(n), "route": "exact partial sum"}
    total = mu_sum_partial(n)
    _numeric(doc, total)
    doc["tail_bound"] = float(Fraction(1, (n + 2) * (n + 3)))
    return doc


_DISPATCH = {
    "mu": _eval_mu,
    "zeta": _eval_zeta,
    "gamma": _eval_gamma,
    "bernoulli": _eval_bernoulli,
    "binomial": _eval_binomial,
    "lambda": _eval_lambda,
    "delta": _eval_delta,
    "regint": _eval_regint,
    "musum": _eval_musum,
}


def evaluate(ast: Call, precision: EvalPrecision = DEFAULT_PRECISION,
             truncation: int = DEFAULT_TRUNCATION, series_file=None) -> dict:
    """Evaluate a parsed query into a result document.

    Domain errors raised by the callees get the call's offset attached when
    they do not carry a more specific one.
    """
    try:
        doc = _DISPATCH[ast.function](ast, precision, truncation, series_file)
    except DomainError as exc:
        if exc.offset is None:
            exc.offset = ast.offset
        raise
    doc["query"] = str(ast)
    return doc
