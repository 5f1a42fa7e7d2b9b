"""Expression parsing and the JSON description-file layer.

Grammar (standard precedence, unary minus binding looser than powers):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' factor) | factor)*      -- '*' is optional
    factor := '-' factor | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER ('/' INTEGER)? | IDENT | 'z@p' | '(' expr ')'

Identifiers are ring variables; ``z@p`` is the field constant of Q(z@p) and
is rejected as a ring variable name.  Errors carry 1-based line/column.

Description files are JSON objects with keys ``field``, ``variables``,
``relations`` and optional ``gradings`` (name -> weight matrix) and
``derivations`` (name -> variable -> expression).  The canonical dump is
byte-stable: sorted keys, two-space indent, LF endings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .algebra import PresentedAlgebra, attach_grading
from .coeff import CyclotomicField, field_from_text, root_of_unity
from .derivation import Derivation, new_derivation
from .poly import Context, ContextError, Polynomial


class ParseError(ValueError):
    """A lexical or syntactic defect, located by line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SchemaError(ValueError):
    """A description file violating the expected JSON shape."""


# ----------------------------------------------------------------------
# lexer

_OPS = set("+-*/^()")


class _Token:
    __slots__ = ("kind", "value", "line", "column")

    def __init__(self, kind, value, line, column):
        self.kind = kind
        self.value = value
        self.line = line
        self.column = column


def _lex(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            col += j - i
            i = j
            if i < n and text[i] == "@":
                if name != "z":
                    raise ParseError(f"unexpected '@' after {name!r}", line, col)
                j = i + 1
                while j < n and text[j].isdigit():
                    j += 1
                if j == i + 1:
                    raise ParseError("expected a prime after 'z@'", line, col + 1)
                tokens.append(_Token("cyclo", int(text[i + 1:j]), line, start_col))
                col += j - i
                i = j
            else:
                tokens.append(_Token("ident", name, line, start_col))
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(_Token("end", None, line, col))
    return tokens


# ----------------------------------------------------------------------
# parser

_ATOM_STARTS = {"int", "ident", "cyclo", "("}


class _Parser:
    def __init__(self, tokens, context: Context):
        self.tokens = tokens
        self.pos = 0
        self.context = context

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, token: _Token | None = None):
        token = token or self.peek()
        raise ParseError(message, token.line, token.column)

    def parse(self) -> Polynomial:
        value = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().value!r}")
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.factor()
        while True:
            kind = self.peek().kind
            if kind == "*":
                self.take()
                value = value * self.factor()
            elif kind in _ATOM_STARTS:
                value = value * self.factor()
            else:
                return value

    def factor(self) -> Polynomial:
        if self.peek().kind == "-":
            self.take()
            return -self.factor()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                self.fail("malformed exponent: expected a non-negative integer")
            self.take()
            base = base ** tok.value
            if self.peek().kind == "^":
                self.fail("malformed exponent: chained '^' is not allowed")
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            value = Fraction(tok.value)
            if self.peek().kind == "/":
                self.take()
                denom = self.peek()
                if denom.kind != "int":
                    self.fail("expected an integer denominator")
                self.take()
                if denom.value == 0:
                    self.fail("zero denominator", denom)
                value = Fraction(tok.value, denom.value)
            return Polynomial.constant(self.context, value)
        if tok.kind == "ident":
            self.take()
            try:
                return Polynomial.variable(self.context, tok.value)
            except ContextError:
                self.fail(f"unknown identifier {tok.value!r}", tok)
        if tok.kind == "cyclo":
            self.take()
            field = self.context.field
            if not isinstance(field, CyclotomicField) or field.p != tok.value:
                self.fail(
                    f"field constant z@{tok.value} is not available in {field.text}",
                    tok,
                )
            return Polynomial.constant(self.context, root_of_unity(tok.value, 1))
        if tok.kind == "(":
            self.take()
            value = self.expr()
            if self.peek().kind != ")":
                self.fail("expected ')'")
            self.take()
            return value
        self.fail("expected a number, variable, or '('")


def parse_expression(text: str, context: Context) -> Polynomial:
    """Parse the canonical text form in the given variable/field context."""
    return _Parser(_lex(text), context).parse()


def print_expression(poly: Polynomial) -> str:
    """The canonical text form; parse_expression inverts it exactly."""
    return poly.text()


# ----------------------------------------------------------------------
# description files

_ALGEBRA_KEYS = {"field", "variables", "relations", "gradings", "derivations"}
_DERIVATION_KEYS = {"algebra", "images"}


def _expect(condition: bool, message: str):
    if not condition:
        raise SchemaError(message)


def algebra_from_data(data: dict) -> PresentedAlgebra:
    """Build an algebra (with attached gradings) from decoded JSON data."""
    _expect(isinstance(data, dict), "top level must be a JSON object")
    unknown = set(data) - _ALGEBRA_KEYS
    _expect(not unknown, f"unknown keys {sorted(unknown)}")
    for key in ("field", "variables", "relations"):
        _expect(key in data, f"missing required key {key!r}")
    _expect(isinstance(data["field"], str), "'field' must be a string")
    try:
        field = field_from_text(data["field"])
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    variables = data["variables"]
    _expect(
        isinstance(variables, list) and all(isinstance(v, str) for v in variables),
        "'variables' must be a list of names",
    )
    try:
        context = Context(field, tuple(variables))
    except ContextError as exc:
        raise SchemaError(f"bad variable list: {exc}") from None
    relations = data["relations"]
    _expect(
        isinstance(relations, list) and all(isinstance(r, str) for r in relations),
        "'relations' must be a list of expression strings",
    )
    parsed = [parse_expression(r, context) for r in relations]
    algebra = PresentedAlgebra(context, parsed)
    gradings = data.get("gradings", {})
    _expect(isinstance(gradings, dict), "'gradings' must be an object")
    for name, matrix in gradings.items():
        _expect(
            isinstance(matrix, list)
            and all(isinstance(row, list) for row in matrix)
            and all(isinstance(w, int) for row in matrix for w in row),
            f"grading {name!r} must be a list of integer rows",
        )
        algebra.gradings[name] = attach_grading(algebra, matrix)
    derivations = data.get("derivations", {})
    _expect(isinstance(derivations, dict), "'derivations' must be an object")
    for name, images in derivations.items():
        _expect(isinstance(images, dict), f"derivation {name!r} must map variables to expressions")
    return algebra


def derivation_from_data(images: dict, algebra: PresentedAlgebra) -> Derivation:
    """Build (and certify) a derivation from a name -> expression map."""
    _expect(
        isinstance(images, dict)
        and all(isinstance(k, str) and isinstance(v, str) for k, v in images.items()),
        "derivation images must map variable names to expression strings",
    )
    parsed = {
        name: parse_expression(expr, algebra.context) for name, expr in images.items()
    }
    return new_derivation(algebra, parsed)


def read_json(path) -> dict:
    """Read a JSON file, converting decode errors to located ParseErrors."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def load_algebra(path) -> PresentedAlgebra:
    """Load an algebra description file."""
    return algebra_from_data(read_json(path))


def load_derivation(path, algebra: PresentedAlgebra | None = None,
                    name: str | None = None) -> Derivation:
    """Load a derivation, either standalone ('images' + algebra reference)
    or embedded under 'derivations' in an algebra file."""
    data = read_json(path)
    _expect(isinstance(data, dict), "top level must be a JSON object")
    if "images" in data:
        unknown = set(data) - _DERIVATION_KEYS
        _expect(not unknown, f"unknown keys {sorted(unknown)}")
        if algebra is None:
            _expect(
                isinstance(data.get("algebra"), str),
                "standalone derivation files need an 'algebra' path",
            )
            algebra = load_algebra(Path(path).parent / data["algebra"])
        return derivation_from_data(data["images"], algebra)
    if "derivations" in data:
        if algebra is None:
            algebra = algebra_from_data(data)
        table = data["derivations"]
        _expect(isinstance(table, dict) and table, "no derivations in file")
        if name is None:
            _expect(len(table) == 1, "several derivations present; pick one by name")
            name = next(iter(table))
        _expect(name in table, f"no derivation named {name!r}")
        return derivation_from_data(table[name], algebra)
    raise SchemaError("file contains neither 'images' nor 'derivations'")


def algebra_to_data(algebra: PresentedAlgebra, derivations: dict | None = None) -> dict:
    """Serialize an algebra (with its gradings and optional derivations)."""
    data = {
        "field": algebra.field.text,
        "variables": list(algebra.variables),
        "relations": [r.text() for r in algebra.relations],
    }
    if algebra.gradings:
        data["gradings"] = {
            name: [list(row) for row in grading.matrix]
            for name, grading in algebra.gradings.items()
        }
    if derivations:
        data["derivations"] = {
            name: {v: d.images[v].rep.text() for v in d.algebra.variables}
            for name, d in derivations.items()
        }
    return data


def derivation_to_data(derivation: Derivation, algebra_ref: str | None = None) -> dict:
    data = {
        "images": {
            name: derivation.images[name].rep.text()
            for name in derivation.algebra.variables
        }
    }
    if algebra_ref is not None:
        data = {"algebra": algebra_ref, **data}
    return data


def dump_canonical(data) -> str:
    """Byte-stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_json(path, data):
    Path(path).write_text(dump_canonical(data), encoding="utf-8", newline="\n")


def algebra_from_strings(field, variables, relations) -> PresentedAlgebra:
    """Convenience constructor: relations given in canonical text form."""
    context = Context(field, tuple(variables))
    return PresentedAlgebra(context, [parse_expression(r, context) for r in relations])
