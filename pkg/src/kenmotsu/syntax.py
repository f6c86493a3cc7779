"""Tokenizer and expression grammar shared by the algebra and the manifold DSL.

Expression grammar::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := INT ['/' INT]
             | NAME ['^' INT]
             | 'exp' '(' expr ')'        # argument must be linear, no constant
             | '(' expr ')' ['^' INT]

The identifier ``d`` is reserved: inside a vector-field line it closes a
coefficient (``x*exp(1*v) d x``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ONE, ZERO, CoeffExpr, const, symbol

RESERVED = frozenset({"d", "exp"})

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|[-+*/^()=;,]))")


class DSLError(ValueError):
    """Base class for every positioned input error."""

    def __init__(self, message: str, line: int = 1, column: int = 1) -> None:
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class ParseError(DSLError):
    def __init__(self, line: int, column: int, expected: str, found: str = "") -> None:
        self.expected = expected
        msg = f"expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg, line, column)


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op', 'eof'
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column_offset: int = 0) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(line, pos + 1 + column_offset, "a token", text[pos])
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), line, start + 1 + column_offset))
        pos = m.end()
    tokens.append(Token("eof", "", line, len(text) + 1 + column_offset))
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek
        return tok.kind in ("op", "name") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.next()
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.peek.kind != kind:
            self.fail(what)
        return self.next()

    def expect_name(self, what: str = "a name") -> Token:
        tok = self.expect_kind("name", what)
        if tok.text in RESERVED:
            raise ParseError(tok.line, tok.column, what, tok.text)
        return tok

    def expect_end(self) -> None:
        if self.peek.kind != "eof":
            self.fail("end of line")

    def fail(self, expected: str):
        tok = self.peek
        raise ParseError(tok.line, tok.column, expected, tok.text or "end of line")


def starts_factor(ts: TokenStream) -> bool:
    tok = ts.peek
    if tok.kind == "int":
        return True
    if tok.kind == "name":
        return tok.text != "d"
    return tok.kind == "op" and tok.text == "("


def parse_expr(ts: TokenStream, names: frozenset[str] | None = None,
               on_unknown=None) -> CoeffExpr:
    """Parse an expression; ``names`` restricts the allowed symbols."""
    sign = 1
    if ts.at("+") or ts.at("-"):
        sign = -1 if ts.next().text == "-" else 1
    result = parse_term(ts, names, on_unknown) * sign
    while (ts.at("+") or ts.at("-")) and _term_follows(ts):
        sign = -1 if ts.next().text == "-" else 1
        result = result + parse_term(ts, names, on_unknown) * sign
    return result


def _term_follows(ts: TokenStream) -> bool:
    nxt = ts.tokens[ts.pos + 1] if ts.pos + 1 < len(ts.tokens) else ts.peek
    if nxt.kind == "int":
        return True
    if nxt.kind == "name":
        return nxt.text != "d"
    return nxt.kind == "op" and nxt.text == "("


def parse_term(ts: TokenStream, names, on_unknown) -> CoeffExpr:
    result = parse_factor(ts, names, on_unknown)
    while ts.accept("*"):
        result = result * parse_factor(ts, names, on_unknown)
    return result


def _power(ts: TokenStream) -> int:
    if ts.accept("^"):
        return int(ts.expect_kind("int", "an integer exponent").text)
    return 1


def parse_rational(ts: TokenStream) -> Fraction:
    num = int(ts.expect_kind("int", "an integer").text)
    if ts.accept("/"):
        tok = ts.expect_kind("int", "a denominator")
        den = int(tok.text)
        if den == 0:
            raise ParseError(tok.line, tok.column, "a nonzero denominator", tok.text)
        return Fraction(num, den)
    return Fraction(num)


def parse_factor(ts: TokenStream, names, on_unknown) -> CoeffExpr:
    tok = ts.peek
    if tok.kind == "int":
        return const(parse_rational(ts))
    if tok.kind == "op" and tok.text == "(":
        ts.next()
        inner = parse_expr(ts, names, on_unknown)
        ts.expect(")")
        return inner ** _power(ts)
    if tok.kind == "name" and tok.text == "exp":
        ts.next()
        ts.expect("(")
        arg_tok = ts.peek
        arg = parse_expr(ts, names, on_unknown)
        ts.expect(")")
        weights: dict[str, Fraction] = {}
        for (powers, w), c in arg.items():
            if w or len(powers) != 1 or powers[0][1] != 1:
                raise ParseError(arg_tok.line, arg_tok.column,
                                 "a linear exponent such as -1*v", str(arg))
            weights[powers[0][0]] = c
        return CoeffExpr.exp_of(weights)
    if tok.kind == "name" and tok.text != "d":
        ts.next()
        if names is not None and tok.text not in names:
            if on_unknown is not None:
                on_unknown(tok)
            else:
                raise ParseError(tok.line, tok.column, "a declared symbol", tok.text)
        return symbol(tok.text) ** _power(ts)
    ts.fail("a number, symbol, exp(...) or '('")


def parse_expression(text: str) -> CoeffExpr:
    ts = TokenStream(tokenize(text))
    if ts.peek.kind == "eof":
        ts.fail("an expression")
    result = parse_expr(ts)
    ts.expect_end()
    return result


__all__ = [
    "DSLError",
    "ParseError",
    "Token",
    "TokenStream",
    "parse_expr",
    "parse_expression",
    "parse_rational",
    "starts_factor",
    "tokenize",
    "ONE",
    "ZERO",
]
