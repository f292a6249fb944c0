"""Recursive-descent parsers for the ASCII QBF and MALL grammars.

QBF::

    F | T | x | ~x | (p /\\ q) | (p \\/ q) | forall x. p | exists x. p

``/\\`` binds tighter than ``\\/``; a quantifier body extends as far right
as possible.

MALL::

    bot | 1 | 0 | top | x | ~x | (A # B) | (A * B) | (A + B) | (A & B)
    A -o B      (~A # B)
    A ->+ B     (~A + B)

Without parentheses the binary operators bind, loosest first:
``-o``/``->+`` (right associative), ``#``, ``+``, ``&``, ``*``; the others
associate to the left.  Printers always parenthesize, so printed text
reparses to the same tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from mallph.mall import syntax as m
from mallph.qbf import syntax as q


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.message = message
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


_QBF_TOKENS = re.compile(
    r"\s*(?:(?P<op>/\\|\\/|[()~.])|(?P<ident>[A-Za-z_][A-Za-z0-9_']*))"
)
_MALL_TOKENS = re.compile(
    r"\s*(?:(?P<op>->\+|-o(?![A-Za-z0-9_'])|[()~#*+&])|(?P<num>[01])(?![A-Za-z0-9_'])"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*))"
)

QBF_KEYWORDS = {"F", "T", "forall", "exists"}
MALL_KEYWORDS = {"bot", "top"}


def _tokenize(text: str, pattern: re.Pattern) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        match = pattern.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), start))
        pos = match.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, tokens: list[Token]):
        self.text = text
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek
        what = "end of input" if tok.kind == "eof" else repr(tok.value)
        raise ParseError(f"{message}, found {what}", self.text, tok.pos)

    def expect(self, value: str) -> Token:
        if self.peek.value != value or self.peek.kind == "eof":
            self.error(f"expected {value!r}")
        return self.next()

    def at(self, *values: str) -> bool:
        return self.peek.kind == "op" and self.peek.value in values

    def finish(self):
        if self.peek.kind != "eof":
            self.error("trailing input")


class _QbfParser(_Parser):
    def formula(self) -> q.Qbf:
        tok = self.peek
        if tok.kind == "ident" and tok.value in ("forall", "exists"):
            self.next()
            var = self.next()
            if var.kind != "ident" or var.value in QBF_KEYWORDS:
                self.error("expected a variable", var)
            self._check_var(var)
            self.expect(".")
            body = self.formula()
            quant = q.Forall if tok.value == "forall" else q.Exists
            return quant(var.value, body)
        return self.disjunction()

    def disjunction(self) -> q.Qbf:
        left = self.conjunction()
        while self.at("\\/"):
            self.next()
            left = q.Or(left, self.conjunction())
        return left

    def conjunction(self) -> q.Qbf:
        left = self.unary()
        while self.at("/\\"):
            self.next()
            left = q.And(left, self.unary())
        return left

    def unary(self) -> q.Qbf:
        tok = self.peek
        if tok.kind == "ident":
            if tok.value in ("forall", "exists"):
                return self.formula()
            self.next()
            if tok.value == "F":
                return q.FALSE
            if tok.value == "T":
                return q.TRUE
            self._check_var(tok)
            return q.Var(tok.value)
        if self.at("~"):
            self.next()
            var = self.next()
            if var.kind != "ident" or var.value in QBF_KEYWORDS:
                self.error("negation applies only to variables", var)
            self._check_var(var)
            return q.NegVar(var.value)
        if self.at("("):
            self.next()
            inner = self.formula()
            self.expect(")")
            return inner
        self.error("expected a formula")

    def _check_var(self, tok: Token):
        if tok.value.startswith("_"):
            self.error("names starting with '_' are reserved", tok)


_MALL_LEVELS = [("#", m.Par), ("+", m.Plus), ("&", m.With), ("*", m.Tensor)]


class _MallParser(_Parser):
    def formula(self) -> m.Formula:
        left = self.level(0)
        if self.at("-o", "->+"):
            op = self.next().value
            right = self.formula()
            return m.limp(left, right) if op == "-o" else m.plimp(left, right)
        return left

    def level(self, i: int) -> m.Formula:
        if i == len(_MALL_LEVELS):
            return self.unary()
        symbol, cls = _MALL_LEVELS[i]
        left = self.level(i + 1)
        while self.at(symbol):
            self.next()
            left = cls(left, self.level(i + 1))
        return left

    def unary(self) -> m.Formula:
        tok = self.peek
        if tok.kind == "num":
            self.next()
            return m.ONE if tok.value == "1" else m.ZERO
        if tok.kind == "ident":
            self.next()
            if tok.value == "bot":
                return m.BOT
            if tok.value == "top":
                return m.TOP
            return m.Var(tok.value)
        if self.at("~"):
            self.next()
            var = self.next()
            if var.kind != "ident" or var.value in MALL_KEYWORDS:
                self.error("negation applies only to variables", var)
            return m.NegVar(var.value)
        if self.at("("):
            self.next()
            inner = self.formula()
            self.expect(")")
            return inner
        self.error("expected a formula")


def parse_qbf(text: str) -> q.Qbf:
    parser = _QbfParser(text, _tokenize(text, _QBF_TOKENS))
    phi = parser.formula()
    parser.finish()
    return phi


def parse_mall(text: str) -> m.Formula:
    parser = _MallParser(text, _tokenize(text, _MALL_TOKENS))
    a = parser.formula()
    parser.finish()
    return a


def parse_cedent(text: str) -> list[m.Formula]:
    """Comma-separated MALL formulas; the empty string is the empty cedent."""
    if not text.strip():
        return []
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    out = []
    for offset, part in parts:
        try:
            out.append(parse_mall(part))
        except ParseError as exc:
            raise ParseError(exc.message, text, offset + exc.pos) from None
    return out
