"""Tokenizer and recursive-descent parser shared by polynomials and operators.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := base ('^' nat)?
    base   := nat | var | '(' expr ')' | 'D[' nat (',' nat)* ']' | call
    call   := ('twist' | 'compose') '(' expr (',' expr)* ')'

Juxtaposition is multiplication, allowed only when a number, variable, ``)``
or ``]`` is followed by a variable, ``(`` or ``D[``. ``D[...]`` atoms and
calls are only recognized when the caller asks for them.

The parser returns a tiny tuple AST; evaluation lives with the value types.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^(),\[\]]))"
)

CALLS = ("twist", "compose")


@dataclass
class Token:
    kind: str  # num | ident | op | end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", n))
    return tokens


class Parser:
    def __init__(self, text: str, operators: bool = False):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.operators = operators

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def _advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _expect(self, text: str) -> Token:
        t = self.tok
        if t.kind != "op" or t.text != text:
            shown = t.text or "end of input"
            raise ParseError(f"expected {text!r}, found {shown!r}", t.pos)
        return self._advance()

    def _is_op(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def parse(self):
        if self.tok.kind == "end":
            raise ParseError("empty expression", 0)
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self):
        # flat ("sum", ((sign, term), ...)) so long sums need no deep recursion
        sign = 1
        if self._is_op("-") or self._is_op("+"):
            sign = -1 if self._advance().text == "-" else 1
        parts = [(sign, self.term())]
        while self._is_op("+") or self._is_op("-"):
            sign = 1 if self._advance().text == "+" else -1
            parts.append((sign, self.term()))
        if len(parts) == 1 and parts[0][0] == 1:
            return parts[0][1]
        return ("sum", tuple(parts))

    def _starts_juxtaposed(self) -> bool:
        t = self.tok
        return t.kind == "ident" or (t.kind == "op" and t.text == "(")

    def term(self):
        node = self.factor()
        while True:
            if self._is_op("*"):
                self._advance()
                node = ("mul", node, self.factor())
            elif self._starts_juxtaposed():
                node = ("mul", node, self.factor())
            else:
                return node

    def factor(self):
        node = self.base()
        if self._is_op("^"):
            self._advance()
            t = self.tok
            if t.kind != "num":
                raise ParseError("exponent must be a non-negative integer", t.pos)
            self._advance()
            node = ("pow", node, int(t.text))
            if self._is_op("^"):
                raise ParseError("chained exponents need parentheses", self.tok.pos)
        return node

    def base(self):
        t = self.tok
        if t.kind == "num":
            self._advance()
            return ("num", int(t.text))
        if t.kind == "ident":
            nxt = self._peek()
            if self.operators and t.text == "D" and nxt.kind == "op" and nxt.text == "[":
                return self._d_atom()
            if self.operators and t.text in CALLS and nxt.kind == "op" and nxt.text == "(":
                return self._call()
            self._advance()
            return ("var", t.text, t.pos)
        if t.kind == "op" and t.text == "(":
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        shown = t.text or "end of input"
        raise ParseError(f"unexpected {shown!r}", t.pos)

    def _d_atom(self):
        start = self._advance().pos
        self._expect("[")
        orders = []
        while True:
            t = self.tok
            if t.kind != "num":
                raise ParseError("expected a non-negative integer inside D[...]", t.pos)
            orders.append(int(self._advance().text))
            if self._is_op(","):
                self._advance()
                continue
            self._expect("]")
            return ("D", tuple(orders), start)

    def _call(self):
        name_tok = self._advance()
        self._expect("(")
        args = [self.expr()]
        while self._is_op(","):
            self._advance()
            args.append(self.expr())
        self._expect(")")
        return ("call", name_tok.text, args, name_tok.pos)


def parse_ast(text: str, operators: bool = False):
    return Parser(text, operators=operators).parse()
