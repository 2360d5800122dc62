"""Recursive-descent parser for polynomial literals such as ``"x0*x1 - 1"``.

Grammar (``^`` and ``**`` both mean power)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom (('^'|'**') INT)?
    atom   := INT | NAME | '(' expr ')'
"""

from __future__ import annotations

import re

from .poly import Polynomial, PolyRing


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        self.column = column
        self.text = text
        super().__init__(f"{message} at column {column + 1} in {text!r}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError(f"unexpected character {text[col]!r}", text, col)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(msg, self.text, tok[2])

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[:2] in (("op", "^"), ("op", "**")):
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.error("expected integer exponent")
            self.take()
            return base ** tok[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, col = tok
        if kind == "int":
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring.index:
                raise PolynomialSyntaxError(f"undeclared variable {val!r}", self.text, col)
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return inner
        if (kind, val) == ("op", "-"):
            return -self.factor()
        self.error("unexpected token" if kind != "end" else "unexpected end of input", tok)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        p.error("empty polynomial literal")
    result = p.expr()
    if p.peek()[0] != "end":
        p.error("unexpected trailing input")
    return result
