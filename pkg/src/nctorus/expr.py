"""Parsing and canonical rendering of torus algebra elements.

Grammar (whitespace between tokens is ignored)::

    expr    := ('-' | '+')? term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' signed-int)?
    atom    := rational | 'i' | 'q' '[' int ',' int ']' | 'U' int
             | 'adj' '(' expr ')' | '(' expr ')'
    rational := digits ('/' digits)?

``adj`` is the star operation.  ``q[a,b]`` with a > b denotes the inverse
of the stored symbol q[b,a].  Rendering emits the canonical normal form
with terms sorted lexicographically by monomial exponent (then by phase
exponent), and ``parse_element(alg, render_element(x)) == x`` holds
exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import AlgebraElement, TorusAlgebra
from .errors import ParseError
from .scalars import GaussianRational

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<ugen>U\d+)
  | (?P<name>[A-Za-z]+)
  | (?P<sym>[()\[\],+\-*^])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return "_Token(%r, %r)" % (self.kind, self.text)


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, algebra: TorusAlgebra, text: str):
        self.algebra = algebra
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text):
        tok = self.peek()
        if tok.kind == "sym" and tok.text == text:
            return self.advance()
        self.fail("expected %r" % text)

    def parse(self) -> AlgebraElement:
        value = self.expr()
        if self.peek().kind != "end":
            self.fail("unexpected trailing input")
        return value

    def expr(self) -> AlgebraElement:
        tok = self.peek()
        negate = False
        if tok.kind == "sym" and tok.text in "+-":
            self.advance()
            negate = tok.text == "-"
        value = self.term()
        if negate:
            value = -value
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text in "+-":
                self.advance()
                if self.peek().kind == "end":
                    self.fail("dangling operator %r" % tok.text)
                rhs = self.term()
                value = value + rhs if tok.text == "+" else value - rhs
            else:
                return value

    def term(self) -> AlgebraElement:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text == "*":
                self.advance()
                value = value * self.factor()
            else:
                return value

    def factor(self) -> AlgebraElement:
        value = self.atom()
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "^":
            self.advance()
            value = value ** self.signed_int()
        return value

    def signed_int(self) -> int:
        sign = 1
        tok = self.peek()
        if tok.kind == "sym" and tok.text in "+-":
            self.advance()
            sign = -1 if tok.text == "-" else 1
        tok = self.peek()
        if tok.kind != "number" or "/" in tok.text:
            self.fail("expected an integer exponent")
        self.advance()
        return sign * int(tok.text)

    def integer(self) -> int:
        tok = self.peek()
        if tok.kind != "number" or "/" in tok.text:
            self.fail("expected an integer")
        self.advance()
        return int(tok.text)

    def atom(self) -> AlgebraElement:
        alg = self.algebra
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return alg.scalar(Fraction(tok.text))
        if tok.kind == "ugen":
            self.advance()
            j = int(tok.text[1:])
            if not 1 <= j <= alg.n:
                raise ParseError(
                    "generator index %d out of range 1..%d" % (j, alg.n),
                    tok.line,
                    tok.col,
                )
            return alg.gen(j)
        if tok.kind == "name":
            if tok.text == "i":
                self.advance()
                return alg.i()
            if tok.text == "q":
                self.advance()
                self.expect("[")
                a = self.integer()
                self.expect(",")
                b = self.integer()
                self.expect("]")
                if a == b or not (1 <= a <= alg.n and 1 <= b <= alg.n):
                    raise ParseError(
                        "bad phase symbol q[%d,%d]" % (a, b), tok.line, tok.col
                    )
                return alg.q(a, b)
            if tok.text == "adj":
                self.advance()
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return inner.star()
            self.fail("unknown name %r" % tok.text)
        if tok.kind == "sym" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.fail("expected an atom")


def parse_element(algebra: TorusAlgebra, text: str) -> AlgebraElement:
    """Parse ``text`` into an element over ``algebra``."""
    return _Parser(algebra, text).parse()


def _abs_coeff_string(mag: Fraction, imaginary: bool) -> str:
    if imaginary:
        return "i" if mag == 1 else "%s*i" % mag
    return str(mag)


def _coeff_parts(coeff: GaussianRational):
    """Split a coefficient into (sign, factor string); empty string means 1."""
    if coeff.im == 0:
        sign = "-" if coeff.re < 0 else "+"
        mag = abs(coeff.re)
        return sign, "" if mag == 1 else str(mag)
    if coeff.re == 0:
        sign = "-" if coeff.im < 0 else "+"
        return sign, _abs_coeff_string(abs(coeff.im), True)
    im_sign = "-" if coeff.im < 0 else "+"
    inner = "%s%s%s" % (coeff.re, im_sign, _abs_coeff_string(abs(coeff.im), True))
    return "+", "(%s)" % inner


def _term_string(coeff: GaussianRational, qkey, uexp):
    factors = []
    for (a, b), e in qkey:
        factors.append("q[%d,%d]" % (a, b) + ("^%d" % e if e != 1 else ""))
    for pos, k in enumerate(uexp):
        if k:
            factors.append("U%d" % (pos + 1) + ("^%d" % k if k != 1 else ""))
    sign, coeff_str = _coeff_parts(coeff)
    if coeff_str:
        factors.insert(0, coeff_str)
    if not factors:
        factors = ["1"]
    return sign, "*".join(factors)


def render_element(x: AlgebraElement) -> str:
    """Render ``x`` in canonical normal form; inverse of ``parse_element``."""
    flat = []
    for uexp, phase in x.terms.items():
        for qkey, coeff in phase.terms.items():
            flat.append((uexp, qkey, coeff))
    if not flat:
        return "0"
    flat.sort(key=lambda item: (item[0], item[1]))
    pieces = []
    for idx, (uexp, qkey, coeff) in enumerate(flat):
        sign, body = _term_string(coeff, qkey, uexp)
        if idx == 0:
            pieces.append(body if sign == "+" else "-" + body)
        else:
            pieces.append("%s %s" % (sign, body))
    return " ".join(pieces)
