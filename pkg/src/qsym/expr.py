"""A small expression language for scalars, monomials and cochains.

Grammar (LL(1); `^dx` is lexed as one token so the exponent caret never clashes
with the wedge marker):

    cochain := sign? term (("+" | "-") term)*
    term    := factor ("*" factor)* ("#" group)? ("^dx" "(" indices? ")")?
    factor  := NUMBER ("/" NUMBER)? | "zeta" power? | QVAR power? | XVAR power? | "(" scalar ")"
    scalar  := sign? product (("+" | "-") product)*
    product := atom ("*" atom)*            atoms are factors other than XVAR
    power   := "^" "-"? NUMBER
    group   := "g" "(" NUMBER ("," NUMBER)* ")"
    indices := NUMBER ("," NUMBER)*

Indices are 1-based.  QVAR is q<i><j> (one digit each) or q<i>_<j>.  Factors
are multiplied left to right, so x2*x1 means q21 x1 x2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (GroupSpec, accumulate, ext_reorder, format_monomial, multiply_monomials, unit)
from .brackets import KoszulCochain, format_dx
from .group_extension import SkewKoszulCochain, format_group
from .scalars import CyclotomicField, CycNumber, QContext, Scalar


class ParseError(ValueError):
    """A syntax or semantic error, with the 0-based column where it was detected."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at column {position + 1}" + (f" in {text!r}" if text else ""))


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<wedge>\^\s*dx)
  | (?P<number>\d+)
  | (?P<zeta>zeta)
  | (?P<qvar>q(?:\d+_\d+|\d\d))
  | (?P<xvar>x\d+)
  | (?P<group>g)
  | (?P<op>[-+*/^#(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(m.group() if kind == "op" else kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list; `ctx` None means q variables are not allowed."""

    def __init__(self, text: str, field: CyclotomicField, ctx: QContext | None = None,
                 group: GroupSpec | None = None):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.field = field
        self.ctx = ctx
        self.group = group

    # token helpers
    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.current
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"expected {what or kind!r}, found {found!r}", tok.pos, self.text)
        return self.advance()

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.current
        return ParseError(message, tok.pos, self.text)

    # scalars
    def lift(self, value: CycNumber):
        return value if self.ctx is None else Scalar(self.ctx, {self.ctx.zero_exp: value} if value else {})

    def one(self):
        return self.lift(self.field.one())

    def power(self, allow_negative: bool) -> int:
        if self.current.kind != "^":
            return 1
        self.advance()
        negative = False
        if self.current.kind == "-":
            if not allow_negative:
                raise self.error("negative exponent not allowed here")
            self.advance()
            negative = True
        value = int(self.expect("number", "exponent").text)
        return -value if negative else value

    def q_indices(self, tok: Token) -> tuple[int, int]:
        body = tok.text[1:]
        i, j = body.split("_") if "_" in body else (body[0], body[1])
        i, j = int(i) - 1, int(j) - 1
        n = self.ctx.n
        if not (0 <= i < n and 0 <= j < n):
            raise self.error(f"q index out of range in {tok.text}", tok)
        return i, j

    def atom(self):
        """One scalar factor; returns None if the current token does not start one."""
        tok = self.current
        if tok.kind == "number":
            self.advance()
            value = Fraction(int(tok.text))
            if self.current.kind == "/":
                self.advance()
                den = self.expect("number", "denominator")
                if int(den.text) == 0:
                    raise self.error("division by zero", den)
                value /= int(den.text)
            return self.lift(self.field.element(value))
        if tok.kind == "zeta":
            self.advance()
            return self.lift(self.field.zeta(self.power(True)))
        if tok.kind == "qvar":
            self.advance()
            if self.ctx is None:
                raise self.error(f"unknown q variable {tok.text}", tok)
            i, j = self.q_indices(tok)
            e = self.power(True)
            if i == j:
                return self.one()
            return self.ctx.q(i, j) ** e
        if tok.kind == "(":
            self.advance()
            value = self.scalar()
            self.expect(")", ")")
            return value
        return None

    def product(self):
        value = self.atom()
        if value is None:
            raise self.error(f"expected a scalar, found {self.current.text or 'end of input'!r}")
        while self.current.kind == "*":
            self.advance()
            factor = self.atom()
            if factor is None:
                raise self.error(f"expected a scalar, found {self.current.text or 'end of input'!r}")
            value = value * factor
        return value

    def scalar(self):
        negative = False
        if self.current.kind in ("+", "-"):
            negative = self.advance().kind == "-"
        value = self.product()
        if negative:
            value = -value
        while self.current.kind in ("+", "-"):
            op = self.advance().kind
            term = self.product()
            value = value + term if op == "+" else value - term
        return value

    # cochains
    def term(self):
        ctx = self.ctx
        n = ctx.n
        coeff = ctx.one
        mono = (0,) * n
        started = False
        while True:
            tok = self.current
            if tok.kind == "xvar":
                self.advance()
                i = int(tok.text[1:]) - 1
                if not 0 <= i < n:
                    raise self.error(f"variable {tok.text} out of range 1..{n}", tok)
                e = self.power(False)
                for _ in range(e):
                    twist, mono = multiply_monomials(ctx, mono, unit(n, i))
                    coeff = coeff * twist
            else:
                factor = self.atom()
                if factor is None:
                    what = "a factor" if started else "a term"
                    raise self.error(f"expected {what}, found {tok.text or 'end of input'!r}")
                coeff = coeff * factor
            started = True
            if self.current.kind != "*":
                break
            self.advance()
        g = self.group.identity if self.group is not None else None
        if self.current.kind == "#":
            hash_tok = self.advance()
            if self.group is None:
                raise self.error("group part given but no group is configured", hash_tok)
            g = self.group_element()
        wedge: tuple = ()
        if self.current.kind == "wedge":
            wedge_tok = self.advance()
            self.expect("(", "(")
            indices = []
            if self.current.kind != ")":
                indices.append(self.index_value(n))
                while self.current.kind == ",":
                    self.advance()
                    indices.append(self.index_value(n))
            self.expect(")", ")")
            reordered = ext_reorder(ctx, indices)
            if reordered is None:
                raise self.error("repeated index in dx(...)", wedge_tok)
            sign_q, wedge = reordered
            coeff = coeff * sign_q
        return coeff, mono, g, wedge

    def index_value(self, n: int) -> int:
        tok = self.expect("number", "index")
        i = int(tok.text) - 1
        if not 0 <= i < n:
            raise self.error(f"index {tok.text} out of range 1..{n}", tok)
        return i

    def group_element(self) -> tuple:
        self.expect("group", "g")
        self.expect("(", "(")
        values = []
        start = self.current
        values.append(int(self.expect("number", "group exponent").text))
        while self.current.kind == ",":
            self.advance()
            values.append(int(self.expect("number", "group exponent").text))
        self.expect(")", ")")
        orders = self.group.orders
        if len(values) != len(orders):
            raise self.error(f"group element needs {len(orders)} entries", start)
        for v, order in zip(values, orders):
            if not 0 <= v < order:
                raise self.error(f"group exponent {v} outside 0..{order - 1}", start)
        return tuple(values)

    def cochain(self) -> list:
        terms = []
        negative = False
        if self.current.kind in ("+", "-"):
            negative = self.advance().kind == "-"
        while True:
            start = self.current
            coeff, mono, g, wedge = self.term()
            terms.append((-coeff if negative else coeff, mono, g, wedge, start))
            if self.current.kind not in ("+", "-"):
                break
            negative = self.advance().kind == "-"
        self.expect("end", "end of input")
        return terms


def parse_field_value(text: str, field: CyclotomicField) -> CycNumber:
    """A cyclotomic number such as "-1", "zeta^2" or "1/2 - zeta"; q variables are rejected."""
    parser = _Parser(text, field)
    value = parser.scalar()
    parser.expect("end", "end of input")
    return value


def parse_scalar(text: str, ctx: QContext) -> Scalar:
    parser = _Parser(text, ctx.field, ctx)
    value = parser.scalar()
    parser.expect("end", "end of input")
    return value


def parse_monomial(text: str, ctx: QContext) -> tuple[Scalar, tuple]:
    """A monomial such as "x1^2*x2", returned as (twisting coefficient, exponent tuple)."""
    parser = _Parser(text, ctx.field, ctx)
    negative = parser.current.kind == "-"
    if negative:
        parser.advance()
    coeff, mono, _, wedge = parser.term()
    if negative:
        coeff = -coeff
    if wedge:
        raise parser.error("a monomial cannot carry dx(...)")
    parser.expect("end", "end of input")
    return coeff, mono


def parse_cocycle(text: str, ctx: QContext, group: GroupSpec | None = None):
    """Parse a cochain; with a group configured the result is a SkewKoszulCochain."""
    parser = _Parser(text, ctx.field, ctx, group)
    terms = parser.cochain()
    degree = len(terms[0][3])
    collected: dict = {}
    for coeff, mono, g, wedge, tok in terms:
        if len(wedge) != degree:
            raise ParseError("all terms must have the same number of dx indices", tok.pos, text)
        key = (mono, wedge) if group is None else (mono, g, wedge)
        accumulate(collected, key, coeff)
    if group is None:
        return KoszulCochain(ctx, collected, degree)
    return SkewKoszulCochain(ctx, collected, degree)


# ---------------------------------------------------------------------------
# printing

def format_coefficient(c: Scalar) -> str:
    """Scalar text that can stand as a factor: parenthesized when it is a sum."""
    text = str(c)
    return f"({text})" if (" + " in text or " - " in text) else text


def format_term(coeff: Scalar, mono, g=None, wedge=()) -> tuple[str, str]:
    """(sign, body) for one cochain term."""
    sign = "+"
    text = format_coefficient(coeff)
    if text.startswith("-"):
        sign, text = "-", text[1:]
    mono_text = format_monomial(mono)
    if text == "1":
        body = mono_text
    elif mono_text == "1":
        body = text
    else:
        body = f"{text}*{mono_text}"
    if g is not None:
        body += f" # {format_group(g)}"
    return sign, f"{body} ^ {format_dx(wedge)}"


def format_cochain(x) -> str:
    """Canonical text of a (skew) Koszul cochain, readable back by parse_cocycle."""
    pieces = []
    for key, c in x.sorted_items():
        if isinstance(x, SkewKoszulCochain):
            mono, g, wedge = key
        else:
            (mono, wedge), g = key, None
        pieces.append(format_term(c, mono, g, wedge))
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
