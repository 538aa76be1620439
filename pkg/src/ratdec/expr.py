"""Text grammar for rational expressions over Gaussian rationals.

Two grammars share one recursive-descent core:

  ratdec-expr v1   expr := term (('+'|'-') term)*
                   term := factor (('*'|'/') factor | factor)*   (juxtaposition multiplies)
                   factor := '-' factor | atom ('^' uint)?
                   atom := 'x' | uint | 'i' | '(' expr ')'
                   Coefficients are exact rationals; no floating literals.

  ratdec-mero v1   same, plus the base-function atoms exp, sin, cos, tan.
                   Exactly one base may appear; a bare rational expression
                   in x denotes the identity base.

'/' binds like '*' and is left-associative, so nested fractions need
parentheses.  Whitespace is insignificant.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational, GR_ONE
from .ratfun import RatFun, from_scalar, X

EXPR_GRAMMAR_VERSION = "ratdec-expr v1"
MERO_GRAMMAR_VERSION = "ratdec-mero v1"

_BASE_NAMES = ("exp", "sin", "cos", "tan")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.message = message
        self.position = min(position, len(text))
        before = text[: self.position]
        self.line = before.count("\n") + 1
        self.column = self.position - (before.rfind("\n") + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.column}")


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str, allow_bases: bool):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word == "x":
                tokens.append(_Token("x", word, i))
            elif word == "i":
                tokens.append(_Token("i", word, i))
            elif word in _BASE_NAMES:
                if not allow_bases:
                    raise ParseError(f"unexpected function name '{word}'", text, i)
                tokens.append(_Token("base", word, i))
            else:
                raise ParseError(f"unknown name '{word}'", text, i)
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", text, i)
    tokens.append(_Token("end", None, n))
    return tokens


_ATOM_STARTS = {"int", "x", "i", "base", "("}


class _Parser:
    def __init__(self, text: str, allow_bases: bool):
        self.text = text
        self.tokens = _tokenize(text, allow_bases)
        self.pos = 0
        self.bases_seen = set()
        self.identity_seen = False

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected '{kind}'", self.text, tok.pos)
        return self.advance()

    def parse(self) -> RatFun:
        value = self.parse_expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError("trailing input", self.text, tok.pos)
        return value

    def parse_expr(self) -> RatFun:
        value = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.parse_term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def parse_term(self) -> RatFun:
        value = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind in ("*", "/"):
                self.advance()
                rhs = self.parse_factor()
                if tok.kind == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", self.text, tok.pos)
                    value = value / rhs
            elif tok.kind in _ATOM_STARTS:
                value = value * self.parse_factor()
            else:
                return value

    def parse_factor(self) -> RatFun:
        tok = self.peek()
        if tok.kind == "-":
            self.advance()
            return -self.parse_factor()
        value = self.parse_atom()
        if self.peek().kind == "^":
            self.advance()
            exp = self.expect("int")
            value = value ** exp.value
        return value

    def parse_atom(self) -> RatFun:
        tok = self.advance()
        if tok.kind == "int":
            return from_scalar(tok.value)
        if tok.kind == "x":
            self.identity_seen = True
            return X
        if tok.kind == "i":
            return from_scalar(GaussianRational(0, 1))
        if tok.kind == "base":
            self.bases_seen.add(tok.value)
            return X
        if tok.kind == "(":
            value = self.parse_expr()
            self.expect(")")
            return value
        raise ParseError("expected a value", self.text, tok.pos)


def parse_ratfun(text: str) -> RatFun:
    """Parse ratdec-expr v1 text into a reduced rational function."""
    return _Parser(text, allow_bases=False).parse()


def parse_mero(text: str):
    """Parse ratdec-mero v1 text into (base name, outer rational map).

    The base is one of identity/exp/sin/cos/tan; 'x' denotes identity and
    may not be mixed with a transcendental base inside one expression.
    """
    parser = _Parser(text, allow_bases=True)
    outer = parser.parse()
    if len(parser.bases_seen) > 1:
        raise ParseError(
            f"mixed base functions {sorted(parser.bases_seen)}", text, 0
        )
    if parser.bases_seen:
        if parser.identity_seen:
            raise ParseError("cannot mix 'x' with a base function", text, 0)
        base = next(iter(parser.bases_seen))
    else:
        base = "identity"
    return base, outer


# ---------------------------------------------------------------------------
# canonical formatting
# ---------------------------------------------------------------------------


def _frac_text(f: Fraction) -> str:
    return str(f)


def format_scalar(g: GaussianRational) -> str:
    """Canonical scalar text; parses back to the same value."""
    if not g.im:
        return _frac_text(g.re)
    if not g.re:
        if g.im == 1:
            return "i"
        if g.im == -1:
            return "-i"
        return f"{_frac_text(g.im)}i"
    im = g.im
    op = " + " if im > 0 else " - "
    mag = im if im > 0 else -im
    imtext = "i" if mag == 1 else f"{_frac_text(mag)}i"
    return f"{_frac_text(g.re)}{op}{imtext}"


def _coefficient_factor(c: GaussianRational) -> str:
    """Render a coefficient for use in front of a power of x."""
    if not c.im:
        return _frac_text(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_frac_text(c.im)}i"
    return f"({format_scalar(c)})"


def _is_negative(c: GaussianRational) -> bool:
    if c.re:
        return c.re < 0
    return c.im < 0


def format_poly(p) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c.is_zero():
            continue
        negative = _is_negative(c)
        mag = -c if negative else c
        if k == 0:
            # mixed constants need parens so a following " - " cannot
            # redistribute over their imaginary part
            body = f"({format_scalar(mag)})" if (mag.im and mag.re) else format_scalar(mag)
        else:
            xpow = "x" if k == 1 else f"x^{k}"
            if mag.is_one():
                body = xpow
            else:
                body = f"{_coefficient_factor(mag)}*{xpow}"
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts)


def format_ratfun(f: RatFun) -> str:
    if f.denom == (GR_ONE,):
        return format_poly(f.numer)
    return f"({format_poly(f.numer)})/({format_poly(f.denom)})"


def format_mero(base: str, outer: RatFun) -> str:
    text = format_ratfun(outer)
    if base == "identity":
        return text
    return text.replace("x", base)
