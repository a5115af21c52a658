"""Parser and renderer for the textual expression grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'c' | '(' expr ')'
            | ('phi' | 'psi') '[' INT ',' INT ',' INT ';' INT ']'
            | 'lin' '(' expr ';' expr ',' expr ',' expr ',' expr ')'
            | 'exp' '(' expr ')'

Values are scalars, cochains (or weight-mixed series) and automorphisms.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .automorphisms import FormalAutomorphism, LinearAutomorphism, IDENTITY
from .cochains import (DEFAULT_DEPTH, Cochain, Coderivation, ParityError, as_series,
                       key_parity)
from .graded_space import EVEN, ODD
from .scalars import PARAM, RationalFunction, render_scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            out.append(("sym", m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def _is_scalar(x):
    return isinstance(x, (Fraction, RationalFunction))


def _is_cochain(x):
    return isinstance(x, (Cochain, Coderivation))


def _is_aut(x):
    return isinstance(x, (LinearAutomorphism, FormalAutomorphism))


class _Parser:
    def __init__(self, text: str, depth: int):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.depth = depth

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.next()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, found {t[1]!r}", t[2])
        return t

    def expect_int(self):
        t = self.next()
        if t[0] != "int":
            raise ParseError(f"expected an integer, found {t[1]!r}", t[2])
        return t[1]

    def parse(self):
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r}", t[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "sym":
            _, op, pos = self.next()
            w = self.term()
            v = self._add(v, w if op == "+" else self._neg(w, pos), pos)
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] == "sym" and self.peek()[1] in ("*", "/"):
            op = self.next()
            w = self.unary()
            v = self._mul(v, w, op[2]) if op[1] == "*" else self._div(v, w, op[2])
        return v

    def unary(self):
        t = self.peek()
        if t[0] == "sym" and t[1] in ("+", "-"):
            self.next()
            v = self.unary()
            return v if t[1] == "+" else self._neg(v, t[2])
        return self.power()

    def power(self):
        v = self.atom()
        t = self.peek()
        if t[0] == "sym" and t[1] == "^":
            self.next()
            e = self.expect_int()
            if not _is_scalar(v):
                raise ParseError("only scalars can be raised to a power", t[2])
            v = v ** e
        return v

    def atom(self):
        t = self.next()
        kind, val, pos = t
        if kind == "int":
            return Fraction(val)
        if kind == "sym" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "name":
            if val == "c":
                return PARAM
            if val in ("phi", "psi"):
                return self.basis(val, pos)
            if val == "lin":
                return self.linear(pos)
            if val == "exp":
                self.expect("(")
                a = self.expr()
                self.expect(")")
                if _is_scalar(a) and a == 0:
                    return FormalAutomorphism(IDENTITY, [], self.depth)
                if not _is_cochain(a):
                    raise ParseError("exp(...) needs a cochain argument", pos)
                a = as_series(a, self.depth)
                if a.parity == ODD:
                    raise ParseError("exp(...) needs an even cochain (formal automorphisms are even)", pos)
                if a and a.order < 2:
                    raise ParseError("exp(...) generators must have weight >= 2", pos)
                return FormalAutomorphism(IDENTITY, [a], self.depth)
            raise ParseError(f"unknown name {val!r}", pos)
        raise ParseError(f"unexpected {val!r}" if kind != "end" else "unexpected end of input", pos)

    def basis(self, name, pos):
        self.expect("[")
        i1 = self.expect_int()
        self.expect(",")
        i2 = self.expect_int()
        self.expect(",")
        i3 = self.expect_int()
        self.expect(";")
        j = self.expect_int()
        self.expect("]")
        if i1 > 1:
            raise ParseError("the odd generator w1 squares to zero: need i1 in {0,1}", pos)
        if i1 + i2 + i3 == 0:
            raise ParseError("basis cochains need weight >= 1 (the weight-0 part is excluded)", pos)
        if j not in (1, 2, 3):
            raise ParseError("target generator must be 1, 2 or 3", pos)
        k = (i1, i2, i3, j)
        if name == "psi" and key_parity(k) != ODD:
            raise ParseError(f"psi[{i1},{i2},{i3};{j}] is even; psi denotes odd cochains, use phi", pos)
        return Cochain({k: 1})

    def linear(self, pos):
        self.expect("(")
        vals = [self.expr()]
        self.expect(";")
        for n in range(4):
            if n:
                self.expect(",")
            vals.append(self.expr())
        self.expect(")")
        if not all(_is_scalar(v) for v in vals):
            raise ParseError("lin(...) entries must be scalars", pos)
        try:
            return LinearAutomorphism(*vals)
        except ValueError as e:
            raise ParseError(str(e), pos) from None

    # -- typed arithmetic ------------------------------------------------------
    def _neg(self, v, pos):
        if _is_aut(v):
            raise ParseError("cannot negate an automorphism", pos)
        return -v

    def _add(self, a, b, pos):
        if _is_scalar(a) and _is_scalar(b):
            return a + b
        if _is_scalar(a) and a == 0 and _is_cochain(b):
            return b
        if _is_scalar(b) and b == 0 and _is_cochain(a):
            return a
        if _is_cochain(a) and _is_cochain(b):
            pa = as_series(a).parity
            pb = as_series(b).parity
            if None not in (pa, pb) and pa != pb:
                raise ParseError("cannot add cochains of different parity", pos)
            out = a + b
            if isinstance(out, Coderivation) and isinstance(a, Cochain) and isinstance(b, Cochain):
                out = out.with_depth(max(self.depth, max(out.components, default=1)))
            return out
        raise ParseError("operands of + must both be scalars or both be cochains", pos)

    def _mul(self, a, b, pos):
        if _is_scalar(a) and (_is_scalar(b) or _is_cochain(b)):
            return b * a if _is_cochain(b) else a * b
        if _is_cochain(a) and _is_scalar(b):
            return a * b
        if _is_aut(a) and _is_aut(b):
            return compose_automorphisms(a, b, pos)
        raise ParseError("unsupported product (use the bracket command for cochain pairs)", pos)

    def _div(self, a, b, pos):
        if not _is_scalar(b):
            raise ParseError("can only divide by a scalar", pos)
        if b == 0:
            raise ParseError("division by zero", pos)
        if _is_scalar(a) or _is_cochain(a):
            return a / b
        raise ParseError("cannot divide an automorphism", pos)


def compose_automorphisms(a, b, pos=0):
    if isinstance(a, LinearAutomorphism):
        a = FormalAutomorphism(a, [], DEFAULT_DEPTH)
    if isinstance(b, LinearAutomorphism):
        b = FormalAutomorphism(b, [], DEFAULT_DEPTH)
    if b.linear != IDENTITY:
        if a.factors:
            raise ParseError("write formal automorphisms as lin(...)*exp(...)*...; "
                             "a linear factor after exp(...) is not supported", pos)
        return FormalAutomorphism(a.linear * b.linear, list(b.factors), max(a.depth, b.depth))
    return FormalAutomorphism(a.linear, a.factors + b.factors, max(a.depth, b.depth))


def parse_expression(text: str, depth: int = DEFAULT_DEPTH):
    return _Parser(text, depth).parse()


def parse_scalar_text(text: str):
    v = parse_expression(text)
    if not _is_scalar(v):
        raise ParseError("expected a scalar expression", 0)
    return v


def parse_cochain(text: str, depth: int = DEFAULT_DEPTH):
    v = parse_expression(text, depth)
    if _is_scalar(v) and v == 0:
        return Cochain()
    if not _is_cochain(v):
        raise ParseError("expected a cochain expression", 0)
    return v


def render(x) -> str:
    if _is_scalar(x):
        return render_scalar(x)
    return x.render()
