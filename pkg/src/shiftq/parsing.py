"""Textual l-weight and scalar expressions.

Grammar (whitespace-insensitive)::

    lweight := item ('*' item)*
    item    := 'Psi' '[' INT ',' scalar ']' ('^' sint)?
             | 'const' '(' scalar (',' scalar)* ')'
    scalar  := sprod (('+'|'-') sprod)*
    sprod   := sfact (('*'|'/') sfact)*
    sfact   := '-' sfact | satom ('^' sint)?
    satom   := INT | 'q' | NAME | '(' scalar ')'
    sint    := '-'? INT

Scalar names must be parameters declared in the Scalars context; ``q`` is the
quantum parameter.  Exponents are integers of either sign.
"""

from __future__ import annotations

import re

from .cartan import CartanDatum
from .errors import ShiftQError
from .lweight import LWeight
from .scalars import ParamField, Scalars


class ParseError(ShiftQError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*|/|\^|\+|-|\(|\)|\[|\]|,))")


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        if m.group(1):
            out.append(("int", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            out.append(("sym", m.group(3)))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, ctx: Scalars, tokens):
        self.ctx = ctx
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {tok[1]!r}")
        return tok

    def at_sym(self, s):
        tok = self.peek()
        return tok[0] == "sym" and tok[1] == s

    # -- scalar expressions --------------------------------------------------

    def scalar(self) -> ParamField:
        out = self.sprod()
        while self.at_sym("+") or self.at_sym("-"):
            op = self.next()[1]
            rhs = self.sprod()
            out = out + rhs if op == "+" else out - rhs
        return out

    def sprod(self) -> ParamField:
        out = self.sfact()
        while self.at_sym("*") or self.at_sym("/"):
            op = self.next()[1]
            rhs = self.sfact()
            if op == "*":
                out = out * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero in scalar expression")
                out = out / rhs
        return out

    def sfact(self) -> ParamField:
        if self.at_sym("-"):
            self.next()
            return -self.sfact()
        out = self.satom()
        if self.at_sym("^"):
            self.next()
            k = self.sint()
            if out.is_zero() and k < 0:
                raise ParseError("zero cannot be raised to a negative power")
            out = out ** k
        return out

    def satom(self) -> ParamField:
        tok = self.next()
        if tok[0] == "int":
            return self.ctx.fraction(tok[1])
        if tok[0] == "name":
            if tok[1] == "q":
                return self.ctx.q
            try:
                return self.ctx.param(tok[1])
            except KeyError:
                raise ParseError(
                    f"unknown symbol {tok[1]!r}; declare parameters with --params") from None
        if tok == ("sym", "("):
            out = self.scalar()
            self.expect("sym", ")")
            return out
        raise ParseError(f"unexpected token {tok[1]!r} in scalar expression")

    def sint(self) -> int:
        neg = False
        if self.at_sym("-"):
            self.next()
            neg = True
        tok = self.expect("int")
        return -tok[1] if neg else tok[1]


def parse_scalar(ctx: Scalars, text: str) -> ParamField:
    p = _Parser(ctx, _tokenize(text))
    out = p.scalar()
    p.expect("end")
    return out


def parse_lweight(cd: CartanDatum, text: str) -> LWeight:
    p = _Parser(cd.ctx, _tokenize(text))
    out = LWeight.unit(cd)
    while True:
        tok = p.next()
        if tok[0] != "name" or tok[1] not in ("Psi", "const"):
            raise ParseError(f"expected 'Psi' or 'const', found {tok[1]!r}")
        if tok[1] == "Psi":
            p.expect("sym", "[")
            node = p.expect("int")[1]
            if not 1 <= node <= cd.rank:
                raise ParseError(f"node {node} out of range for {cd.type_name}")
            p.expect("sym", ",")
            a = p.scalar()
            if a.is_zero():
                raise ParseError("spectral parameter must be nonzero")
            p.expect("sym", "]")
            e = 1
            if p.at_sym("^"):
                p.next()
                e = p.sint()
            out = out * LWeight(cd, factors=((node, a, e),))
        else:
            p.expect("sym", "(")
            consts = [p.scalar()]
            while p.at_sym(","):
                p.next()
                consts.append(p.scalar())
            p.expect("sym", ")")
            if len(consts) == 1 and cd.rank > 1:
                consts = consts * cd.rank
            if len(consts) != cd.rank:
                raise ParseError(
                    f"const(...) needs {cd.rank} entries for {cd.type_name}")
            if any(c.is_zero() for c in consts):
                raise ParseError("constant l-weight entries must be nonzero")
            out = out * LWeight.constant(cd, consts)
        if p.at_sym("*"):
            p.next()
            continue
        p.expect("end")
        return out
