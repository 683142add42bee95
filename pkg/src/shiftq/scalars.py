"""Exact scalars: rational functions over Q in q^(1/2) and declared parameters.

The generator set of a :class:`Scalars` context is ``{s} | params`` with the
convention ``q = s**2``, so half-integer powers of q are ordinary monomials.
A :class:`ParamField` value is stored as

    c * X^mono * num / (atom_1^e1 * ... * atom_k^ek)

where ``c`` is a rational number, ``mono`` a (possibly negative) exponent
vector, ``num`` a primitive integer polynomial with no monomial content and
positive leading sign, and the denominator a multiset of interned polynomial
atoms.  Sums land on the least common multiple of the operand denominators,
so no gcd is ever required on the arithmetic fast path; a full gcd reduction
(through sympy) runs only above a size threshold or on demand via
:meth:`ParamField.reduced`.

Equality is semantic: ``x == y`` iff ``x - y`` has zero numerator, which is
cross-multiplication equality since denominators are nonzero by construction.
Values are immutable and safe to share across threads.
"""

from __future__ import annotations

import os
from fractions import Fraction

from . import _poly
from .errors import DivisionByZero

_RESERVED = {"q", "s", "z"}


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Positive g with a/g and b/g integral; g = gcd(nums)/lcm(dens)."""
    from math import gcd, lcm

    if not a:
        return abs(b)
    if not b:
        return abs(a)
    return Fraction(gcd(a.numerator, b.numerator), lcm(a.denominator, b.denominator))


def _den_merge_add(d1: tuple, d2: tuple) -> tuple:
    if not d1:
        return d2
    if not d2:
        return d1
    out = dict(d1)
    for aid, e in d2:
        out[aid] = out.get(aid, 0) + e
    return tuple(sorted(out.items()))


def _den_merge_max(d1: tuple, d2: tuple) -> tuple:
    if d1 == d2:
        return d1
    out = dict(d1)
    for aid, e in d2:
        if out.get(aid, 0) < e:
            out[aid] = e
    return tuple(sorted(out.items()))


def _den_diff(d1: tuple, d2: tuple) -> tuple:
    """Multiset difference d1 - d2 (assumes d2 <= d1)."""
    if d1 == d2:
        return ()
    sub = dict(d2)
    out = []
    for aid, e in d1:
        r = e - sub.get(aid, 0)
        if r:
            out.append((aid, r))
    return tuple(out)


class Scalars:
    """Context owning the generator list and the denominator-atom registry.

    Values from different contexts must not be mixed; every value carries a
    reference to its context and operations assert identity.
    """

    def __init__(self, params: tuple[str, ...] | list[str] = (), gcd_threshold: int | None = None):
        params = tuple(params)
        seen = set()
        for name in params:
            if not name.isidentifier():
                raise ValueError(f"parameter name {name!r} is not an identifier")
            if name in _RESERVED:
                raise ValueError(f"parameter name {name!r} collides with a reserved symbol")
            if name in seen:
                raise ValueError(f"duplicate parameter name {name!r}")
            seen.add(name)
        self.params = params
        self.names = ("s",) + params
        self.nvars = len(self.names)
        if gcd_threshold is None:
            gcd_threshold = int(os.environ.get("SHIFTQ_GCD_THRESHOLD", "100000"))
        self.gcd_threshold = gcd_threshold
        self._atom_polys: list[dict] = []
        self._atom_keys: dict = {}
        self._pow_cache: dict = {}      # (atom id, exponent) -> poly
        self._product_cache: dict = {}  # denominator multiset -> poly
        self._sub_cache: dict = {}      # (atom id, power) -> substituted atom id
        self._zero_mono = (0,) * self.nvars
        self.zero = ParamField(self, Fraction(0), self._zero_mono, {}, ())
        self.one = ParamField(self, Fraction(1), self._zero_mono, _poly.pone(self.nvars), ())

    # -- value constructors ------------------------------------------------

    def fraction(self, p, q=1) -> ParamField:
        c = Fraction(p, q)
        if not c:
            return self.zero
        return ParamField(self, c, self._zero_mono, _poly.pone(self.nvars), ())

    def of(self, value) -> ParamField:
        if isinstance(value, ParamField):
            if value.ctx is not self:
                raise ValueError("value belongs to a different Scalars context")
            return value
        return self.fraction(value)

    @property
    def s(self) -> ParamField:
        """q^(1/2)."""
        return self.monomial({"s": 1})

    @property
    def q(self) -> ParamField:
        return self.monomial({"s": 2})

    def qpow(self, k: int) -> ParamField:
        """Integer power q^k (k may be negative)."""
        return self.monomial({"s": 2 * k})

    def spow(self, k: int) -> ParamField:
        """Half-integer power q^(k/2)."""
        return self.monomial({"s": k})

    def param(self, name: str) -> ParamField:
        if name not in self.params:
            raise KeyError(f"parameter {name!r} was not declared in this context")
        return self.monomial({name: 1})

    def monomial(self, exps: dict, coeff=1) -> ParamField:
        c = Fraction(coeff)
        if not c:
            return self.zero
        mono = [0] * self.nvars
        for name, e in exps.items():
            mono[self.names.index(name)] = e
        return ParamField(self, c, tuple(mono), _poly.pone(self.nvars), ())

    # -- atom registry -----------------------------------------------------

    def _atom_id(self, poly: dict) -> int:
        key = frozenset(poly.items())
        aid = self._atom_keys.get(key)
        if aid is None:
            aid = len(self._atom_polys)
            self._atom_polys.append(poly)
            self._atom_keys[key] = aid
        return aid


    def _atom_pow(self, aid: int, e: int) -> dict:
        key = (aid, e)
        out = self._pow_cache.get(key)
        if out is None:
            out = _poly.ppow(self._atom_polys[aid], e, self.nvars)
            self._pow_cache[key] = out
        return out

    def _atom_product(self, den: tuple) -> dict:
        if not den:
            return _poly.pone(self.nvars)
        if len(den) == 1:
            return self._atom_pow(*den[0])
        out = self._product_cache.get(den)
        if out is None:
            out = self._atom_pow(*den[0])
            for aid, e in den[1:]:
                out = _poly.pmul(out, self._atom_pow(aid, e), self.nvars)
            self._product_cache[den] = out
        return out

    def __repr__(self):
        return f"Scalars(params={self.params!r})"


class ParamField:
    """One exact scalar.  Never mutate; never construct directly outside
    this module — use the ``Scalars`` factories and arithmetic."""

    __slots__ = ("ctx", "c", "mono", "num", "den")
    __hash__ = None

    def __init__(self, ctx: Scalars, c: Fraction, mono: tuple, num: dict, den: tuple):
        self.ctx = ctx
        self.c = c
        self.mono = mono
        self.num = num
        self.den = den

    # -- helpers -----------------------------------------------------------

    @staticmethod
    def _normalize(ctx: Scalars, c: Fraction, mono: tuple, num: dict, den: tuple) -> "ParamField":
        if not num or not c:
            return ctx.zero
        k = _poly.int_content(num)
        sign = _poly.lead_sign(num)
        if sign < 0:
            k = -k
        if k != 1:
            num = {e: cc // k for e, cc in num.items()}
            c = c * k
        m, num = _poly.strip_monomial(num, ctx.nvars)
        if any(m):
            mono = tuple(x + y for x, y in zip(mono, m))
        if len(num) > ctx.gcd_threshold and den:
            c, mono, num, den = _reduce_against_atoms(ctx, c, mono, num, den)
        return ParamField(ctx, c, mono, num, den)

    def _coerce(self, other):
        if isinstance(other, ParamField):
            if other.ctx is not self.ctx:
                raise ValueError("cannot mix values from different Scalars contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.fraction(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return (self - self.ctx.one).is_zero()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ParamField.sum_list(self.ctx, (self, other))

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return ParamField(self.ctx, -self.c, self.mono, self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ParamField.sum_list(self.ctx, (self, -other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.ctx.zero
        ctx = self.ctx
        num = _poly.pmul(self.num, other.num, ctx.nvars)
        mono = tuple(x + y for x, y in zip(self.mono, other.mono))
        den = _den_merge_add(self.den, other.den)
        c = self.c * other.c
        if len(num) > ctx.gcd_threshold and den:
            return ParamField._normalize(ctx, c, mono, num, den)
        # product of normalized parts stays normalized (Gauss's lemma)
        return ParamField(ctx, c, mono, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "ParamField":
        if self.is_zero():
            raise DivisionByZero("division by the zero scalar")
        ctx = self.ctx
        num = ctx._atom_product(self.den)
        mono = tuple(-x for x in self.mono)
        if len(self.num) == 1:
            # unit polynomial: no new atom
            return ParamField._normalize(ctx, 1 / self.c, mono, num, ())
        den = ((ctx._atom_id(self.num), 1),)
        return ParamField._normalize(ctx, 1 / self.c, mono, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return self.ctx.one
        base = self if k > 0 else self.inverse()
        k = abs(k)
        ctx = self.ctx
        num = _poly.ppow(base.num, k, ctx.nvars)
        mono = tuple(x * k for x in base.mono)
        den = tuple((aid, e * k) for aid, e in base.den)
        return ParamField._normalize(ctx, base.c ** k, mono, num, den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamField)):
            other = self._coerce(other)
            return (self - other).is_zero()
        return NotImplemented

    @staticmethod
    def sum_list(ctx: Scalars, items) -> "ParamField":
        """Sum over one common denominator (single normalization pass)."""
        items = [x for x in items if not x.is_zero()]
        if not items:
            return ctx.zero
        if len(items) == 1:
            return items[0]
        return ParamField._accumulate(ctx, [(x, None) for x in items])

    @staticmethod
    def dot_list(ctx: Scalars, pairs) -> "ParamField":
        """Sum of products x*y, multiplied and accumulated in one fused pass."""
        items = [(x, y) for x, y in pairs if not (x.is_zero() or y.is_zero())]
        if not items:
            return ctx.zero
        return ParamField._accumulate(ctx, items)

    @staticmethod
    def _accumulate(ctx: Scalars, items) -> "ParamField":
        dens = []
        monos = []
        cs = []
        for x, y in items:
            if y is None:
                dens.append(x.den)
                monos.append(x.mono)
                cs.append(x.c)
            else:
                dens.append(_den_merge_add(x.den, y.den))
                monos.append(tuple(a + b for a, b in zip(x.mono, y.mono)))
                cs.append(x.c * y.c)
        den = dens[0]
        for d in dens[1:]:
            den = _den_merge_max(den, d)
        nv = ctx.nvars
        mono = tuple(min(m[v] for m in monos) for v in range(nv))
        c0 = Fraction(0)
        for c in cs:
            c0 = _frac_gcd(c0, c)
        terms = []
        for (x, y), dk, mk, ck in zip(items, dens, monos, cs):
            r = int(ck / c0)
            shift = tuple(a - b for a, b in zip(mk, mono))
            if not any(shift):
                shift = None
            factors = [(x.num, shift)]
            if y is not None:
                factors.append((y.num, None))
            deficit = _den_diff(den, dk)
            if deficit:
                # globally cached product polynomial: packed per call, built once
                factors.append((ctx._atom_product(deficit), None))
            terms.append((r, factors))
        total = _poly.dot_sum(terms, nv)
        if total is None:
            total = {}
            for r, factors in terms:
                part = _poly.pscale(factors[0][0], r)
                if factors[0][1]:
                    part = _poly.pshift(part, factors[0][1])
                for poly, _s in factors[1:]:
                    part = _poly.pmul(part, poly, nv)
                _poly.padd_into(total, part)
        return ParamField._normalize(ctx, c0, mono, total, den)

    # -- substitution and structure -----------------------------------------

    def substitute_q_power(self, k: int) -> "ParamField":
        """q -> q^k (that is, s -> s^k); declared parameters are untouched."""
        if k < 1:
            raise ValueError("substitution exponent must be >= 1")
        if k == 1 or self.is_zero():
            return self
        ctx = self.ctx
        num = _poly.substitute_var_power(self.num, 0, k)
        mono = (self.mono[0] * k,) + self.mono[1:]
        den = []
        for aid, e in self.den:
            aid2 = ctx._sub_cache.get((aid, k))
            if aid2 is None:
                aid2 = ctx._atom_id(_poly.substitute_var_power(ctx._atom_polys[aid], 0, k))
                ctx._sub_cache[(aid, k)] = aid2
            den.append((aid2, e))
        return ParamField(ctx, self.c, mono, num, tuple(sorted(den)))

    def as_fraction(self) -> tuple[dict, dict]:
        """Materialize (numerator, denominator) as integer polynomial dicts.

        The rational content and the Laurent monomial are distributed so both
        returned dicts are true polynomials (nonnegative exponents).
        """
        ctx = self.ctx
        if self.is_zero():
            return {}, _poly.pone(ctx.nvars)
        num = _poly.pscale(self.num, self.c.numerator)
        den = _poly.pscale(ctx._atom_product(self.den), self.c.denominator)
        up = tuple(max(x, 0) for x in self.mono)
        dn = tuple(max(-x, 0) for x in self.mono)
        if any(up):
            num = _poly.pshift(num, up)
        if any(dn):
            den = _poly.pshift(den, dn)
        return num, den

    def cross_equal(self, other: "ParamField") -> bool:
        """Literal cross-multiplication equality a*d == c*b."""
        other = self._coerce(other)
        a, b = self.as_fraction()
        c, d = other.as_fraction()
        n = self.ctx.nvars
        return _poly.is_zero(_poly.psub(_poly.pmul(a, d, n), _poly.pmul(c, b, n)))

    def reduced(self) -> "ParamField":
        """Fully cancelled representative (gcd against each denominator atom)."""
        if self.is_zero() or not self.den:
            return self
        ctx = self.ctx
        c, mono, num, den = _reduce_against_atoms(ctx, self.c, self.mono, self.num, self.den)
        return ParamField(ctx, c, mono, num, den)

    # -- display -----------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"<scalar {format_scalar(self)}>"


def _reduce_against_atoms(ctx: Scalars, c: Fraction, mono: tuple, num: dict, den: tuple):
    """Cancel every common polynomial factor between num and the atoms."""
    den_list = list(den)
    changed = True
    while changed and len(num) > 1:
        changed = False
        for idx, (aid, e) in enumerate(den_list):
            atom = ctx._atom_polys[aid]
            g = _poly.full_gcd(num, atom, ctx.nvars)
            if len(g) == 1 and not any(next(iter(g))):
                continue  # unit gcd
            quo = _poly.exact_div(num, g, ctx.nvars)
            rest = _poly.exact_div(atom, g, ctx.nvars)
            if quo is None or rest is None:
                continue
            sign = _poly.lead_sign(g)
            if sign < 0:
                g = _poly.pneg(g)
                quo = _poly.pneg(quo)
            num = quo
            # atom^e = g^e * rest^e; one g cancels into num
            new = []
            if e > 1:
                mg, g2 = _poly.strip_monomial(g, ctx.nvars)
                if any(mg):
                    mono = tuple(x - (e - 1) * y for x, y in zip(mono, mg))
                kg = _poly.int_content(g2)
                if _poly.lead_sign(g2) < 0:
                    kg = -kg
                if kg != 1:
                    g2 = {ee: cc // kg for ee, cc in g2.items()}
                    c = c / kg ** (e - 1)
                if len(g2) > 1:
                    new.append((ctx._atom_id(g2), e - 1))
            if len(rest) >= 1 and not (len(rest) == 1 and not any(next(iter(rest)))):
                mr, r2 = _poly.strip_monomial(rest, ctx.nvars)
                if any(mr):
                    mono = tuple(x - e * y for x, y in zip(mono, mr))
                kr = _poly.int_content(r2)
                if _poly.lead_sign(r2) < 0:
                    kr = -kr
                if kr != 1:
                    r2 = {ee: cc // kr for ee, cc in r2.items()}
                    c = c / kr ** e
                if len(r2) > 1:
                    new.append((ctx._atom_id(r2), e))
            den_list = den_list[:idx] + new + den_list[idx + 1:]
            # re-normalize num (content/monomial may have appeared)
            k = _poly.int_content(num)
            if _poly.lead_sign(num) < 0:
                k = -k
            if k != 1:
                num = {ee: cc // k for ee, cc in num.items()}
                c = c * k
            m, num = _poly.strip_monomial(num, ctx.nvars)
            if any(m):
                mono = tuple(x + y for x, y in zip(mono, m))
            changed = True
            break
    return c, mono, num, tuple(sorted(den_list))


# -- the spec-level operation surface ---------------------------------------

def field_arith(x: ParamField, y: ParamField, op: str) -> ParamField:
    """Dispatch form of the four field operations."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y.is_zero():
            raise DivisionByZero("division by the zero scalar")
        return x / y
    raise ValueError(f"unknown field operation {op!r}")


def substitute_power(x: ParamField, k: int) -> ParamField:
    """q -> q^k on a scalar; parameters are fixed."""
    return x.substitute_q_power(k)


# -- pretty printing ---------------------------------------------------------

def _fmt_q_exponent(e: int) -> str:
    # var 0 is s = q^(1/2)
    if e % 2 == 0:
        k = e // 2
        if k == 1:
            return "q"
        return f"q^{k}" if k >= 0 else f"q^({k})"
    return f"q^({e}/2)"


def _fmt_monomial(ctx: Scalars, exps: tuple) -> str:
    parts = []
    if exps[0]:
        parts.append(_fmt_q_exponent(exps[0]))
    for v in range(1, ctx.nvars):
        e = exps[v]
        if not e:
            continue
        name = ctx.names[v]
        if e == 1:
            parts.append(name)
        elif e > 0:
            parts.append(f"{name}^{e}")
        else:
            parts.append(f"{name}^({e})")
    return "*".join(parts)


def _fmt_poly(ctx: Scalars, poly: dict, content: Fraction = Fraction(1)) -> str:
    if not poly:
        return "0"
    out = []
    for e in sorted(poly, reverse=True):
        c = poly[e] * content
        mono = _fmt_monomial(ctx, e)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(out)


def format_scalar(x: ParamField) -> str:
    """Canonical display: reduced, monomials in q-powers, stable term order."""
    if x.is_zero():
        return "0"
    x = x.reduced()
    ctx = x.ctx
    num, den = x.as_fraction()
    num_s = _fmt_poly(ctx, num)
    if len(den) == 1 and next(iter(den.values())) == 1 and not any(next(iter(den))):
        return num_s
    den_s = _fmt_poly(ctx, den)
    num_w = num_s if len(num) == 1 else f"({num_s})"
    den_w = den_s if len(den) == 1 else f"({den_s})"
    return f"{num_w}/{den_w}"
