"""Truncated series in one formal variable over exact scalars.

A series carries a direction: ``AT_ZERO`` means the variable is z, and
``AT_INFINITY`` means the variable is w = z^(-1) (two expansions of one
rational function are two distinct series objects).  ``offset`` is the lowest
tracked exponent and coefficients run over ``offset .. offset+order``;
exponents below ``offset`` are exactly zero, exponents above the window are
unknown.  Series are immutable.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .errors import (
    ConstantTermNotOne,
    NonInvertibleSeries,
    NonzeroConstantTerm,
    ZeroScale,
)
from .scalars import ParamField, Scalars

DEFAULT_ORDER = 20


class Direction(enum.Enum):
    AT_ZERO = "z"
    AT_INFINITY = "z^-1"


class PowerSeries:
    __slots__ = ("ctx", "direction", "offset", "coeffs")
    __hash__ = None

    def __init__(self, ctx: Scalars, coeffs, offset: int = 0,
                 direction: Direction = Direction.AT_ZERO):
        self.ctx = ctx
        self.coeffs = tuple(ctx.of(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least one tracked coefficient")
        self.offset = offset
        self.direction = direction

    # -- constructors --------------------------------------------------------

    @staticmethod
    def one(ctx: Scalars, order: int, direction: Direction = Direction.AT_ZERO) -> "PowerSeries":
        return PowerSeries(ctx, [ctx.one] + [ctx.zero] * order, 0, direction)

    @staticmethod
    def zero(ctx: Scalars, order: int, direction: Direction = Direction.AT_ZERO) -> "PowerSeries":
        return PowerSeries(ctx, [ctx.zero] * (order + 1), 0, direction)

    @staticmethod
    def linear(ctx: Scalars, a, order: int,
               direction: Direction = Direction.AT_ZERO) -> "PowerSeries":
        """1 - a*var, padded to the requested order."""
        return PowerSeries(ctx, [ctx.one, -ctx.of(a)] + [ctx.zero] * (order - 1),
                           0, direction)

    # -- basics ---------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def top_exponent(self) -> int:
        return self.offset + self.order

    def coeff(self, exponent: int) -> ParamField:
        """Coefficient at an absolute exponent (zero below the window)."""
        if exponent < self.offset:
            return self.ctx.zero
        if exponent > self.top_exponent:
            raise IndexError(f"exponent {exponent} exceeds tracked window")
        return self.coeffs[exponent - self.offset]

    def _check(self, other: "PowerSeries"):
        if self.ctx is not other.ctx:
            raise ValueError("cannot mix series from different Scalars contexts")
        if self.direction is not other.direction:
            raise ValueError("cannot mix series with different expansion directions")

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.first_difference(other) is None

    def first_difference(self, other: "PowerSeries") -> int | None:
        """Lowest exponent (within the common window) where the two differ."""
        self._check(other)
        lo = min(self.offset, other.offset)
        hi = min(self.top_exponent, other.top_exponent)
        for k in range(lo, hi + 1):
            if not (self.coeff(k) - other.coeff(k)).is_zero():
                return k
        return None

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        lo = min(self.offset, other.offset)
        hi = min(self.top_exponent, other.top_exponent)
        coeffs = [self.coeff(k) + other.coeff(k) for k in range(lo, hi + 1)]
        return PowerSeries(self.ctx, coeffs, lo, self.direction)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(self.ctx, [-c for c in self.coeffs], self.offset, self.direction)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        order = min(self.order, other.order)
        offset = self.offset + other.offset
        n = order + 1
        coeffs = []
        for k in range(n):
            lo = max(0, k - (len(other.coeffs) - 1))
            hi = min(k, len(self.coeffs) - 1)
            pairs = [(self.coeffs[i], other.coeffs[k - i]) for i in range(lo, hi + 1)]
            coeffs.append(ParamField.dot_list(self.ctx, pairs))
        return PowerSeries(self.ctx, coeffs, offset, self.direction)

    def invert(self) -> "PowerSeries":
        lead = self.coeffs[0]
        if lead.is_zero():
            raise NonInvertibleSeries("leading coefficient is zero")
        ctx = self.ctx
        inv_lead = lead.inverse()
        u = [c * inv_lead for c in self.coeffs]  # u[0] == 1
        n = self.order
        v: list[ParamField] = [ctx.one] + [ctx.zero] * n
        for k in range(1, n + 1):
            pairs = [(u[i], v[k - i]) for i in range(1, k + 1)]
            v[k] = -ParamField.dot_list(ctx, pairs)
        coeffs = [inv_lead * c for c in v]
        return PowerSeries(ctx, coeffs, -self.offset, self.direction)

    def exp(self) -> "PowerSeries":
        """exp of a series with zero constant term (offset >= 1 after padding)."""
        for k in range(self.offset, min(1, self.top_exponent + 1)):
            if not self.coeff(k).is_zero():
                raise NonzeroConstantTerm(
                    "series exponential needs vanishing coefficients at exponents <= 0")
        ctx = self.ctx
        n = self.top_exponent
        x = [self.coeff(k) if k >= self.offset else ctx.zero for k in range(n + 1)]
        kx = [x[k] * k for k in range(n + 1)]
        y: list[ParamField] = [ctx.one] + [ctx.zero] * n
        for m in range(1, n + 1):
            pairs = [(kx[k], y[m - k]) for k in range(1, m + 1)]
            y[m] = ctx.fraction(1, m) * ParamField.dot_list(ctx, pairs)
        return PowerSeries(ctx, y, 0, self.direction)

    def log(self) -> "PowerSeries":
        if self.offset != 0 or not (self.coeffs[0] - self.ctx.one).is_zero():
            raise ConstantTermNotOne("series logarithm needs constant term 1 at offset 0")
        ctx = self.ctx
        n = self.order
        x = self.coeffs
        out: list[ParamField] = [ctx.zero] * (n + 1)
        kout: list[ParamField] = [ctx.zero] * (n + 1)
        for m in range(1, n + 1):
            conv = ParamField.dot_list(ctx, [(kout[k], x[m - k]) for k in range(1, m)])
            out[m] = ctx.fraction(1, m) * (x[m] * m - conv)
            kout[m] = out[m] * m
        return PowerSeries(ctx, out, 0, self.direction)

    def rescale(self, c: ParamField) -> "PowerSeries":
        """Multiply the coefficient at exponent k by c^k (variable -> c*variable)."""
        c = self.ctx.of(c)
        if c.is_zero():
            raise ZeroScale("rescaling factor must be nonzero")
        coeffs = []
        for i, a in enumerate(self.coeffs):
            k = self.offset + i
            coeffs.append(a * c ** k if k else a)
        return PowerSeries(self.ctx, coeffs, self.offset, self.direction)

    def truncate(self, order: int) -> "PowerSeries":
        if order >= self.order:
            return self
        return PowerSeries(self.ctx, self.coeffs[:order + 1], self.offset, self.direction)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by variable^k (window shifts with the value)."""
        if k == 0:
            return self
        return PowerSeries(self.ctx, self.coeffs, self.offset + k, self.direction)

    # -- structure ----------------------------------------------------------

    def is_one(self) -> bool:
        one = PowerSeries.one(self.ctx, 0, self.direction)
        return self.first_difference(one) is None

    def polynomial_profile(self) -> tuple[bool, int, ParamField]:
        """(vanishes above last nonzero?, degree, dominant coefficient).

        Always true structurally for a tracked window; callers interpret the
        degree against an expected bound.  Zero series reports degree 0 with
        dominant coefficient 0.
        """
        deg = None
        for k in range(self.top_exponent, self.offset - 1, -1):
            if not self.coeff(k).is_zero():
                deg = k
                break
        if deg is None:
            return True, 0, self.ctx.zero
        return True, deg, self.coeff(deg)

    def __str__(self):
        var = "z" if self.direction is Direction.AT_ZERO else "z^-1"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            k = self.offset + i
            cs = str(c)
            if k == 0:
                parts.append(cs)
            else:
                e = f"{var}^{k}" if k != 1 else var
                if cs == "1":
                    parts.append(e)
                elif cs == "-1":
                    parts.append(f"-{e}")
                else:
                    body = cs if ("/" not in cs and " " not in cs) else f"({cs})"
                    parts.append(f"{body}*{e}")
        if not parts:
            parts = ["0"]
        return " + ".join(parts).replace("+ -", "- ") + f" + O({var}^{self.top_exponent + 1})"

    def __repr__(self):
        return f"<series {self}>"


def series_arith(x: PowerSeries, y: PowerSeries, op: str) -> PowerSeries:
    """Dispatch form of series arithmetic (invert ignores ``y``)."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "invert":
        return x.invert()
    raise ValueError(f"unknown series operation {op!r}")


def series_exp(x: PowerSeries) -> PowerSeries:
    return x.exp()


def series_log(x: PowerSeries) -> PowerSeries:
    return x.log()


def series_rescale(x: PowerSeries, c) -> PowerSeries:
    return x.rescale(c)


def geometric(ctx: Scalars, a, order: int,
              direction: Direction = Direction.AT_ZERO) -> PowerSeries:
    """1/(1 - a*var) expanded directly: sum a^k var^k."""
    a = ctx.of(a)
    coeffs = [ctx.one]
    for _ in range(order):
        coeffs.append(coeffs[-1] * a)
    return PowerSeries(ctx, coeffs, 0, direction)


def linear_power(ctx: Scalars, a, e: int, order: int,
                 direction: Direction = Direction.AT_ZERO) -> PowerSeries:
    """(1 - a*var)^e for integer e of either sign, by binomial expansion."""
    a = ctx.of(a)
    coeffs = []
    binom = Fraction(1)
    apow = ctx.one
    for k in range(order + 1):
        coeffs.append(ctx.fraction(binom) * apow * ((-1) ** k if k % 2 else 1))
        binom = binom * Fraction(e - k, k + 1)
        apow = apow * a
    return PowerSeries(ctx, coeffs, 0, direction)
