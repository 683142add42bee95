"""Factored rational l-weights and the maps acting on them.

An l-weight is stored as a nonzero constant per node together with a merged
list of prefundamental factors (node, spectral parameter, integer exponent);
the component at node i realizes to lambda_i * prod (1 - z a)^e.  Merging at
construction keeps degrees honest: the coweight coordinate at node i is the
plain exponent sum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import CartanDatum, btilde_eval
from .errors import CartanMismatch, NotPolynomial, ZeroSpectralParameter
from .scalars import ParamField, Scalars
from .series import Direction, PowerSeries, linear_power


@dataclass(frozen=True)
class Coweight:
    coords: tuple

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __add__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Coweight":
        return Coweight(tuple(-a for a in self.coords))

    def __sub__(self, other: "Coweight") -> "Coweight":
        return self + (-other)

    @property
    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.coords)

    @property
    def is_antidominant(self) -> bool:
        return all(a <= 0 for a in self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.coords) + ")"


@dataclass(frozen=True)
class LWeightProfile:
    coweight: Coweight
    is_polynomial: bool
    is_constant: bool
    weight: tuple  # the I-tuple of constant parts


class LWeight:
    """Immutable factored l-weight bound to one Cartan datum."""

    __slots__ = ("cartan", "consts", "factors")
    __hash__ = None

    def __init__(self, cartan: CartanDatum, consts=None, factors=()):
        ctx = cartan.ctx
        if consts is None:
            consts = (ctx.one,) * cartan.rank
        consts = tuple(ctx.of(c) for c in consts)
        if len(consts) != cartan.rank:
            raise ValueError("constant part must have one entry per node")
        for c in consts:
            if c.is_zero():
                raise ZeroSpectralParameter("constant part entries must be nonzero")
        self.cartan = cartan
        self.consts = consts
        self.factors = _merge_factors(cartan, factors)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def unit(cartan: CartanDatum) -> "LWeight":
        return LWeight(cartan)

    @staticmethod
    def constant(cartan: CartanDatum, consts) -> "LWeight":
        return LWeight(cartan, consts=consts)

    # -- group structure -----------------------------------------------------

    def _check(self, other: "LWeight"):
        if self.cartan is not other.cartan:
            raise CartanMismatch("l-weights belong to different Cartan data")

    def __mul__(self, other: "LWeight") -> "LWeight":
        self._check(other)
        consts = tuple(a * b for a, b in zip(self.consts, other.consts))
        return LWeight(self.cartan, consts, self.factors + other.factors)

    def inverse(self) -> "LWeight":
        consts = tuple(c.inverse() for c in self.consts)
        factors = tuple((j, a, -e) for j, a, e in self.factors)
        return LWeight(self.cartan, consts, factors)

    def __pow__(self, k: int) -> "LWeight":
        if k == 0:
            return LWeight.unit(self.cartan)
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, LWeight):
            return NotImplemented
        if self.cartan is not other.cartan:
            return False
        if any(not (a - b).is_zero() for a, b in zip(self.consts, other.consts)):
            return False
        diff = _merge_factors(self.cartan,
                              self.factors + tuple((j, a, -e) for j, a, e in other.factors))
        return not diff

    # -- structure -----------------------------------------------------------

    def coweight(self) -> Coweight:
        coords = [0] * self.cartan.rank
        for j, _a, e in self.factors:
            coords[j - 1] += e
        return Coweight(tuple(coords))

    @property
    def is_polynomial(self) -> bool:
        return all(e >= 0 for _j, _a, e in self.factors)

    @property
    def is_constant(self) -> bool:
        return not self.factors

    def classify(self) -> LWeightProfile:
        return LWeightProfile(
            coweight=self.coweight(),
            is_polynomial=self.is_polynomial,
            is_constant=self.is_constant,
            weight=self.consts,
        )

    def factors_at(self, node: int):
        return tuple((j, a, e) for j, a, e in self.factors if j == node)

    def constant_term(self, node: int) -> ParamField:
        """Value of the node component at z = 0."""
        return self.consts[self.cartan.index(node)]

    def dominant_coefficient(self, node: int) -> ParamField:
        """Leading coefficient of the node component, lambda_i * prod (-a)^e."""
        out = self.consts[self.cartan.index(node)]
        for _j, a, e in self.factors_at(node):
            out = out * (-a) ** e
        return out

    def normalized_log_coeff(self, node: int, s: int) -> ParamField:
        """The closed form -sum_e e a^s / s over the factors at the node.

        For s > 0 this is [z^s] log(f_i(z)/f_i(0)); for s = -u < 0 it is
        *minus* the coefficient of w^u in the log of the at-infinity
        normalization f_i(z) z^{-deg} / lead, matching the sign with which
        these numbers enter the exponential generating identities.
        """
        if s == 0:
            raise ValueError("s must be nonzero")
        ctx = self.cartan.ctx
        terms = [ctx.fraction(-e, s) * a ** s for _j, a, e in self.factors_at(node)]
        return ParamField.sum_list(ctx, terms)

    # -- series realization ----------------------------------------------------

    def realize_series(self, node: int, direction: Direction, order: int) -> PowerSeries:
        ctx = self.cartan.ctx
        lam = self.constant_term(node)
        facs = self.factors_at(node)
        if direction is Direction.AT_ZERO:
            out = PowerSeries.one(ctx, order, Direction.AT_ZERO)
            for _j, a, e in facs:
                out = out * linear_power(ctx, a, e, order, Direction.AT_ZERO)
            return PowerSeries(ctx, [lam * c for c in out.coeffs], 0, Direction.AT_ZERO)
        deg = sum(e for _j, _a, e in facs)
        lead = self.dominant_coefficient(node)
        out = PowerSeries.one(ctx, order, Direction.AT_INFINITY)
        for _j, a, e in facs:
            out = out * linear_power(ctx, a.inverse(), e, order, Direction.AT_INFINITY)
        return PowerSeries(ctx, [lead * c for c in out.coeffs], -deg, Direction.AT_INFINITY)

    # -- display ---------------------------------------------------------------

    def __str__(self):
        parts = []
        if any(not c.is_one() for c in self.consts):
            parts.append("const(" + ", ".join(str(c) for c in self.consts) + ")")
        for j, a, e in self.factors:
            body = f"Psi[{j},{a}]"
            parts.append(body if e == 1 else f"{body}^{e}")
        return " * ".join(parts) if parts else "1"

    def __repr__(self):
        return f"<lweight {self}>"


def _merge_factors(cartan: CartanDatum, factors) -> tuple:
    merged: list = []  # [node, param, exponent]
    for j, a, e in factors:
        cartan.index(j)  # validates range
        a = cartan.ctx.of(a)
        e = int(e)
        if a.is_zero():
            raise ZeroSpectralParameter("spectral parameters must be nonzero")
        if e == 0:
            continue
        for slot in merged:
            if slot[0] == j and (slot[1] - a).is_zero():
                slot[2] += e
                break
        else:
            merged.append([j, a, e])
    merged = [(j, a, e) for j, a, e in merged if e != 0]
    merged.sort(key=lambda t: (t[0], str(t[1])))
    return tuple(merged)


def prefundamental(cd: CartanDatum, j: int, a) -> LWeight:
    """The l-weight with single component 1 - z a at node j."""
    a = cd.ctx.of(a)
    if a.is_zero():
        raise ZeroSpectralParameter("spectral parameter must be nonzero")
    cd.index(j)
    return LWeight(cd, factors=((j, a, 1),))


def group_ops(x: LWeight, y: LWeight | None, op: str) -> LWeight:
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown group operation {op!r}")


def classify(f: LWeight) -> LWeightProfile:
    return f.classify()


def realize_series(f: LWeight, node: int, direction: Direction, order: int) -> PowerSeries:
    return f.realize_series(node, direction, order)


def bar_shift(f: LWeight, power: int = 1) -> LWeight:
    """Send each factor at node i with parameter a to the bar node with
    parameter a*q^(power * lacing * dual Coxeter); constants are fixed."""
    if not f.is_polynomial:
        raise NotPolynomial("the bar-shift maps are defined on polynomial l-weights")
    cd = f.cartan
    shift = cd.ctx.qpow(power * cd.lacing * cd.dual_coxeter)
    factors = tuple((cd.bar_node(j), a * shift, e) for j, a, e in f.factors)
    return LWeight(cd, f.consts, factors)


def tilde_map(f: LWeight) -> LWeight:
    """The monoid automorphism entering the truncation parameter."""
    return bar_shift(f, 1)


def star_sharp_exponent(a: LWeight, i: int, side: str, order: int) -> list:
    """Exponent coefficients (index u = 1..order) of the star/sharp series."""
    if not a.is_polynomial:
        raise NotPolynomial("star/sharp are defined on polynomial l-weights")
    if side not in ("star", "sharp"):
        raise ValueError("side must be 'star' or 'sharp'")
    cd = a.cartan
    ctx = cd.ctx
    coeffs = [ctx.zero]
    for u in range(1, order + 1):
        terms = []
        for j in cd.nodes:
            if side == "star":
                lam = a.normalized_log_coeff(j, u)
                if lam.is_zero():
                    continue
                terms.append(_kernel_plus(cd, j, i, u) * lam)
            else:
                # lambda_{j,-u} is -sum e c^{-u}/u, the log coefficient of
                # the at-infinity normalization (note the sign relative to
                # normalized_log_coeff)
                lam = -a.normalized_log_coeff(j, -u)
                if lam.is_zero():
                    continue
                terms.append(_kernel_minus(cd, j, i, u) * lam)
        coeffs.append(ParamField.sum_list(ctx, terms))
    return coeffs


def star_sharp_map(a: LWeight, side: str, order: int) -> tuple:
    """The I-tuple of normalizing series attached to a polynomial l-weight.

    side='star' produces series in z built from the log coefficients of
    a_j(z)/a_{j,0}; side='sharp' the series in z^(-1) built from the log
    coefficients of the at-infinity normalization.  Both have constant term 1.
    """
    cd = a.cartan
    direction = Direction.AT_ZERO if side == "star" else Direction.AT_INFINITY
    out = []
    for i in cd.nodes:
        coeffs = star_sharp_exponent(a, i, side, order)
        out.append(PowerSeries(cd.ctx, coeffs, 0, direction).exp())
    return tuple(out)


def _qint_at(ctx: Scalars, t: int, u: int) -> ParamField:
    """[t] in base q^u as an explicit Laurent sum (no denominator)."""
    return ParamField.sum_list(ctx, [ctx.spow(2 * u * (t - 1 - 2 * k)) for k in range(t)])


def _kernel_plus(cd: CartanDatum, j: int, i: int, u: int) -> ParamField:
    """Btilde_ji(q^u) * (1 - q_i^{-2u}) / (q^u - q^{-u}), denominator-free form."""
    key = ("k+", j, i, u)
    out = cd._eval_cache.get(key)
    if out is None:
        di = cd.d[cd.index(i)]
        out = btilde_eval(cd, j, i, u) * cd.qi_pow(i, -u) * _qint_at(cd.ctx, di, u)
        cd._eval_cache[key] = out
    return out


def _kernel_minus(cd: CartanDatum, j: int, i: int, u: int) -> ParamField:
    """Btilde_ji(q^u) * (q_i^{2u} - 1) / (q^u - q^{-u}), denominator-free form."""
    key = ("k-", j, i, u)
    out = cd._eval_cache.get(key)
    if out is None:
        di = cd.d[cd.index(i)]
        out = btilde_eval(cd, j, i, u) * cd.qi_pow(i, u) * _qint_at(cd.ctx, di, u)
        cd._eval_cache[key] = out
    return out


def _kernel_t(cd: CartanDatum, j: int, i: int, u: int) -> ParamField:
    """Btilde_ji(q^u) / (q^u - q^{-u})."""
    key = ("kt", j, i, u)
    out = cd._eval_cache.get(key)
    if out is None:
        ctx = cd.ctx
        den = ctx.spow(2 * u) - ctx.spow(-2 * u)
        out = btilde_eval(cd, j, i, u) / den
        cd._eval_cache[key] = out
    return out
