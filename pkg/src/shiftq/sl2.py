"""Depth-truncated realization of the explicit rank-one module with negative
prefundamental highest l-weight b/(1-za), and machine checks of every scalar
claim it carries.

Only Drinfeld-Cartan eigenvalue data is modeled: each basis vector w_n spans a
one-dimensional weight space, so the phi- and modified-A-series act by scalar
series.  The parameters are built from square generators (a = sqrt_a^2,
b = sqrt_b^2) so the theta-scalars of the adjoint-descent analysis are exact
monomials.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import CartanDatum
from .engine import script_a_eig
from .errors import ZeroFlavor, ZeroParameter
from .lweight import LWeight, prefundamental
from .scalars import ParamField
from .series import Direction, PowerSeries, linear_power
from .truncation import top_scalars


@dataclass(frozen=True)
class RowCheck:
    n: int
    passed: bool
    detail: str = ""

    def to_dict(self):
        d = {"n": self.n, "pass": self.passed}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass(frozen=True)
class ModuleReport:
    check: str
    depth: int
    order: int
    passed: bool
    rows: tuple

    def to_dict(self):
        return {
            "check": self.check,
            "depth": self.depth,
            "order": self.order,
            "pass": self.passed,
            "rows": [r.to_dict() for r in self.rows],
        }


def _report(check: str, depth: int, order: int, rows) -> ModuleReport:
    rows = tuple(rows)
    return ModuleReport(check, depth, order, all(r.passed for r in rows), rows)


class Sl2NegPrefundModule:
    """Eigenvalue data of the basis (w_n), n = 0..depth, to series order N."""

    def __init__(self, cd: CartanDatum, sqrt_a: ParamField, sqrt_b: ParamField,
                 depth: int, order: int, _b_value: ParamField | None = None):
        if cd.label != "A" or cd.rank != 1:
            raise ValueError("this module lives over type A1")
        if depth < 1:
            raise ValueError("depth must be >= 1")
        ctx = cd.ctx
        sqrt_a = ctx.of(sqrt_a)
        if sqrt_a.is_zero():
            raise ZeroParameter("module parameters must be nonzero")
        self.cartan = cd
        self.sqrt_a = sqrt_a
        self.a = sqrt_a * sqrt_a
        if _b_value is None:
            sqrt_b = ctx.of(sqrt_b)
            if sqrt_b.is_zero():
                raise ZeroParameter("module parameters must be nonzero")
            self.sqrt_b = sqrt_b
            self.b = sqrt_b * sqrt_b
        else:
            if _b_value.is_zero():
                raise ZeroParameter("module parameters must be nonzero")
            self.sqrt_b = None
            self.b = _b_value
        self.depth = depth
        self.order = order
        q2 = ctx.qpow(2)
        self.trunc_param = prefundamental(cd, 1, self.a * q2)  # 1 - z a q^2
        # engine normalizers depend only on the truncation parameter
        self._rows = [self._build_row(n) for n in range(depth + 1)]

    @classmethod
    def with_b_value(cls, cd: CartanDatum, sqrt_a: ParamField, b: ParamField,
                     depth: int, order: int) -> "Sl2NegPrefundModule":
        """Variant constructor for specializations where b is not a square
        (the theta-system only ever needs the square root of a)."""
        return cls(cd, sqrt_a, None, depth, order, _b_value=cd.ctx.of(b))

    # -- per-row data --------------------------------------------------------

    def lweight(self, n: int) -> LWeight:
        return self._rows[n]["lw"]

    def weight(self, n: int) -> ParamField:
        """phi+_{1,0} eigenvalue on w_n: b q^{-2n}."""
        return self._rows[n]["weight"]

    def phi_plus(self, n: int) -> PowerSeries:
        return self._rows[n]["phi+"]

    def phi_minus(self, n: int) -> PowerSeries:
        return self._rows[n]["phi-"]

    def phi_minus_lead(self, n: int) -> ParamField:
        """phi-_{1,-1} eigenvalue on w_n (coefficient of z^{-1})."""
        return self._rows[n]["phi-lead"]

    def script_plus(self, n: int) -> PowerSeries:
        return self._rows[n]["A+"]

    def script_minus(self, n: int) -> PowerSeries:
        return self._rows[n]["A-"]

    def closed_script_plus(self, n: int) -> PowerSeries:
        return self._rows[n]["A+closed"]

    def closed_script_minus(self, n: int) -> PowerSeries:
        return self._rows[n]["A-closed"]

    def _build_row(self, n: int) -> dict:
        cd = self.cartan
        ctx = cd.ctx
        a, b = self.a, self.b
        qp = ctx.qpow
        lw = LWeight(
            cd,
            consts=(b * qp(-2 * n),),
            factors=((1, a * qp(2), 1), (1, a * qp(-2 * n), -1), (1, a * qp(2 - 2 * n), -1)),
        )
        return {
            "lw": lw,
            "weight": b * qp(-2 * n),
            "phi-lead": -b * a.inverse() * qp(2 * n),
            "phi+": lw.realize_series(1, Direction.AT_ZERO, self.order),
            "phi-": lw.realize_series(1, Direction.AT_INFINITY, self.order),
            "A+": script_a_eig(lw, self.trunc_param, 1, 1, self.order),
            "A-": script_a_eig(lw, self.trunc_param, 1, -1, self.order),
            "A+closed": linear_power(ctx, a * qp(-2 * n), 1, self.order, Direction.AT_ZERO),
            "A-closed": linear_power(ctx, a.inverse() * qp(2 * n), 1, self.order,
                                     Direction.AT_INFINITY),
        }

    # -- verifiers ------------------------------------------------------------

    def verify_phi_formula(self) -> ModuleReport:
        """The factored realization reproduces the closed formula
        b q^{-2n} (1-zaq^2) / ((1-zaq^{-2n})(1-zaq^{2-2n})) in both directions,
        and the leading coefficients are b q^{-2n} and -b a^{-1} q^{2n}."""
        cd = self.cartan
        ctx = cd.ctx
        N = self.order
        rows = []
        for n in range(self.depth + 1):
            qp = ctx.qpow
            numer = linear_power(ctx, self.a * qp(2), 1, N)
            d1 = linear_power(ctx, self.a * qp(-2 * n), 1, N).invert()
            d2 = linear_power(ctx, self.a * qp(2 - 2 * n), 1, N).invert()
            closed = numer * d1 * d2
            closed = PowerSeries(ctx, [self.weight(n) * c for c in closed.coeffs], 0,
                                 Direction.AT_ZERO)
            fail = self.phi_plus(n).first_difference(closed)
            ok = fail is None
            # at-infinity: same rational function expanded in w
            numer_w = linear_power(ctx, (self.a * qp(2)).inverse(), 1, N,
                                   Direction.AT_INFINITY)
            d1w = linear_power(ctx, (self.a * qp(-2 * n)).inverse(), 1, N,
                               Direction.AT_INFINITY).invert()
            d2w = linear_power(ctx, (self.a * qp(2 - 2 * n)).inverse(), 1, N,
                               Direction.AT_INFINITY).invert()
            closed_w = numer_w * d1w * d2w
            lead = self.phi_minus_lead(n)
            closed_w = PowerSeries(ctx, [lead * c for c in closed_w.coeffs], 1,
                                   Direction.AT_INFINITY)
            fail_w = self.phi_minus(n).first_difference(closed_w)
            ok = ok and fail_w is None
            ok = ok and (self.phi_plus(n).coeff(0) - self.weight(n)).is_zero()
            ok = ok and (self.phi_minus(n).coeff(1) - lead).is_zero()
            rows.append(RowCheck(n, ok))
        return _report("sl2-phi-formula", self.depth, N, rows)

    def verify_closed_a(self) -> ModuleReport:
        """Engine-computed modified A-series match 1 - zaq^{-2n} and
        1 - z^{-1}a^{-1}q^{2n} exactly."""
        rows = []
        for n in range(self.depth + 1):
            f1 = self.script_plus(n).first_difference(self.closed_script_plus(n))
            f2 = self.script_minus(n).first_difference(self.closed_script_minus(n))
            rows.append(RowCheck(n, f1 is None and f2 is None))
        return _report("sl2-closed-a", self.depth, self.order, rows)

    def verify_gklo_on_module(self, use_engine_series: bool = False) -> ModuleReport:
        """phi+(n) = phi+_{1,0}(n) a(z) / (A+(z) A+(zq^2)) with a(z) = 1-zaq^2;
        rank one has no off-diagonal factors."""
        cd = self.cartan
        ctx = cd.ctx
        N = self.order
        q2 = cd.qi_pow(1, 2)
        az = linear_power(ctx, self.a * ctx.qpow(2), 1, N)
        rows = []
        for n in range(self.depth + 1):
            aplus = self.script_plus(n) if use_engine_series else self.closed_script_plus(n)
            rhs = (aplus * aplus.rescale(q2)).invert() * az
            rhs = PowerSeries(ctx, [self.weight(n) * c for c in rhs.coeffs], 0,
                              Direction.AT_ZERO)
            fail = self.phi_plus(n).first_difference(rhs)
            rows.append(RowCheck(n, fail is None))
        return _report("sl2-gklo+", self.depth, N, rows)

    def verify_truncation_relations(self) -> ModuleReport:
        """Per basis vector: (a) the modified A-series is polynomial of degree
        t = 1; (b) the negative coefficients satisfy the quotient relation
        A-_k = A-_{-1} A+_{k+1}; (c) the simply-connected scalar relation
        holds; (d) the balanced pattern u q^{-2n} with u = -a."""
        ctx = self.cartan.ctx
        N = self.order
        a_dom = -self.a * ctx.qpow(2)   # dominant coefficient of 1 - zaq^2
        a_const = ctx.one
        u_top = -self.a
        q = ctx.qpow(1)
        rows = []
        for n in range(self.depth + 1):
            ap = self.script_plus(n)
            am = self.script_minus(n)
            ok = all(ap.coeff(k).is_zero() for k in range(2, N + 1))
            detail = []
            if not ok:
                detail.append("degree above t=1")
            # (b): indices of am are k = -(w exponent); A+_{k+1} vanishes
            # outside {0,1}, so the window check is k in [-N, N]
            am_m1 = am.coeff(1)  # coefficient of z^{-1}
            for k in range(-N, N):
                lhs = am.coeff(-k)
                rhs = am_m1 * ap.coeff(k + 1) if k + 1 >= 0 else ctx.zero
                if not (lhs - rhs).is_zero():
                    ok = False
                    detail.append(f"quotient relation fails at k={k}")
                    break
            # (c): a_{1,1} phi+_{1,0} = a_{1,0} phi-_{1,-1} (A+_{1,1} q)^2
            lhs = a_dom * self.weight(n)
            rhs = a_const * self.phi_minus_lead(n) * (ap.coeff(1) * q) ** 2
            if not (lhs - rhs).is_zero():
                ok = False
                detail.append("simply-connected scalar relation fails")
            # (d): balanced pattern
            if not (ap.coeff(1) - u_top * ctx.qpow(-2 * n)).is_zero():
                ok = False
                detail.append("balanced pattern fails")
            rows.append(RowCheck(n, ok, "; ".join(detail)))
        return _report("sl2-truncation-relations", self.depth, N, rows)

    def descent_conditions(self, z1: ParamField | None = None) -> "DescentReport":
        """Intermediate and adjoint descent verdicts.

        The intermediate residual is rhs - v = (b^2 - a^2)/a, zero exactly when
        b^2 = a^2.  When a flavour candidate z1 is supplied, the adjoint
        analysis runs: theta_n = sqrt(a) q^{-n} solves the theta-system, and
        the obstruction to extending is phi+_{1,0}(n) - theta_n^2, normalized
        to the n-independent residual b - a; the residual z1^2 + aq^2 of the
        flavour equation is reported as data (it vanishes under the paper's
        hypothesis that z1 is a square root of -aq^2, which has no exact
        witness over a free parameter field).
        """
        ctx = self.cartan.ctx
        a, b = self.a, self.b
        rows = []
        v_expected = -b * b * a.inverse()
        rhs = -a
        for n in range(self.depth + 1):
            prod = self.weight(n) * self.phi_minus_lead(n)
            rows.append(RowCheck(n, (prod - v_expected).is_zero()))
        central_ok = all(r.passed for r in rows)
        inter_residual = rhs - v_expected           # (b^2 - a^2)/a
        adjoint = None
        if z1 is not None:
            z1 = ctx.of(z1)
            if z1.is_zero():
                raise ZeroFlavor("flavour parameter must be nonzero")
            theta_rows = []
            for n in range(self.depth + 1):
                theta = self.sqrt_a * ctx.qpow(-n)
                ok = (theta * theta - a * ctx.qpow(-2 * n)).is_zero()
                resid = (self.weight(n) - theta * theta) * ctx.qpow(2 * n)
                ok = ok and (resid - (b - a)).is_zero()
                theta_rows.append(RowCheck(n, ok))
            adjoint = AdjointData(
                residual=b - a,
                holds=(b - a).is_zero(),
                flavor_residual=z1 * z1 + a * ctx.qpow(2),
                theta_rows=tuple(theta_rows),
            )
        return DescentReport(
            depth=self.depth,
            central_scalar_ok=central_ok,
            central_rows=tuple(rows),
            intermediate_residual=inter_residual,
            intermediate_holds=inter_residual.is_zero(),
            adjoint=adjoint,
        )


@dataclass(frozen=True)
class AdjointData:
    residual: ParamField
    holds: bool
    flavor_residual: ParamField
    theta_rows: tuple

    def to_dict(self):
        return {
            "residual": str(self.residual),
            "holds": self.holds,
            "flavor_residual": str(self.flavor_residual),
            "theta_system": [r.to_dict() for r in self.theta_rows],
        }


@dataclass(frozen=True)
class DescentReport:
    depth: int
    central_scalar_ok: bool
    central_rows: tuple
    intermediate_residual: ParamField
    intermediate_holds: bool
    adjoint: AdjointData | None

    def to_dict(self):
        out = {
            "check": "sl2-descent",
            "depth": self.depth,
            "central_scalar_constant": self.central_scalar_ok,
            "intermediate_residual": str(self.intermediate_residual),
            "intermediate_holds": self.intermediate_holds,
        }
        if self.adjoint is not None:
            out["adjoint"] = self.adjoint.to_dict()
        return out


def build_module(cd: CartanDatum, sqrt_a, sqrt_b, depth: int, order: int) -> Sl2NegPrefundModule:
    return Sl2NegPrefundModule(cd, sqrt_a, sqrt_b, depth, order)


def top_row_cross_check(module: Sl2NegPrefundModule) -> bool:
    """The n = 0 scalar ledger agrees with the generic truncation pipeline."""
    cd = module.cartan
    f = module.lweight(0)
    scal = top_scalars(f, module.trunc_param, module.order)
    u_ok = (scal.u[0] + module.a).is_zero()
    v_ok = (scal.v[0] + module.b * module.b * module.a.inverse()).is_zero()
    rhs_ok = (scal.intermediate_rhs[0] + module.a).is_zero()
    return u_ok and v_ok and rhs_ok
