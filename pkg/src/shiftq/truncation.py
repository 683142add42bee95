"""Truncatability solving, truncation parameters, and the scalar ledger.

The linear system sum_j c_ji t_j = n_i - m_i is solved exactly over Q; a pair
is truncatable when every t_j is a nonnegative integer.  The scalar ledger
(dominant coefficients u_i, central scalars v_i, the intermediate right-hand
sides and the lambda'-squares) follows the top-weight-space computation, where
every operator in sight acts by an explicit scalar.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cartan import CartanDatum
from .engine import PolynomialProfile, extract_polynomial, script_a_eig
from .errors import NotPolynomial, NotPolynomialSeries, NotTruncatable, ZeroFlavor
from .lweight import Coweight, LWeight, tilde_map
from .scalars import ParamField
from .series import DEFAULT_ORDER


def solve_truncatable(cd: CartanDatum, n: Coweight, m: Coweight):
    """Solve sum_j c_ji t_j = n_i - m_i exactly; report integrality.

    Returns (t, truncatable, failing) where t is a tuple of Fractions and
    failing lists the 1-based coordinates that break nonnegative integrality.
    """
    if not n.is_dominant:
        raise ValueError("the truncation coweight must be dominant")
    r = cd.rank
    # augmented system A x = rhs with A[i][j] = c_ji
    a = [[Fraction(cd.cartan[j][i]) for j in range(r)] for i in range(r)]
    rhs = [Fraction(n[i] - m[i]) for i in range(r)]
    for col in range(r):
        piv = next(row for row in range(col, r) if a[row][col])
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        rhs[col] *= inv
        for row in range(r):
            if row == col or not a[row][col]:
                continue
            f = a[row][col]
            a[row] = [x - f * y for x, y in zip(a[row], a[col])]
            rhs[row] -= f * rhs[col]
    t = tuple(rhs)
    failing = tuple(i + 1 for i, x in enumerate(t) if x.denominator != 1 or x < 0)
    return t, not failing, failing


def truncation_parameter(ms, ns):
    """a = prod(ms) * prod(tilde(ns)) plus the shift coweight mu."""
    if not ms and not ns:
        raise ValueError("need at least one l-weight (or pass explicit unit weights)")
    cd = (ms[0] if ms else ns[0]).cartan
    for x in itertools.chain(ms, ns):
        if not x.is_polynomial:
            raise NotPolynomial("truncation parameters are built from polynomial l-weights")
    a = LWeight.unit(cd)
    mu = Coweight((0,) * cd.rank)
    for mk in ms:
        a = a * mk
        mu = mu + mk.coweight()
    for nk in ns:
        a = a * tilde_map(nk)
        mu = mu - nk.coweight()
    return a, mu


@dataclass(frozen=True)
class FlavorCheck:
    node: int
    passed: bool
    lhs: ParamField
    rhs: ParamField

    def to_dict(self):
        return {"node": self.node, "pass": self.passed,
                "lhs": str(self.lhs), "rhs": str(self.rhs)}


def verify_flavor_z(a: LWeight, z) -> tuple:
    """Check prod_j z_j^{c_ji} = a_{i,n_i} / a_{i,0} for all i, exactly."""
    cd = a.cartan
    z = tuple(cd.ctx.of(x) for x in z)
    if len(z) != cd.rank:
        raise ValueError("flavour tuple must have one entry per node")
    if any(x.is_zero() for x in z):
        raise ZeroFlavor("flavour parameters must be nonzero")
    out = []
    for i in cd.nodes:
        ii = cd.index(i)
        lhs = cd.ctx.one
        for j in cd.nodes:
            cji = cd.cartan[cd.index(j)][ii]
            if cji:
                lhs = lhs * z[cd.index(j)] ** cji
        rhs = a.dominant_coefficient(i) * a.constant_term(i).inverse()
        out.append(FlavorCheck(i, (lhs - rhs).is_zero(), lhs, rhs))
    return tuple(out)


@dataclass(frozen=True)
class TopScalars:
    u: tuple                 # dominant coefficients of the p_i
    v: tuple                 # scalars of the central elements
    intermediate_rhs: tuple
    lambda_prime_sq: tuple
    p_series: tuple
    profiles: tuple

    def to_dict(self):
        return {
            "u": [str(x) for x in self.u],
            "v": [str(x) for x in self.v],
            "intermediate_rhs": [str(x) for x in self.intermediate_rhs],
            "lambda_prime_sq": [str(x) for x in self.lambda_prime_sq],
            "p_degrees": [p.degree for p in self.profiles],
        }


def top_scalars(f: LWeight, a: LWeight, order: int = DEFAULT_ORDER,
                t: tuple | None = None) -> TopScalars:
    """The scalar ledger on the one-dimensional top weight space.

    u_i is the dominant coefficient of p_i(z), the eigenvalue of the modified
    A-series; v_i the scalar of the central element; the remaining entries are
    the closed forms whose equality with v_i decides intermediate descent.
    """
    cd = f.cartan
    ctx = cd.ctx
    if t is None:
        t, ok, failing = solve_truncatable(cd, a.coweight(), f.coweight())
        if not ok:
            raise NotTruncatable(f"t = {t} fails nonnegative integrality at {failing}")
    tint = tuple(int(x) for x in t)
    lam = f.consts
    profiles: list[PolynomialProfile] = []
    p_series = []
    for i in cd.nodes:
        p = script_a_eig(f, a, i, 1, order)
        prof = extract_polynomial(p, expected_degree=tint[cd.index(i)])
        if not prof.matches_expected:
            raise NotPolynomialSeries(
                f"modified A-series at node {i} is not polynomial of degree "
                f"{tint[cd.index(i)]} to order {order}")
        p_series.append(p)
        profiles.append(prof)
    u = tuple(prof.dominant_coefficient for prof in profiles)
    v = []
    rhs = []
    lps = []
    for i in cd.nodes:
        ii = cd.index(i)
        ratio = a.dominant_coefficient(i) * a.constant_term(i).inverse()
        vi = lam[ii] ** 2 * ratio
        rhsi = ratio
        lpsi = lam[ii] ** -2
        for j in cd.nodes:
            jj = cd.index(j)
            cji = cd.cartan[jj][ii]
            if not cji:
                continue
            vi = vi * (u[jj] * cd.qi_pow(j, tint[jj])) ** (-cji)
            rhsi = rhsi * (-cd.qi(j)) ** (-tint[jj] * cji)
            sign = -1 if tint[jj] % 2 else 1
            lpsi = lpsi * (sign * u[jj]) ** cji
        v.append(vi)
        rhs.append(rhsi)
        lps.append(lpsi)
    return TopScalars(u, tuple(v), tuple(rhs), tuple(lps),
                      tuple(p_series), tuple(profiles))


@dataclass(frozen=True)
class TruncationReport:
    type_name: str
    rank: int
    mu: Coweight
    nu: Coweight
    t: tuple
    truncatable: bool
    failing: tuple
    parameter: LWeight
    lweight: LWeight
    order: int
    scalars: TopScalars | None
    intermediate_ok: tuple | None       # per-node v_i == rhs_i
    intermediate_residual: tuple | None
    flavor: tuple | None
    balanced: tuple | None              # ((beta, (scalar per node)), ...)

    @property
    def polynomial_ok(self) -> bool:
        return self.scalars is not None

    @property
    def intermediate_descends(self) -> bool | None:
        if self.intermediate_ok is None:
            return None
        return all(self.intermediate_ok)

    def to_dict(self):
        out = {
            "type": self.type_name,
            "rank": self.rank,
            "mu": list(self.mu.coords),
            "nu": list(self.nu.coords),
            "t": [str(x) for x in self.t],
            "truncatable": self.truncatable,
            "failing_coordinates": list(self.failing),
            "parameter": str(self.parameter),
            "lweight": str(self.lweight),
            "order": self.order,
        }
        if self.scalars is not None:
            out["scalars"] = self.scalars.to_dict()
            out["p"] = [str(p) for p in self.scalars.p_series]
            out["intermediate_descends"] = self.intermediate_descends
            out["intermediate_residual"] = [str(x) for x in self.intermediate_residual]
        if self.flavor is not None:
            out["flavor"] = [fc.to_dict() for fc in self.flavor]
            out["flavor_ok"] = all(fc.passed for fc in self.flavor)
        if self.balanced is not None:
            out["balanced_predictions"] = [
                {"beta": list(beta), "scalars": [str(x) for x in row]}
                for beta, row in self.balanced
            ]
        return out


def balanced_predictions(cd: CartanDatum, u: tuple, height: int = 2) -> tuple:
    """Predicted eigenvalues u_i * q_i^{-2 beta_i} of the top modified-A
    coefficient on the weight space at depth beta, for beta in the cone of
    nonnegative root-coordinates of bounded height."""
    out = []
    rng = range(height + 1)
    for beta in itertools.product(rng, repeat=cd.rank):
        if sum(beta) > height or not any(beta):
            continue
        row = tuple(u[cd.index(i)] * cd.qi_pow(i, -2 * beta[cd.index(i)])
                    for i in cd.nodes)
        out.append((beta, row))
    return tuple(out)


def plan_truncation(ms, ns, lam=None, z=None, order: int = DEFAULT_ORDER,
                    cartan: CartanDatum | None = None) -> TruncationReport:
    """Full pipeline: truncation parameter, solver, polynomiality of every
    p_i, the scalar ledger, and the optional flavour check."""
    if not ms and not ns:
        if cartan is None:
            raise ValueError("pass the Cartan datum for an empty plan")
        cd = cartan
        a = LWeight.unit(cd)
        mu = Coweight((0,) * cd.rank)
    else:
        a, mu = truncation_parameter(ms, ns)
        cd = a.cartan
    nu = a.coweight()
    f = LWeight.unit(cd)
    for mk in ms:
        f = f * mk
    for nk in ns:
        f = f * nk.inverse()
    if lam is not None:
        f = f * LWeight.constant(cd, lam)
    t, truncatable, failing = solve_truncatable(cd, nu, mu)
    scalars = None
    inter_ok = None
    inter_res = None
    balanced = None
    if truncatable:
        scalars = top_scalars(f, a, order, t=t)
        inter_ok = tuple((v - r).is_zero() for v, r in zip(scalars.v, scalars.intermediate_rhs))
        inter_res = tuple(r - v for v, r in zip(scalars.v, scalars.intermediate_rhs))
        balanced = balanced_predictions(cd, scalars.u)
    flavor = verify_flavor_z(a, z) if z is not None else None
    return TruncationReport(
        type_name=cd.type_name,
        rank=cd.rank,
        mu=mu,
        nu=nu,
        t=t,
        truncatable=truncatable,
        failing=failing,
        parameter=a,
        lweight=f,
        order=order,
        scalars=scalars,
        intermediate_ok=inter_ok,
        intermediate_residual=inter_res,
        flavor=flavor,
        balanced=balanced,
    )
