"""The explicit rank-one module: closed formulas, relation checks on every
basis vector, and the descent verdicts."""

import pytest

from shiftq import (
    Direction,
    PowerSeries,
    Scalars,
    Sl2NegPrefundModule,
    ZeroParameter,
    build_cartan,
    build_module,
    linear_power,
    prefundamental,
)
from shiftq.sl2 import top_row_cross_check

DEPTH = 4
N = 12


@pytest.fixture(scope="module")
def module():
    ctx = Scalars(params=("alpha", "beta"))
    cd = build_cartan(ctx, "A", 1)
    return build_module(cd, ctx.param("alpha"), ctx.param("beta"), DEPTH, N)


def test_row_lweights(module):
    ctx = module.cartan.ctx
    # n = 0: the numerator factor cancels and the row reduces to b/(1-za)
    lw0 = module.lweight(0)
    assert lw0.factors == ((1, module.a, -1),)
    assert lw0.constant_term(1) == module.b
    # n = 1: three factors survive
    assert len(module.lweight(1).factors) == 3
    assert module.weight(1) == module.b * ctx.qpow(-2)
    assert module.phi_minus_lead(1) == -module.b / module.a * ctx.qpow(2)


def test_closed_a_rows(module):
    ctx = module.cartan.ctx
    for n in (0, 1, 2):
        expect = linear_power(ctx, module.a * ctx.qpow(-2 * n), 1, N)
        assert module.script_plus(n) == expect
        expect_m = linear_power(ctx, module.a.inverse() * ctx.qpow(2 * n), 1, N,
                                Direction.AT_INFINITY)
        assert module.script_minus(n) == expect_m
    assert module.verify_closed_a().passed


def test_phi_formula(module):
    rep = module.verify_phi_formula()
    assert rep.passed and len(rep.rows) == DEPTH + 1


def test_phi_two_expansions_one_rational_function(module):
    # clearing denominators: phi+(n) * (1-zaq^{-2n})(1-zaq^{2-2n}) equals
    # b q^{-2n} (1-zaq^2) as polynomials, and likewise at infinity
    ctx = module.cartan.ctx
    a = module.a
    for n in range(DEPTH + 1):
        d1 = linear_power(ctx, a * ctx.qpow(-2 * n), 1, N)
        d2 = linear_power(ctx, a * ctx.qpow(2 - 2 * n), 1, N)
        lhs = module.phi_plus(n) * d1 * d2
        numer = linear_power(ctx, a * ctx.qpow(2), 1, N)
        rhs = PowerSeries(ctx, [module.weight(n) * c for c in numer.coeffs])
        assert lhs == rhs
        d1w = linear_power(ctx, (a * ctx.qpow(-2 * n)).inverse(), 1, N,
                           Direction.AT_INFINITY)
        d2w = linear_power(ctx, (a * ctx.qpow(2 - 2 * n)).inverse(), 1, N,
                           Direction.AT_INFINITY)
        lhs_w = module.phi_minus(n) * d1w * d2w
        numer_w = linear_power(ctx, (a * ctx.qpow(2)).inverse(), 1, N,
                               Direction.AT_INFINITY)
        lead = module.phi_minus_lead(n)
        rhs_w = PowerSeries(ctx, [lead * c for c in numer_w.coeffs], 0,
                            Direction.AT_INFINITY).shift(1)
        assert lhs_w.first_difference(rhs_w) is None


def test_gklo_on_module(module):
    assert module.verify_gklo_on_module().passed
    assert module.verify_gklo_on_module(use_engine_series=True).passed


def test_gklo_mutation_control(module):
    # replacing a by a+1 inside the A-series only must break the factorization
    ctx = module.cartan.ctx
    a = module.a
    az = linear_power(ctx, a * ctx.qpow(2), 1, N)
    bad = linear_power(ctx, (a + 1) * ctx.qpow(0), 1, N)
    rhs = (bad * bad.rescale(ctx.qpow(2))).invert() * az
    rhs = PowerSeries(ctx, [module.weight(0) * c for c in rhs.coeffs])
    assert module.phi_plus(0).first_difference(rhs) is not None


def test_truncation_relations(module):
    rep = module.verify_truncation_relations()
    assert rep.passed
    # spot check the quotient identity at k = 0 by hand:
    # 1 = (-a^{-1} q^{2n}) * (-a q^{-2n})
    ctx = module.cartan.ctx
    for n in (0, 3):
        lhs = module.script_minus(n).coeff(0)
        rhs = module.script_minus(n).coeff(1) * module.script_plus(n).coeff(1)
        assert lhs.is_one() and rhs.is_one()


def test_balanced_pattern(module):
    ctx = module.cartan.ctx
    u = -module.a
    for n in range(DEPTH + 1):
        assert module.script_plus(n).coeff(1) == u * ctx.qpow(-2 * n)


def test_descent_generic(module):
    ctx = module.cartan.ctx
    a, b = module.a, module.b
    rep = module.descent_conditions(z1=module.sqrt_a * ctx.q)
    assert rep.central_scalar_ok
    assert rep.intermediate_residual == (b * b - a * a) / a
    assert not rep.intermediate_holds
    assert rep.adjoint.residual == b - a
    assert not rep.adjoint.holds
    assert rep.adjoint.flavor_residual == (module.sqrt_a * ctx.q) ** 2 + a * ctx.qpow(2)
    d = rep.to_dict()
    assert d["intermediate_holds"] is False and "adjoint" in d
    # without a flavour candidate the adjoint block is absent
    rep2 = module.descent_conditions()
    assert rep2.adjoint is None


def test_descent_specializations():
    ctx = Scalars(params=("alpha",))
    cd = build_cartan(ctx, "A", 1)
    alpha = ctx.param("alpha")
    a = alpha * alpha
    same = Sl2NegPrefundModule(cd, alpha, alpha, 2, 8)
    rep = same.descent_conditions(z1=ctx.one)
    assert rep.intermediate_holds and rep.adjoint.holds
    flipped = Sl2NegPrefundModule.with_b_value(cd, alpha, -a, 2, 8)
    rep2 = flipped.descent_conditions(z1=ctx.one)
    assert rep2.intermediate_holds
    assert not rep2.adjoint.holds
    assert rep2.adjoint.residual == -2 * a


def test_top_row_matches_generic_machinery(module):
    assert top_row_cross_check(module)


def test_top_row_matches_engine_series(module):
    # n = 0 series agree with the generic engine on f = b/(1-za)
    from shiftq import at_series_eig, realize_series, script_a_eig
    f = module.lweight(0)
    assert realize_series(f, 1, Direction.AT_ZERO, N) == module.phi_plus(0)
    assert realize_series(f, 1, Direction.AT_INFINITY, N) == module.phi_minus(0)
    assert script_a_eig(f, module.trunc_param, 1, 1, N) == module.script_plus(0)
    assert script_a_eig(f, module.trunc_param, 1, -1, N) == module.script_minus(0)


def test_weight_grading(module):
    ctx = module.cartan.ctx
    top = module.weight(0)
    for n in range(DEPTH + 1):
        assert module.weight(n) == top * ctx.qpow(-2 * n)
        assert module.phi_plus(n).coeff(0) == module.weight(n)


def test_module_errors():
    ctx = Scalars(params=("alpha", "beta"))
    cd = build_cartan(ctx, "A", 1)
    with pytest.raises(ZeroParameter):
        Sl2NegPrefundModule(cd, ctx.zero, ctx.param("beta"), 2, 6)
    with pytest.raises(ValueError):
        Sl2NegPrefundModule(cd, ctx.param("alpha"), ctx.param("beta"), 0, 6)
    cd2 = build_cartan(ctx, "A", 2)
    with pytest.raises(ValueError):
        Sl2NegPrefundModule(cd2, ctx.param("alpha"), ctx.param("beta"), 2, 6)
