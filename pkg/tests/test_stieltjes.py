from fractions import Fraction as Fr

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stieltjes_cf.catalog import euler_model, lerch_model, log_model
from stieltjes_cf.facseries import FactorialSeries, advance_index, product_coeff
from stieltjes_cf.numkernel import DomainError, PoleError, PrecisionContext
from stieltjes_cf.stieltjes import (
    build_cf_series,
    cf_coeffs,
    model_b_coeffs,
    partial_sum,
    partial_sums,
    phi_forward,
    phi_infinity,
    phi_oracle,
    reconstruct_F,
    series_term,
)

EULER = euler_model().model
LOG = log_model().model


def test_phi_infinity():
    assert phi_infinity(0, 3) == 0
    assert phi_infinity(1, 1) == Fr(1, 2)
    assert phi_infinity(Fr(1, 2), 4) == Fr(1, 6)
    with pytest.raises(PoleError):
        phi_infinity(-1, 1)


def test_first_coefficient():
    assert cf_coeffs([Fr(3)], 1, 2, 1) == (Fr(1, 3),)
    assert cf_coeffs([1, -1], 0, 1, 2) == (1, -1)


def test_cf_coeffs_exact_and_float_agree():
    ctx = PrecisionContext(40)
    b = model_b_coeffs(LOG, 12, Fr(1, 2))
    exact = cf_coeffs(b, 1, Fr(7, 2), 12)
    approx = cf_coeffs(b, 1, ctx.real(Fr(7, 2)), 12, ctx)
    for e, a in zip(exact, approx):
        assert abs(ctx.real(e) - a) < 1e-35 * max(1, abs(a))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.fractions(-4, 4, max_denominator=6), min_size=2, max_size=7),
    st.fractions(0, 3, max_denominator=4),
    st.fractions(Fr(1, 8), 5, max_denominator=8),
)
def test_recursion_solves_the_shifted_equation(b, rho0, z):
    # phi(m+1) = (rho0 + B(m)) (1 - z phi(m)) coefficient by coefficient
    K = len(b)
    c = cf_coeffs(b, rho0, z, K)
    q = 1 + z * rho0
    shifted = advance_index(FactorialSeries(0, 0, c)).coeffs
    for k in range(K):
        d = product_coeff(b, c, k) if k else 0
        assert shifted[k] == b[k] / q - z * rho0 * c[k] - z * d


def test_b_sources_agree():
    for model in (EULER, LOG):
        for beta in (Fr(0), Fr(1, 2), Fr(3)):
            assert model_b_coeffs(model, 10, beta, "closed") == model_b_coeffs(model, 10, beta, "rho")
    with pytest.raises(DomainError):
        model_b_coeffs(lerch_model(1, 2).model, 3, 0, "closed")
    with pytest.raises(ValueError):
        model_b_coeffs(EULER, 3, 0, "guess")


def test_build_domain():
    with pytest.raises(DomainError):
        build_cf_series(EULER, 1, 0, 3)
    with pytest.raises(DomainError):
        build_cf_series(EULER, -1, 1, 3)
    empty = build_cf_series(LOG, 1, 1, 0)
    assert empty.coeffs == () and empty.series.limit == Fr(1, 2)


def test_partial_sums():
    assert partial_sum(EULER, -1, 1) == 0
    assert partial_sums(EULER, 3, 1) == [1, 0, 2, -4]
    assert series_term(LOG, 2, 2) == Fr(1, 24)
    with pytest.raises(DomainError):
        partial_sum(EULER, -2, 1)


def test_euler_oracle_values():
    ctx = PrecisionContext(40)
    assert ctx.mp.nstr(phi_oracle(EULER, 0, 1, ctx), 30) == "0.596347362323194074341078499369"
    assert ctx.mp.nstr(phi_oracle(EULER, 1, 1, ctx), 30) == "0.403652637676805925658921500631"


@pytest.mark.parametrize("m,z", [(0, 1), (3, 2), (9, Fr(1, 2))])
def test_euler_oracle_against_quadrature(m, z):
    # phi_m = (1/m!) int_0^inf t^m e^-t / (t + z) dt
    ctx = PrecisionContext(30)
    with mpmath.workdps(40):
        zz = mpmath.mpf(Fr(z).numerator) / Fr(z).denominator
        ref = mpmath.quad(lambda t: t**m * mpmath.exp(-t) / (t + zz), [0, 1, 10, mpmath.inf])
        ref /= mpmath.factorial(m)
    assert abs(phi_oracle(EULER, m, z, ctx) - ref) < 1e-25


@pytest.mark.parametrize("m", [0, 5, 200])
def test_log_oracle_against_quadrature(m):
    # dmu = dt on [0, 1]: phi_m = (m + 1) int_0^1 t^m / (t + 1) dt
    ctx = PrecisionContext(30)
    with mpmath.workdps(40):
        ref = (m + 1) * mpmath.quad(lambda t: t**m / (t + 1), [0, 0.5, 0.9, 0.99, 1])
    assert abs(phi_oracle(LOG, m, 1, ctx) - ref) < 1e-25


def test_log_phi_approaches_half_slowly():
    # phi_m(1) - 1/2 behaves like 1/(4 m); at m = 200 it is still ~1.2e-3
    ctx = PrecisionContext(30)
    gap = phi_oracle(LOG, 200, 1, ctx) - ctx.mp.mpf(1) / 2
    assert 1.2e-3 < gap < 1.3e-3
    assert abs(gap * 4 * 202 - 1) < 0.01


def test_oracle_satisfies_recurrence():
    ctx = PrecisionContext(40)
    for model, z in ((EULER, 3), (LOG, Fr(1, 3))):
        phis = [phi_oracle(model, m, z, ctx) for m in range(8)]
        for m in range(7):
            r = ctx.real(model.moment_ratio(m))
            assert abs(phis[m + 1] - r * (1 - ctx.real(z) * phis[m])) < 1e-30


def test_forward_recursion_and_loss_flag():
    ctx = PrecisionContext(32)
    phi0 = phi_oracle(EULER, 0, 1, ctx)
    run = phi_forward(EULER, phi0, 1, 20, ctx)
    assert not run.accuracy_loss
    assert abs(run.values[12] - phi_oracle(EULER, 12, 1, ctx)) < 1e-25
    # log at z = 3 amplifies errors by about 3 per step
    run = phi_forward(LOG, phi_oracle(LOG, 0, 3, ctx), 3, 60, ctx)
    assert run.accuracy_loss
    assert 30 <= run.loss_index <= 36


def test_reconstruct_limit_only_and_full():
    ctx = PrecisionContext(40)
    ref = ctx.mp.log(2)
    crude = abs(reconstruct_F(LOG, 4, 1, 1, 0, ctx) - ref)
    fine = abs(reconstruct_F(LOG, 4, 1, 1, 25, ctx) - ref)
    assert fine < 1e-12 < crude
    e3 = ctx.mp.exp(3) * ctx.mp.e1(3)
    assert ctx.mp.nstr(e3, 13) == "0.2620837402553"
    assert abs(reconstruct_F(EULER, 5, 3, 1, 25, ctx) - e3) < 1e-7
