from fractions import Fraction as Fr

import mpmath
import pytest

from stieltjes_cf.catalog import (
    closed_form_ck,
    erfc_model,
    euler_model,
    lerch_model,
    log_model,
    parse_model,
    pochhammer_form_b,
    power_form_b,
)
from stieltjes_cf.facseries import eval_truncated, tail_magnitude
from stieltjes_cf.numkernel import DomainError, PrecisionContext
from stieltjes_cf.stieltjes import build_cf_series, model_b_coeffs, phi_oracle, reconstruct_F

GRID = [(b, z) for b in (Fr(0), Fr(1, 2), Fr(1), Fr(2)) for z in (Fr(1, 3), Fr(1), Fr(7, 2))]


def test_euler_basics():
    e = euler_model()
    assert e.model.moment(4) == 24
    assert model_b_coeffs(e.model, 4, 0) == (1, -1, 0, 0)
    assert closed_form_ck(e, 1, 2, 5) == -3


@pytest.mark.parametrize("beta,z", GRID)
def test_euler_c2(beta, z):
    want = (beta**2 + beta + z**2 - 2 * (beta + 1) * z) / 2
    assert closed_form_ck(euler_model(), 2, beta, z) == want
    assert build_cf_series(euler_model().model, beta, z, 3).coeffs[2] == want


def test_pochhammer_and_power_forms():
    assert pochhammer_form_b(4, 1) == power_form_b(4, 1)
    assert pochhammer_form_b(2, 0) == power_form_b(2, 0)
    # they part ways at k = 2 away from beta = 1
    assert pochhammer_form_b(3, 0)[2] == 0
    assert power_form_b(3, 0)[2] == Fr(1, 2)
    assert pochhammer_form_b(3, 2)[2] == 1
    assert power_form_b(3, 2)[2] == Fr(1, 2)


def test_erfc_basics():
    ctx = PrecisionContext(30)
    m = erfc_model().model
    assert abs(m.moment(0, ctx) - ctx.sqrt_pi) < 1e-28
    assert abs(m.moment(1, ctx) - ctx.sqrt_pi / 2) < 1e-28
    assert m.moment_ratio(3) == Fr(2, 7)
    cf = build_cf_series(m, 1, 1, 2)
    assert cf.series.beta + 5 == Fr(11, 2)
    with pytest.raises(TypeError):
        m.moment(1)


def test_erfc_series_against_oracle():
    ctx = PrecisionContext(40)
    m = erfc_model().model
    cf = build_cf_series(m, 1, 4, 31)
    approx = eval_truncated(cf.series.truncate(30), 10, ctx)
    diff = abs(ctx.real(approx) - phi_oracle(m, 10, 4, ctx))
    assert diff <= 10 * ctx.real(tail_magnitude(cf.series, 10, 30))


def test_erfc_reference():
    ctx = PrecisionContext(30)
    with mpmath.workdps(40):
        ref = mpmath.pi * mpmath.exp(2) * mpmath.erfc(mpmath.sqrt(2)) / mpmath.sqrt(2)
    assert abs(erfc_model().model.reference_F(2, ctx) - ref) < 1e-27


def test_log_basics():
    ctx = PrecisionContext(30)
    lg = log_model()
    assert lg.model.moment_ratio(4) == 1 + Fr(1, 5)
    assert closed_form_ck(lg, 0, Fr(3, 2), 2) == Fr(1, 9)
    assert closed_form_ck(lg, 1, 0, 1) == Fr(-1, 4)
    assert abs(lg.model.reference_F(1, ctx) - ctx.mp.log(2)) < 1e-29


@pytest.mark.parametrize("beta,z", GRID)
def test_log_closed_form_matches_recursion(beta, z):
    c = build_cf_series(log_model().model, beta, z, 16).coeffs
    assert all(c[k] == closed_form_ck(log_model(), k, beta, z) for k in range(16))


def test_lerch_alpha_half_s_two():
    a, s = Fr(1, 2), Fr(2)
    m = lerch_model(a, s).model
    assert m.rho_expansion(4, 0).rho == (2, 0, Fr(-1, 2), Fr(1, 2))
    assert model_b_coeffs(m, 4, 0) == (2, 0, Fr(-1, 4), Fr(-1, 6))
    assert build_cf_series(m, 0, 1, 2).coeffs == (Fr(1, 2), Fr(-1, 4))


def test_lerch_noninteger_s_formulas():
    a, s = Fr(3, 4), Fr(5, 2)
    b = model_b_coeffs(lerch_model(a, s).model, 3, 0)
    assert b[1] == s * (s - 1 - 2 * a) / 2
    assert b[2] == s * (s**2 - 1 - 6 * s * a + 6 * a**2) / 12


def test_lerch_beta_shift_is_alpha_shift():
    s, z = Fr(3), Fr(2, 3)
    for a, beta in ((Fr(5, 2), Fr(1)), (Fr(3), Fr(1, 2))):
        shifted = build_cf_series(lerch_model(a, s).model, beta, z, 6).coeffs
        moved = build_cf_series(lerch_model(a - beta, s).model, 0, z, 6).coeffs
        assert shifted == moved


def test_lerch_reference_against_lerchphi():
    ctx = PrecisionContext(30)
    for a, s, z in ((Fr(1, 2), 2, 3), (Fr(1), 3, Fr(3, 2))):
        m = lerch_model(a, s).model
        with mpmath.workdps(40):
            zz = mpmath.mpf(z.numerator) / z.denominator if isinstance(z, Fr) else mpmath.mpf(z)
            ref = mpmath.lerchphi(-1 / zz, s, mpmath.mpf(a.numerator) / a.denominator) / zz
        assert abs(m.reference_F(z, ctx) - ref) < 1e-27


def test_lerch_reconstruction():
    ctx = PrecisionContext(40)
    m = lerch_model(Fr(1, 2), 2).model
    err = abs(reconstruct_F(m, 6, 2, 1, 20, ctx) - m.reference_F(2, ctx))
    assert err < 1e-9


def test_lerch_domain():
    with pytest.raises(DomainError):
        lerch_model(0, 2)
    with pytest.raises(DomainError):
        lerch_model(1, 1)
    m = lerch_model(1, 2)
    assert not m.model.has_reference(1)
    with pytest.raises(DomainError):
        m.model.reference_F(1, PrecisionContext(20))
    with pytest.raises(DomainError):
        closed_form_ck(m, 0, 0, 1)


def test_lerch_real_s_moments():
    ctx = PrecisionContext(30)
    m = lerch_model(1, Fr(5, 2)).model
    assert abs(m.moment(3, ctx) - ctx.mp.mpf(4) ** -2.5) < 1e-28
    with pytest.raises(TypeError):
        m.moment(3)


def test_parse_model():
    assert parse_model("euler") is euler_model()
    assert parse_model(" log ") is log_model()
    m = parse_model("lerch:alpha=1/2,s=2.5").model
    assert (m.alpha, m.s) == (Fr(1, 2), Fr(5, 2))
    for bad in ("gauss", "lerch:alpha=1", "lerch:alpha=1,t=2", "lerch:alpha=x,s=2", "lerch:alpha=0,s=2"):
        with pytest.raises(DomainError):
            parse_model(bad)
