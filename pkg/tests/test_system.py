"""점화식 시스템, 경우 정규화, 재전개 테스트"""

import math

import mpmath

import pytest
pytest.importorskip("hypothesis")
import hypothesis as h
import hypothesis.strategies as st

from uniasym.core.system import (
    CaseTransform,
    RecurrenceSystem,
    canonicalize,
    fit_series_from_coefficients,
    order_nu,
    shift_and_recast,
    transition_points,
)
from uniasym.utils.errors import (
    DomainError,
    ImaginaryOrderError,
    UnsupportedThetaError,
    ValidationError,
)


def laguerre_like(alpha0=-1.0, beta0=2.0):
    return RecurrenceSystem(theta=1.0, alpha_series=(alpha0, 0.5), beta_series=(beta0, 0.0, -0.25))


def test_exceptional_theta_rejected():
    with pytest.raises(UnsupportedThetaError):
        RecurrenceSystem(theta=2.0, alpha_series=(-1.0,), beta_series=(2.0, 0.0, 0.0))
    with pytest.raises(UnsupportedThetaError):
        RecurrenceSystem(theta=0.0, alpha_series=(-1.0,), beta_series=(2.0, 0.0, 0.0))


def test_zero_leading_alpha_rejected():
    with pytest.raises(ValidationError, match="alpha_0"):
        RecurrenceSystem(theta=1.0, alpha_series=(0.0, 1.0), beta_series=(2.0, 0.0, 0.0))


def test_series_coefficients_float_and_mp():
    system = laguerre_like()
    a, b = system.series_coefficients(10)
    assert a == pytest.approx((-1.0 + 0.05) / 10.0)
    assert b == pytest.approx(2.0 - 0.0025)
    ctx = mpmath.MPContext()
    ctx.dps = 40
    a_mp, b_mp = system.series_coefficients(10, ctx)
    assert float(a_mp) == pytest.approx(a, rel=1e-15)
    assert float(b_mp) == pytest.approx(b, rel=1e-15)
    assert system.coefficient_source() == system.series_coefficients


def test_canonical_case_is_identity():
    system = laguerre_like()
    canonical, transform = canonicalize(system)
    assert canonical is system
    assert transform.is_identity


@pytest.mark.parametrize("alpha0, beta0, parity, axis", [
    (1.0, 2.0, False, True),
    (1.0, -2.0, True, False),
    (-1.0, -2.0, True, True),
])
def test_sign_cases_reduce_to_canonical(alpha0, beta0, parity, axis):
    canonical, transform = canonicalize(laguerre_like(alpha0, beta0))
    assert canonical.alpha_series[0] < 0.0
    assert canonical.beta_series[0] == 2.0
    assert transform == CaseTransform(parity_flip=parity, axis_flip=axis)


@pytest.mark.parametrize("alpha0, beta0", [(1.0, 2.0), (1.0, -2.0), (-1.0, -2.0)])
def test_canonical_solution_maps_back(alpha0, beta0):
    # 정규 시스템의 해를 변환으로 되돌리면 원래 점화식을 만족해야 한다
    system = laguerre_like(alpha0, beta0)
    canonical, transform = canonicalize(system)
    x = 0.37
    xc = transform.canonical_t(x)
    values = [1.0, 0.3]
    for n in range(1, 30):
        a, b = canonical.series_coefficients(n)
        values.append((a * xc + b) * values[n] - values[n - 1])
    user = [transform.apply(n, v) for n, v in enumerate(values)]
    for n in range(1, 29):
        a, b = system.series_coefficients(n)
        assert user[n + 1] - (a * x + b) * user[n] + user[n - 1] == pytest.approx(0.0, abs=1e-9 * max(1.0, abs(user[n])))


def test_canonicalize_flips_exact_source():
    def source(n, ctx=None):
        return 1.0 / n, -2.0
    system = RecurrenceSystem(1.0, (1.0, 0.0), (-2.0, 0.0, 0.0), exact_coeffs=source)
    canonical, _ = canonicalize(system)
    assert canonical.exact_coeffs(4) == (-0.25, 2.0)


def test_off_origin_transition_rejected():
    with pytest.raises(ValidationError, match="transition point is not at the origin"):
        canonicalize(laguerre_like(beta0=1.0))


def test_shift_and_recast_laguerre_leading_terms():
    tau0, alpha_p, beta_p = shift_and_recast(laguerre_like())
    assert tau0 == pytest.approx(0.5)
    assert alpha_p[0] == -1.0
    assert alpha_p[1] == 0.0
    assert beta_p == pytest.approx((2.0, 0.0, -0.25))


def test_shift_and_recast_rejects_short_or_odd_beta():
    with pytest.raises(ValidationError, match="beta_2"):
        shift_and_recast(RecurrenceSystem(1.0, (-1.0, 0.5), (2.0, 0.0)))
    with pytest.raises(ValidationError, match="beta_1"):
        shift_and_recast(RecurrenceSystem(1.0, (-1.0, 0.5), (2.0, 0.1, 0.0)))


@h.given(
    st.floats(min_value=0.3, max_value=1.8),
    st.floats(min_value=-3.0, max_value=-0.2),
    st.floats(min_value=-2.0, max_value=2.0),
    st.floats(min_value=-1.0, max_value=1.0),
    st.floats(min_value=-0.2, max_value=1.0),
)
def test_recast_reproduces_coefficients(theta, alpha0, alpha1, alpha2, beta2):
    system = RecurrenceSystem(theta, (alpha0, alpha1, alpha2), (2.0, 0.0, beta2))
    tau0, alpha_p, beta_p = shift_and_recast(system)
    n = 1.0e5
    big_n = n + tau0
    a_user = n ** (-theta) * (alpha0 + alpha1 / n + alpha2 / n ** 2)
    a_shift = big_n ** (-theta) * sum(c * big_n ** (-s) for s, c in enumerate(alpha_p))
    b_user = 2.0 + beta2 / n ** 2
    b_shift = sum(c * big_n ** (-s) for s, c in enumerate(beta_p))
    assert a_shift == pytest.approx(a_user, rel=1e-9)
    assert b_shift == pytest.approx(b_user, abs=1e-12)


def test_transition_points():
    assert transition_points(-1.0, 2.0) == (0.0, 4.0)
    t1, t2 = transition_points(-0.5, 2.0)
    assert math.copysign(1.0, t1) == 1.0
    assert t2 == 8.0
    with pytest.raises(ValidationError):
        transition_points(1.0, 2.0)


def test_order_nu():
    assert order_nu(1.0, 0.0) == 1.0
    assert order_nu(1.0, -0.25) == 0.0
    assert order_nu(0.5, 0.0) == pytest.approx(2.0 / 3.0)
    assert order_nu(1.0, -0.1875) == pytest.approx(0.5)
    assert order_nu(1.0, -0.1875, branch="negative") == pytest.approx(-0.5)
    with pytest.raises(ImaginaryOrderError):
        order_nu(1.0, -0.5)
    with pytest.raises(DomainError):
        order_nu(1.0, 0.0, branch="negative")
    with pytest.raises(DomainError):
        order_nu(1.0, 0.0, branch="sideways")


def test_fit_series_recovers_polynomial_coefficients():
    def source(n, ctx):
        h = ctx.mpf(1) / n
        a = (-1 + ctx.mpf("0.5") * h + ctx.mpf("0.25") * h ** 2) / n
        b = 2 - ctx.mpf("0.3") * h ** 2
        return a, b
    alpha, beta = fit_series_from_coefficients(source, theta=1.0, order=3)
    assert alpha == pytest.approx((-1.0, 0.5, 0.25, 0.0), abs=1e-12)
    assert beta == pytest.approx((2.0, 0.0, -0.3, 0.0), abs=1e-12)


def test_key_distinguishes_systems():
    assert laguerre_like().key != laguerre_like(alpha0=-2.0).key
    assert laguerre_like().key == laguerre_like().key
