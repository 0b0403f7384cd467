"""점근 해 평가, Casoratian, 오차 예산 테스트"""

import math

import pytest

from uniasym.components.bessel import TWO_OVER_PI
from uniasym.core.approximant import (
    block_budget,
    block_max_error,
    build_approximant,
    calibrate,
    error_budget,
    eval_P,
    eval_Q,
    evaluate,
    observed_order,
    recurrence_residual,
    shifted_t,
    wronskian,
)
from uniasym.core.system import RecurrenceSystem
from uniasym.utils.errors import CalibrationUnavailableError, DomainError, ValidationError


@pytest.fixture(scope="module")
def leading0(series_system, series_frame):
    return build_approximant(series_system, 0, frame=series_frame)


@pytest.fixture(scope="module")
def leading1(series_system, series_frame):
    return build_approximant(series_system, 1, frame=series_frame)


def test_value_at_origin(leading0):
    result = evaluate(leading0, 100, 0.0)
    # ν = 0, Φ(0) = 4 이므로 P = sqrt(2N)
    assert result.p_value == pytest.approx(math.sqrt(2.0 * 100.5), rel=1e-12)
    assert result.q_value.real == -math.inf
    assert result.log_scale == 0.0
    assert result.regime == "origin-window"


def test_continuity_through_origin(leading0):
    at_zero = evaluate(leading0, 100, 0.0).p_value
    above = evaluate(leading0, 100, 1e-9)
    below = evaluate(leading0, 100, -1e-9)
    assert above.p_value == pytest.approx(at_zero, rel=1e-4)
    assert below.p_value * math.exp(below.log_scale) == pytest.approx(at_zero, rel=1e-4)


def test_oscillatory_pair(leading0):
    result = evaluate(leading0, 100, 2.0)
    assert result.regime == "oscillatory"
    assert result.log_scale == 0.0
    assert result.q_value.imag == pytest.approx(-result.p_value)
    assert result.envelope >= abs(result.p_value)
    assert math.isnan(result.budget)
    assert eval_P(leading0, 100, 2.0).p_value == result.p_value
    assert eval_Q(leading0, 100, 2.0).q_value == result.q_value


def test_negative_ray_is_scaled(leading0):
    result = evaluate(leading0, 100, -2.0)
    assert result.regime == "negative"
    assert result.log_scale > 50.0
    assert result.p_value > 0.0
    assert result.q_value.imag == 0.0
    assert result.q_value.real < 0.0


def test_outside_window(leading0):
    with pytest.raises(DomainError):
        evaluate(leading0, 100, 4.0)


def test_small_n_warns(leading0, caplog):
    with caplog.at_level("WARNING", logger="uniasym"):
        evaluate(leading0, 3, 1.0)
    assert "below n_min" in caplog.text


def test_shifted_t_keeps_x(leading0):
    n, t = 100, 1.7
    t_next = shifted_t(leading0, n, t, 3)
    assert (n + 3.5) * t_next == pytest.approx((n + 0.5) * t)


@pytest.mark.parametrize("z", [0.3, 0.5, 0.7])
def test_wronskian_oscillatory(leading1, z):
    value = wronskian(leading1, 200, z * 4.0)
    assert abs(abs(value) - TWO_OVER_PI) / TWO_OVER_PI < 2e-2
    assert value < 0.0


@pytest.mark.parametrize("z", [-2.0, -0.5])
def test_wronskian_negative_ray(leading1, z):
    value = wronskian(leading1, 200, z * 4.0)
    assert abs(abs(value) - TWO_OVER_PI) / TWO_OVER_PI < 2e-2


@pytest.mark.parametrize("t", [2.0, -2.0])
def test_recurrence_residual_improves_with_order(leading0, leading1, t):
    n = 200
    x = (n + 0.5) * t
    r0 = recurrence_residual(leading0, n, x)
    r1 = recurrence_residual(leading1, n, x)
    assert r0 < 1e-3
    assert r1 < r0


def test_flipped_case_satisfies_user_recurrence():
    # α₀ > 0, β₀ = −2: 패리티 변환만 필요한 경우
    system = RecurrenceSystem(1.0, (1.0, -0.5), (-2.0, 0.0, 0.25))
    approx = build_approximant(system, 0)
    assert approx.case_transform.parity_flip
    n = 150
    x = (n + 0.5) * 1.5
    assert recurrence_residual(approx, n, x, source=approx.frame.system.series_coefficients) < 1e-3


def test_order_mismatch_rejected(leading0, leading1):
    with pytest.raises(ValidationError):
        type(leading0)(frame=leading0.frame, coeffs=leading1.coeffs, order_p=0)


def test_budget_needs_calibration(leading0):
    with pytest.raises(CalibrationUnavailableError):
        error_budget(leading0, 100, 1.0)


def test_calibration_against_self_reference(leading0):
    # 자기 자신을 기준으로 쓰면 오차 상수는 0
    def reference(n, t):
        result = evaluate(leading0, n, t)
        return result.p_value, result.log_scale

    calibrated = calibrate(leading0, reference, [(100, 2.0), (100, -2.0)])
    assert calibrated.calibration == 0.0
    assert error_budget(calibrated, 100, 2.0) == 0.0
    assert block_max_error(calibrated, reference, 100, 2.0, 4) == (0.0, 0.0)


def test_calibration_scales_with_safety(leading0):
    def reference(n, t):
        result = evaluate(leading0, n, t)
        return 1.01 * result.p_value, result.log_scale

    once = calibrate(leading0, reference, [(100, 2.0)], safety=1.0)
    ten = calibrate(leading0, reference, [(100, 2.0)], safety=10.0)
    assert once.calibration > 0.0
    assert ten.calibration == pytest.approx(10.0 * once.calibration)
    result = evaluate(once, 100, 2.0)
    assert result.budget == pytest.approx(once.calibration * result.shape)
    abs_err, rel_err = block_max_error(once, reference, 100, 2.0, 4)
    assert abs_err > 0.0
    assert rel_err <= 0.01 + 1e-12


def test_block_budget_covers_every_index(leading0):
    def reference(n, t):
        result = evaluate(leading0, n, t)
        return 1.01 * result.p_value, result.log_scale

    calibrated = calibrate(leading0, reference, [(100, 2.0)])
    budget = block_budget(calibrated, 100, 2.0, 4)
    steps = [error_budget(calibrated, 100 + k, shifted_t(calibrated, 100, 2.0, k)) for k in range(4)]
    assert budget == pytest.approx(max(steps), rel=1e-14)
    assert budget >= error_budget(calibrated, 100, 2.0)
    abs_err, _ = block_max_error(calibrated, reference, 100, 2.0, 4)
    assert abs_err <= budget
    with pytest.raises(CalibrationUnavailableError):
        block_budget(leading0, 100, 2.0, 4)


def test_observed_order():
    ns = [50.5, 100.5, 200.5, 400.5]
    assert observed_order(ns, [3.0 / n ** 2 for n in ns]) == pytest.approx(2.0)


def test_laguerre_system_matches_leading_terms(laguerre_frame):
    assert laguerre_frame.t2 == pytest.approx(4.0)
    assert laguerre_frame.tau0 == pytest.approx(0.5)
    assert laguerre_frame.nu == pytest.approx(0.0, abs=1e-12)


def test_negative_order_rejected_at_origin():
    # β₂ = −3/16 이면 ν = 1/2
    system = RecurrenceSystem(1.0, (-1.0, 0.5), (2.0, 0.0, -0.1875))
    principal = build_approximant(system, 0)
    assert principal.frame.nu == pytest.approx(0.5)
    assert evaluate(principal, 100, 0.0).p_value == 0.0
    negative = build_approximant(system, 0, nu_branch="negative")
    assert negative.frame.nu == pytest.approx(-0.5)
    with pytest.raises(DomainError, match="unbounded"):
        evaluate(negative, 100, 0.0)
    assert math.isfinite(evaluate(negative, 100, 0.5).p_value)


@pytest.mark.slow
@pytest.mark.parametrize("order_p, lo, hi", [(0, 0.7, 1.3), (1, 1.7, 2.3)])
def test_negative_ray_convergence_order(weight, laguerre_system, laguerre_frame, reference, order_p, lo, hi):
    approx = build_approximant(laguerre_system, order_p, frame=laguerre_frame,
                               connection=weight.connection_constant())
    t = -laguerre_frame.t2
    n_list = [50, 100, 200, 400]
    errors = [block_max_error(approx, reference, n, t, 6)[1] for n in n_list]
    order = observed_order([n + weight.tau0 for n in n_list], errors)
    assert lo <= order <= hi


def test_negative_ray_log_magnitude(approx0, reference, laguerre_frame):
    t = -laguerre_frame.t2
    result = evaluate(approx0, 200, t)
    mantissa, ref_scale = reference(200, t)
    log_value = math.log(abs(approx0.connection * result.p_value)) + result.log_scale
    assert log_value == pytest.approx(math.log(abs(mantissa)) + ref_scale, rel=0.01)


def test_uniform_near_origin(approx0, reference, laguerre_frame):
    t2 = laguerre_frame.t2
    near = [block_max_error(approx0, reference, 200, z * t2, 6)[1] for z in (-0.05, -0.01, 0.0, 0.01, 0.05)]
    _, away = block_max_error(approx0, reference, 200, 0.5 * t2, 6)
    assert all(math.isfinite(err) for err in near)
    assert max(near) <= 2.0 * away
