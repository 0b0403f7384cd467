"""보정 계수 엔진 테스트"""

import numpy as np
import pytest

from uniasym.components.coefficients import (
    CoefficientSet,
    build_coefficient_set,
    transport_residual,
)
from uniasym.core.frame import TransitionFrame
from uniasym.core.system import RecurrenceSystem
from uniasym.utils.errors import OrderUnavailableError


@pytest.fixture(scope="module")
def coeffs1(series_frame):
    return build_coefficient_set(series_frame, 1)


def test_order_zero_set_is_trivial(series_frame):
    coeffs = build_coefficient_set(series_frame, 0, with_blocks=False)
    assert coeffs.order_p == 0
    assert coeffs.sums(0.4, 100.0) == (1.0, 0.0)
    assert coeffs.blocks == {}


def test_order_one_corrections(coeffs1, series_frame):
    z = np.linspace(series_frame.z_lo, series_frame.z_hi, 41)
    a1 = coeffs1.tilde_A[1](z)
    b1 = coeffs1.tilde_B[1](z)
    assert np.all(np.isfinite(a1)) and np.all(np.isfinite(b1))
    assert np.max(np.abs(b1)) > 0.0
    a_sum, b_sum = coeffs1.sums(0.5, 100.0)
    assert a_sum == pytest.approx(1.0 + coeffs1.tilde_A[1](0.5) / 100.0)
    assert b_sum == pytest.approx(coeffs1.tilde_B[1](0.5) / 100.0)
    assert set(coeffs1.blocks) == {"G0", "G1", "H0", "H1", "K0", "K1", "L0", "L1"}


def test_transport_equation_residual(coeffs1, series_frame):
    z = np.array([-0.4, 0.25, 0.6])
    residual = transport_residual(series_frame, coeffs1, 1, z)
    scale = 1.0 + np.max(np.abs(coeffs1.tilde_B[1](z)))
    assert np.max(np.abs(residual)) <= 1e-6 * scale


@pytest.mark.slow
def test_order_two_build(series_frame):
    coeffs = build_coefficient_set(series_frame, 2)
    assert coeffs.order_p == 2
    z = np.linspace(series_frame.z_lo, series_frame.z_hi, 41)
    for s in (1, 2):
        assert np.all(np.isfinite(coeffs.tilde_A[s](z)))
        assert np.all(np.isfinite(coeffs.tilde_B[s](z)))
    points = np.array([-0.4, 0.25, 0.6])
    residual = transport_residual(series_frame, coeffs, 2, points)
    scale = 1.0 + np.max(np.abs(coeffs.tilde_B[2](points)))
    assert np.max(np.abs(residual)) <= 1e-5 * scale


def test_dict_round_trip(coeffs1):
    restored = CoefficientSet.from_dict(coeffs1.to_dict())
    assert restored.order_p == 1
    assert restored.sums(0.3, 50.0) == coeffs1.sums(0.3, 50.0)


def test_unavailable_orders(series_frame):
    with pytest.raises(OrderUnavailableError):
        build_coefficient_set(series_frame, 3)
    with pytest.raises(OrderUnavailableError):
        build_coefficient_set(series_frame, -1)
    wide = TransitionFrame.build(RecurrenceSystem(3.0, (-1.0, 0.5), (2.0, 0.0, 0.0)))
    with pytest.raises(OrderUnavailableError, match="0 < theta < 2"):
        build_coefficient_set(wide, 1)
