"""Bessel 커널 테스트"""

import cmath
import math

import mpmath
import numpy as np
import pytest
from scipy import special
pytest.importorskip("hypothesis")
import hypothesis as h
import hypothesis.strategies as st

from uniasym.components.bessel import (
    TWO_OVER_PI,
    bessel_i,
    bessel_i_scaled,
    bessel_ik,
    bessel_j,
    bessel_jy,
    bessel_k,
    bessel_k_scaled,
    bessel_selftest,
    bessel_y,
    eval_on_imaginary,
)
from uniasym.utils.errors import BesselOverflowError, DomainError

NUS = np.linspace(0.0, 5.0, 6)
XS = np.geomspace(0.1, 40.0, 7)


@pytest.mark.parametrize("nu", NUS)
@pytest.mark.parametrize("x", XS)
def test_jy_wronskian(nu, x):
    pair = bessel_jy(nu, x)
    target = TWO_OVER_PI / x
    assert abs(pair.j_next * pair.y - pair.j * pair.y_next - target) / target < 1e-10


@pytest.mark.parametrize("nu", NUS)
@pytest.mark.parametrize("x", XS)
def test_ik_wronskian(nu, x):
    pair = bessel_ik(nu, x)
    assert abs(pair.i_val * pair.k_next + pair.i_next * pair.k_val - 1.0 / x) * x < 1e-10


@pytest.mark.parametrize("nu, x", [(0.0, 0.5), (0.5, 3.3), (2.3, 10.0), (1.0, 50.0), (4.0, 1.7), (-0.3, 2.0)])
def test_against_scipy(nu, x):
    assert bessel_j(nu, x) == pytest.approx(special.jv(nu, x), rel=1e-9, abs=1e-14)
    assert bessel_y(nu, x) == pytest.approx(special.yv(nu, x), rel=1e-9, abs=1e-14)
    assert bessel_i(nu, x) == pytest.approx(special.iv(nu, x), rel=1e-9)
    assert bessel_k(nu, x) == pytest.approx(special.kv(nu, x), rel=1e-9)


@pytest.mark.parametrize("nu, x", [(0.0, 5.0), (1.5, 30.0), (0.25, 600.0), (-0.5, 12.0)])
def test_scaled_variants(nu, x):
    assert bessel_i_scaled(nu, x) == pytest.approx(special.ive(nu, x), rel=1e-9)
    assert bessel_k_scaled(nu, x) == pytest.approx(special.kve(nu, x), rel=1e-9)


def test_half_integer_closed_forms():
    x = 2.0
    assert bessel_j(0.5, x) == pytest.approx(math.sqrt(2.0 / (math.pi * x)) * math.sin(x), rel=1e-12)
    assert bessel_j(-0.5, x) == pytest.approx(math.sqrt(2.0 / (math.pi * x)) * math.cos(x), rel=1e-12)
    assert bessel_k(0.5, x) == pytest.approx(math.sqrt(math.pi / (2.0 * x)) * math.exp(-x), rel=1e-12)


def test_values_at_origin():
    assert bessel_j(0.0, 0.0) == 1.0
    assert bessel_j(1.5, 0.0) == 0.0
    assert bessel_i(0.0, 0.0) == 1.0
    assert bessel_i_scaled(2.0, 0.0) == 0.0


def test_domain_errors():
    with pytest.raises(DomainError):
        bessel_j(0.0, -1.0)
    with pytest.raises(DomainError):
        bessel_y(0.0, 0.0)
    with pytest.raises(DomainError):
        bessel_k(1.0, 0.0)
    with pytest.raises(DomainError):
        bessel_jy(-1.0, 1.0)
    with pytest.raises(DomainError):
        eval_on_imaginary(0.0, -1.0)


def test_unscaled_overflow():
    with pytest.raises(BesselOverflowError):
        bessel_i(0.0, 800.0)
    assert math.isfinite(bessel_i_scaled(0.0, 800.0))
    assert bessel_k_scaled(0.0, 800.0) == pytest.approx(math.sqrt(math.pi / 1600.0), rel=1e-3)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.3, -0.4])
@pytest.mark.parametrize("y", [0.7, 3.0, 12.0])
def test_imaginary_axis_against_mpmath(nu, y):
    pair = eval_on_imaginary(nu, y)
    j = pair.j * math.exp(pair.j_log_scale)
    w = pair.w * math.exp(pair.w_log_scale)
    with mpmath.workdps(30):
        j_ref = complex(mpmath.besselj(nu, 1j * y))
        w_ref = complex(mpmath.bessely(nu, 1j * y) - 1j * mpmath.besselj(nu, 1j * y))
    assert abs(j - j_ref) <= 1e-9 * abs(j_ref)
    assert abs(w - w_ref) <= 1e-9 * abs(w_ref)


def test_imaginary_axis_unscaled_matches_scaled():
    scaled = eval_on_imaginary(1.0, 4.0)
    plain = eval_on_imaginary(1.0, 4.0, scaled=False)
    assert plain.j_log_scale == 0.0
    assert abs(plain.j - scaled.j * math.exp(4.0)) < 1e-10 * abs(plain.j)
    assert abs(plain.w - scaled.w * math.exp(-4.0)) < 1e-10 * abs(plain.w)
    assert cmath.phase(scaled.j) == pytest.approx(0.5 * math.pi)


@h.given(st.floats(min_value=1.0, max_value=5.0), st.floats(min_value=0.5, max_value=40.0))
def test_j_three_term_recurrence(nu, x):
    lower = bessel_jy(nu - 1.0, x)
    mid = bessel_jy(nu, x)
    scale = max(abs(lower.j), abs(mid.j), abs(mid.j_next), 1e-3)
    assert abs(lower.j + mid.j_next - 2.0 * nu / x * mid.j) / scale < 1e-9


def test_selftest_passes():
    rows = bessel_selftest()
    assert len(rows) > 50
    failed = [row.name for row in rows if not row.passed]
    assert failed == []
