"""ChebFun 테스트"""

import math

import numpy as np
import pytest

from uniasym.components.chebfun import ChebFun, radial_integral
from uniasym.utils.errors import DomainError


@pytest.fixture
def sine():
    return ChebFun.from_function(np.sin, [0.0, 1.75, 3.5])


def test_interpolates_to_tolerance(sine):
    x = np.linspace(0.0, 3.5, 301)
    assert np.max(np.abs(sine(x) - np.sin(x))) < 1e-10
    assert isinstance(sine(1.0), float)
    assert sine(np.array([[0.5, 1.0]])).shape == (1, 2)
    assert sine.domain == (0.0, 3.5)


def test_derivative(sine):
    x = np.linspace(0.1, 3.4, 50)
    assert np.allclose(sine.deriv()(x), np.cos(x), atol=1e-8)
    assert np.allclose(sine.deriv(2)(x), -np.sin(x), atol=1e-6)


def test_splits_at_a_kink():
    fn = ChebFun.from_function(lambda x: np.abs(x - 0.5), [0.0, 1.0])
    assert len(fn.coeffs) == 2
    assert fn.breakpoints[1] == 0.5
    x = np.linspace(0.0, 1.0, 97)
    assert np.max(np.abs(fn(x) - np.abs(x - 0.5))) < 1e-12


def test_deflate_removes_root():
    cubic = ChebFun.from_function(lambda x: x ** 3 - 2.0 * x, [-2.0, 0.0, 2.0])
    root = math.sqrt(2.0)
    quotient = cubic.deflate(root)
    x = np.array([-1.5, 0.0, 1.3, root, 1.9])
    assert np.allclose(quotient(x), x * x + root * x, atol=1e-10)


def test_deflate_of_sine(sine):
    quotient = sine.deflate(math.pi)
    x = np.array([0.5, 2.0, math.pi - 1e-3, 3.4])
    assert np.allclose(quotient(x), np.sin(x) / (x - math.pi), rtol=1e-7)


def test_deflate_across_many_pieces():
    edges = [-2.0, -0.1, 0.0, 0.02, 0.05, 0.1, 2.0]
    cubic = ChebFun.from_function(lambda x: x ** 3 - 2.0 * x, edges)
    quotient = cubic.deflate(0.0)
    x = np.array([-1.0, -0.07, -0.01, 0.0, 0.03, 0.08, 1.5])
    assert np.allclose(quotient(x), x * x - 2.0, atol=1e-10)


@pytest.mark.parametrize("exponent", [0.0, 0.5, 1.5])
def test_radial_integral_of_polynomial(exponent):
    # ∫₀¹ r^e (1 + rz) dr = 1/(e+1) + z/(e+2)
    z = np.array([-2.0, -0.3, 0.0, 0.7])
    values = radial_integral(lambda s: 1.0 + s, z, exponent, [-1.0, 0.0, 0.5])
    assert np.allclose(values, 1.0 / (exponent + 1.0) + z / (exponent + 2.0), rtol=0.0, atol=1e-13)


def test_radial_integral_splits_at_kinks():
    kink = ChebFun.from_function(lambda s: np.abs(s - 0.3), [-1.0, 0.3, 1.0])
    z = np.array([0.2, 0.8, 1.0, -0.5])
    values = radial_integral(kink, z, 0.0, kink.breakpoints)
    # z > 0.3: (0.045 + (z − 0.3)²/2)/z, 그 밖: 0.3 − z/2
    expected = np.where(z > 0.3, (0.045 + 0.5 * (z - 0.3) ** 2) / z, 0.3 - 0.5 * z)
    assert np.allclose(values, expected, rtol=0.0, atol=1e-12)


def test_radial_integral_with_origin():
    # ∫₀¹ cos(1 + r(x − 1)) dr = (sin x − sin 1)/(x − 1)
    x = np.array([0.2, 1.0, 2.5])
    values = radial_integral(np.cos, x, 0.0, [0.0, 1.5, 3.0], origin=1.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        expected = np.where(x == 1.0, math.cos(1.0), (np.sin(x) - math.sin(1.0)) / (x - 1.0))
    assert np.allclose(values, expected, atol=1e-13)


def test_out_of_domain(sine):
    with pytest.raises(DomainError):
        sine(4.0)
    with pytest.raises(DomainError):
        sine.deflate(4.0)


def test_constructor_checks():
    with pytest.raises(DomainError):
        ChebFun([0.0, 1.0, 2.0], [np.ones(1)])
    with pytest.raises(DomainError):
        ChebFun([1.0, 0.0], [np.ones(1)])
    const = ChebFun.constant(2.5, (-1.0, 1.0))
    assert const(0.3) == 2.5
    assert const.vscale == 2.5


def test_dict_round_trip(sine):
    restored = ChebFun.from_dict(sine.to_dict())
    x = np.linspace(0.0, 3.5, 11)
    assert np.array_equal(restored(x), sine(x))
    assert restored.tol == sine.tol
