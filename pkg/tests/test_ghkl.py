"""G/H/K/L 블록 테스트"""

import numpy as np
import pytest

from uniasym.components.ghkl import closed_form_blocks, gamma_lm, ghkl_blocks
from uniasym.utils.helpers import gen_binom

GRID = np.array([-0.9, -0.6, -0.3, -0.05, 0.05, 0.3, 0.6, 0.85])


def test_gamma_lm():
    theta = 0.7
    for m in range(5):
        assert gamma_lm(theta, 1, m) == pytest.approx(gen_binom(-theta, m) if m else 0.0)
    assert gamma_lm(theta, 0, 0) == 1.0
    assert gamma_lm(theta, 0, 2) == 0.0
    assert gamma_lm(theta, 2, 2) == pytest.approx(theta ** 2)
    assert gamma_lm(theta, 3, 2) == 0.0


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.5])
def test_blocks_match_closed_forms(series_frame, nu):
    sample = series_frame.sample(np.array([-0.6, -0.1, 0.2, 0.5, 0.8]), order=1)
    blocks = ghkl_blocks(sample, nu, order=1)
    closed = closed_form_blocks(sample, nu)
    for name in ("G", "H", "K", "L"):
        for s in (0, 1):
            assert np.allclose(blocks[name][s], closed[f"{name}{s}"], rtol=1e-9, atol=1e-11), f"{name}{s}"


def test_leading_blocks_are_shift_formulas(series_frame):
    # s = 0 에서 G₀ = K₀ = cos(ζu₀), Ĥ₀ = −L̂₀ = −sin(ζu₀)/ζ
    sample = series_frame.sample(np.array([0.3]), order=0)
    blocks = ghkl_blocks(sample, 0.0, order=0)
    assert blocks["G"][0][0] == pytest.approx(1.0 - 2.0 * 0.3, rel=1e-10)
    assert blocks["H"][0][0] == pytest.approx(-sample.sigma0[0], rel=1e-10)
    assert blocks["L"][0][0] == pytest.approx(sample.sigma0[0], rel=1e-10)


def test_leading_identities_on_grid(series_frame):
    frame = series_frame
    sample = frame.sample(GRID, order=1)
    blocks = ghkl_blocks(sample, frame.nu, order=1)
    g0, h0, h1 = blocks["G"][0], blocks["H"][0], blocks["H"][1]

    t = frame.t2 * GRID
    assert np.allclose(g0, 0.5 * (frame.alpha_prime[0] * t + frame.beta_prime[0]), rtol=0.0, atol=1e-7)

    zeta = np.sqrt(sample.eta.astype(complex))
    assert np.allclose(h0, -(np.sin(zeta * sample.u[0]) / zeta).real, rtol=0.0, atol=1e-7)

    pos = GRID > 0.0
    zeta_pos = np.sqrt(GRID[pos]) * sample.phi[pos]
    assert np.allclose(zeta_pos * h0[pos], -np.sqrt(1.0 - g0[pos] ** 2), rtol=0.0, atol=1e-7)


def test_first_order_h_block_from_derivative(series_frame):
    # Ĥ₁ = −(θ/2) z dĤ₀/dz − Ĥ₀/2
    frame = series_frame
    step = 1e-4
    blocks = ghkl_blocks(frame.sample(GRID, order=1), frame.nu, order=1)
    upper = -frame.sample(GRID + step, order=0).sigma0
    lower = -frame.sample(GRID - step, order=0).sigma0
    slope = (upper - lower) / (2.0 * step)
    expected = -0.5 * frame.theta * GRID * slope - 0.5 * blocks["H"][0]
    assert np.allclose(blocks["H"][1], expected, rtol=0.0, atol=1e-7)


@pytest.mark.parametrize("nu", [0.0, 0.5])
def test_minus_family_parity(series_frame, nu):
    sample = series_frame.sample(np.array([-0.5, -0.05, 0.2, 0.7]), order=3)
    plus = ghkl_blocks(sample, nu, order=3, sign=1)
    minus = ghkl_blocks(sample, nu, order=3, sign=-1)
    for s in range(4):
        for name, parity in (("G", s), ("K", s), ("H", s + 1), ("L", s + 1)):
            assert np.allclose(minus[name][s], (-1) ** parity * plus[name][s], rtol=1e-9, atol=1e-12), f"{name}{s}"
