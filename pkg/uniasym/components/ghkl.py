"""
G/H/K/L 블록 모듈

이 모듈은 Bessel 함수의 이동 공식

    Z_ν((N+u)ζ) = G(ζ, u) Z_ν(Nζ) + H(ζ, u) Z_{ν+1}(Nζ)
    Z_{ν+1}((N+u)ζ) = K(ζ, u) Z_{ν+1}(Nζ) + L(ζ, u) Z_ν(Nζ)

의 1/N 전개 계수를 계산합니다. 각 계수는 u에 대한 2계 상미분방정식의
Taylor 재귀로 얻고, t± 전개 u± = Σ(±1)^{s+1} u_s/N^s 와 합성합니다.
H와 L은 ζ로 나눈 실수형(Ĥ = H/ζ, L̂ = L/ζ)으로 다룹니다.
"""

from typing import TYPE_CHECKING, Dict, List, Sequence, Tuple
import math

import numpy as np
from numpy.polynomial import polynomial as P

from uniasym.components.chebfun import ChebFun
from uniasym.utils.helpers import gen_binom

if TYPE_CHECKING:
    from uniasym.core.frame import FrameSample, TransitionFrame

MAX_BLOCK_ORDER = 3
MAX_JET_DEGREE = 400

Series = List[np.ndarray]


def gamma_lm(theta: float, l: int, m: int) -> float:
    """
    ((1+h)^{−θ} − 1)^l 에서 h^m 의 계수를 계산합니다.

    Args:
        theta: θ
        l: 거듭제곱 지수 (≥ 0)
        m: h의 차수 (≥ 0)

    Returns:
        γ_{l,m}
    """
    if l == 0:
        return 1.0 if m == 0 else 0.0
    if m < l:
        return 0.0
    base = np.array([0.0] + [gen_binom(-theta, k) for k in range(1, m + 1)])
    power = np.zeros(m + 1)
    power[0] = 1.0
    for _ in range(l):
        power = np.convolve(power, base)[: m + 1]
    return float(power[m])


def _jets(eta: np.ndarray, q: float, initial: Sequence[Tuple[float, float]], degree: int) -> List[np.ndarray]:
    """
    Y_s″ + ηY_s = q Σ_{j=2}^{s} (j−1)(−u)^{j−2} Y_{s−j} 의 Taylor 계수

    Returns:
        s별 (degree+1, len(eta)) 배열
    """
    families: List[np.ndarray] = []
    for s, (y0, y1) in enumerate(initial):
        c = np.zeros((degree + 1, eta.shape[0]))
        c[0] = y0
        c[1] = y1
        for k in range(degree - 1):
            forcing = np.zeros_like(eta)
            for j in range(2, s + 1):
                index = k - j + 2
                if index >= 0:
                    forcing = forcing + (j - 1) * (-1) ** j * families[s - j][index]
            c[k + 2] = (-eta * c[k] + q * forcing) / ((k + 2) * (k + 1))
        families.append(c)
    return families


def _derivatives(coeffs: np.ndarray, u: np.ndarray, count: int) -> List[np.ndarray]:
    """u 에서의 0…count−1 계 도함수"""
    out = []
    c = coeffs
    for _ in range(count):
        out.append(P.polyval(u, c, tensor=False))
        c = P.polyder(c, axis=0)
    return out


def _mul(a: Series, b: Series, order: int) -> Series:
    out = [np.zeros_like(a[0]) for _ in range(order + 1)]
    for i in range(min(len(a), order + 1)):
        for j in range(min(len(b), order + 1 - i)):
            out[i + j] = out[i + j] + a[i] * b[j]
    return out


def _compose(jets: List[np.ndarray], U: Series, order: int) -> Series:
    """
    (1 + hU(h))^{−½} Σ_s h^s Y_s(U(h)) 를 h^order 까지 전개합니다.
    """
    zero = np.zeros_like(U[0])
    delta = [zero] + list(U[1: order + 1])
    total = [zero.copy() for _ in range(order + 1)]
    for s in range(min(len(jets), order + 1)):
        width = order - s
        derivs = _derivatives(jets[s], U[0], width + 1)
        power: Series = [np.ones_like(zero)] + [zero] * width
        for d in range(width + 1):
            weight = derivs[d] / math.factorial(d)
            for k in range(width + 1):
                total[s + k] = total[s + k] + weight * power[k]
            power = _mul(power, delta, width)

    shift = [zero] + list(U[:order])
    prefactor: Series = [np.ones_like(zero)] + [zero] * order
    power = [np.ones_like(zero)] + [zero] * order
    for k in range(1, order + 1):
        power = _mul(power, shift, order)
        c = gen_binom(-0.5, k)
        prefactor = [p + c * w for p, w in zip(prefactor, power)]
    return _mul(prefactor, total, order)


def jet_degree(eta: np.ndarray, u0: np.ndarray) -> int:
    """Taylor 다항식 차수 (|ζu| 에 비례)"""
    reach = math.sqrt(float(np.max(np.abs(eta)))) * (float(np.max(np.abs(u0))) + 1.0)
    return int(min(MAX_JET_DEGREE, max(48, 2.5 * reach + 40)))


def ghkl_blocks(sample: "FrameSample", nu: float, order: int = MAX_BLOCK_ORDER,
                sign: int = 1) -> Dict[str, Series]:
    """
    G_s, Ĥ_s, K_s, L̂_s (s ≤ order) 를 z 배열에서 계산합니다.

    Args:
        sample: 좌표계 표본 (u 는 order 차까지 필요)
        nu: Bessel 차수
        order: 최고 s (≤ 3)
        sign: +1 이면 t₊, −1 이면 t₋ 가족

    Returns:
        이름별 [s=0, …, order] 배열 리스트
    """
    if order > MAX_BLOCK_ORDER:
        raise ValueError(f"blocks are available for s <= {MAX_BLOCK_ORDER}")
    U = [sign ** (s + 1) * sample.u[s] for s in range(order + 1)]
    eta = sample.eta
    degree = jet_degree(eta, U[0])
    a = 0.5 + nu
    q = nu * nu - 0.25
    q_next = (nu + 1.0) ** 2 - 0.25
    rest = [(0.0, 0.0)] * order

    initial = {
        "G": ([(1.0, 0.0), (0.0, a)] + rest)[: order + 1],
        "H": [(0.0, -1.0)] + rest,
        "K": ([(1.0, 0.0), (0.0, -a)] + rest)[: order + 1],
        "L": [(0.0, 1.0)] + rest,
    }
    blocks = {}
    for name, data in initial.items():
        jets = _jets(eta, q if name in ("G", "H") else q_next, data, degree)
        blocks[name] = _compose(jets, U, order)
    return blocks


def closed_form_blocks(sample: "FrameSample", nu: float) -> Dict[str, np.ndarray]:
    """s ≤ 1 블록의 닫힌 형태 (Ĥ, L̂ 는 ζ로 나눈 형태)"""
    a = 0.5 + nu
    u0, u1 = sample.u[0], sample.u[1]
    c, s0, eta = sample.cosine, sample.sigma0, sample.eta
    return {
        "G0": c,
        "G1": (a - eta * u1) * s0 - 0.5 * u0 * c,
        "H0": -s0,
        "H1": -u1 * c + 0.5 * u0 * s0,
        "K0": c,
        "K1": -(a + eta * u1) * s0 - 0.5 * u0 * c,
        "L0": s0,
        "L1": u1 * c - 0.5 * u0 * s0,
    }


def ghkl_closed_form(frame: "TransitionFrame") -> Dict[str, ChebFun]:
    """
    G₀, G₁, Ĥ₀, Ĥ₁, K₀, K₁, L̂₀, L̂₁ 를 창 위의 ChebFun으로 만듭니다.

    Args:
        frame: 좌표계

    Returns:
        이름별 ChebFun (변수는 z = t/t₂)
    """
    out = {}
    for name in ("G0", "G1", "H0", "H1", "K0", "K1", "L0", "L1"):
        def fn(z: np.ndarray, _name: str = name) -> np.ndarray:
            return closed_form_blocks(frame.sample(z, 1), frame.nu)[_name]
        out[name] = ChebFun.from_function(fn, frame.window_breaks())
    return out
