"""
계수 함수 엔진 모듈

이 모듈은 보정 함수 Ã_s = Λ·A_s 와 b_s = Λ·B_s/ζ 를 차례로 계산합니다.
비동차항 f_{p−1}, g_{p−1} 은 G/H/K/L 블록과 γ_{l,m} 으로 조립하고,
전달 방정식은 하한 0 의 적분 공식을 표의 경계에서 나눈 Gauss 구적으로 풉니다.
모든 함수는 척도 변수 z = t/t₂ 위의 ChebFun 입니다.
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Sequence, Tuple
import math

import numpy as np

from uniasym.components.chebfun import ChebFun, radial_integral
from uniasym.components.ghkl import MAX_BLOCK_ORDER, gamma_lm, ghkl_blocks, ghkl_closed_form
from uniasym.utils.errors import OrderUnavailableError, SingularWeightError
from uniasym.utils.helpers import Defaults, falling, gen_binom
from uniasym.utils.logging_config import get_logger

if TYPE_CHECKING:
    from uniasym.core.frame import TransitionFrame

logger = get_logger(__name__)

ORIGIN_TOL = 1e-4
OPERATOR_TOL = 1e-13


@dataclass(frozen=True)
class CoefficientSet:
    """
    보정 함수 묶음

    Attributes:
        order_p: 전개 차수 p
        tilde_A: Ã₀…Ã_p (Ã₀ ≡ 1)
        tilde_B: b₀…b_p, B̃_s = ζ·b_s (b₀ ≡ 0)
        blocks: 닫힌 형태 G₀…L̂₁
    """

    order_p: int
    tilde_A: List[ChebFun]
    tilde_B: List[ChebFun]
    blocks: Dict[str, ChebFun] = field(default_factory=dict, compare=False)

    def sums(self, z: float, big_n: float) -> Tuple[float, float]:
        """
        Σ Ã_s/N^s 와 Σ b_s/N^s 를 계산합니다.

        Args:
            z: 척도 변수
            big_n: N = n + τ₀

        Returns:
            (A 합, b 합)
        """
        a_sum = 0.0
        b_sum = 0.0
        for s in range(self.order_p + 1):
            weight = big_n ** (-s)
            a_sum += self.tilde_A[s](z) * weight
            b_sum += self.tilde_B[s](z) * weight
        return a_sum, b_sum

    def to_dict(self) -> dict:
        return {
            "order_p": self.order_p,
            "tilde_A": [f.to_dict() for f in self.tilde_A],
            "tilde_B": [f.to_dict() for f in self.tilde_B],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CoefficientSet":
        return cls(
            order_p=int(data["order_p"]),
            tilde_A=[ChebFun.from_dict(f) for f in data["tilde_A"]],
            tilde_B=[ChebFun.from_dict(f) for f in data["tilde_B"]],
        )


def _zero_fun(fun: ChebFun) -> bool:
    return all(not np.any(c) for c in fun.coeffs)


def joint_breaks(*funs: ChebFun, base: Sequence[float] = ()) -> List[float]:
    """여러 ChebFun 과 base 의 구간 경계 합집합"""
    edges = {float(v) for v in base}
    for fun in funs:
        edges.update(fun.breakpoints.tolist())
    return sorted(edges)


class _Operators:
    """
    E_l[a] 와 F_l[b] 연산자

    E_l[X] = (1/ν̂) Σ_j C(l,j)·(−a_Λ)^{(j)}·z^{l−j} D^{l−j}(ν̂X)
    F_l[Y] = (1/(ν̂Φ)) Σ_j C(l,j)·(½−a_Λ)^{(j)}·z^{l−j} D^{l−j}(ν̂ΦY)

    여기서 a_Λ = 1/(2θ), (x)^{(j)} 는 하강 계승입니다.
    """

    def __init__(self, frame: "TransitionFrame", max_l: int):
        self.frame = frame
        self.max_l = max_l
        self.a_lambda = 0.5 / frame.theta
        self.breaks = joint_breaks(frame.phi_table, frame.g_table, base=frame.window_breaks())
        self.nu_hat = ChebFun.from_function(lambda z: frame.sample(z, 0).nu_hat, self.breaks, tol=OPERATOR_TOL)
        self._cache: Dict[Tuple[str, int], List[ChebFun]] = {}

    def _derivs(self, kind: str, index: int, fun: ChebFun) -> List[ChebFun]:
        key = (kind, index)
        if key not in self._cache:
            phi = self.frame.phi_table
            edges = joint_breaks(self.nu_hat, fun, base=self.breaks)
            if kind == "E":
                base = ChebFun.from_function(lambda z: self.nu_hat(z) * fun(z), edges, tol=OPERATOR_TOL)
            else:
                base = ChebFun.from_function(lambda z: self.nu_hat(z) * phi(z) * fun(z), edges, tol=OPERATOR_TOL)
            derivs = [base]
            for _ in range(self.max_l):
                derivs.append(derivs[-1].deriv())
            self._cache[key] = derivs
        return self._cache[key]

    def prepare(self, a_list: Sequence[ChebFun], b_list: Sequence[ChebFun]) -> List[ChebFun]:
        """0 이 아닌 Ã, b 의 밑함수를 미리 만들고 돌려줍니다."""
        bases = []
        for index, (a_fun, b_fun) in enumerate(zip(a_list, b_list)):
            if not _zero_fun(a_fun):
                bases.append(self._derivs("E", index, a_fun)[0])
            if not _zero_fun(b_fun):
                bases.append(self._derivs("F", index, b_fun)[0])
        return bases

    def apply(self, kind: str, index: int, fun: ChebFun, l: int, z: np.ndarray,
              nu_hat: np.ndarray, phi: np.ndarray) -> np.ndarray:
        derivs = self._derivs(kind, index, fun)
        shift = -self.a_lambda if kind == "E" else 0.5 - self.a_lambda
        total = np.zeros_like(z)
        for j in range(l + 1):
            total = total + gen_binom(l, j) * falling(shift, j) * z ** (l - j) * derivs[l - j](z)
        if kind == "E":
            return total / nu_hat
        return total / (nu_hat * phi)


def fg_terms(
    frame: "TransitionFrame",
    coeffs_so_far: Tuple[Sequence[ChebFun], Sequence[ChebFun]],
    p: int,
) -> Tuple[ChebFun, ChebFun]:
    """
    비동차항 Λ·f_{p−1} 과 ĝ_{p−1} = Λ·g_{p−1}/ζ 를 조립합니다.

    Args:
        frame: 좌표계
        coeffs_so_far: (Ã₀…Ã_{p−2}, b₀…b_{p−2})
        p: 단계 (p = 1 이면 0)

    Returns:
        (Λf_{p−1}, ĝ_{p−1}) ChebFun

    Raises:
        OrderUnavailableError: s > 3 블록이 필요한 경우
    """
    breaks = frame.window_breaks()
    domain = (breaks[0], breaks[-1])
    if p <= 1:
        zero = ChebFun.constant(0.0, domain)
        return zero, zero
    if p > MAX_BLOCK_ORDER:
        raise OrderUnavailableError(f"f/g terms for p = {p} need G/H/K/L blocks beyond s = {MAX_BLOCK_ORDER}")

    a_list, b_list = coeffs_so_far
    theta = frame.theta
    alpha_p, beta_p = frame.alpha_prime, frame.beta_prime
    ops = _Operators(frame, p)
    gammas = {(l, m): gamma_lm(theta, l, m) / math.factorial(l)
              for m in range(p + 1) for l in range(m + 1)}

    def series_term(s: int, t: np.ndarray) -> np.ndarray:
        a_s = alpha_p[s] if s < len(alpha_p) else 0.0
        b_s = beta_p[s] if s < len(beta_p) else 0.0
        return 0.5 * (a_s * t + b_s)

    def assemble(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        smp = frame.sample(z, p)
        blocks = ghkl_blocks(smp, frame.nu, order=p)
        t = frame.t2 * z
        lam_f = np.zeros_like(z)
        g_hat = np.zeros_like(z)
        for s in range(2, p + 1):
            index = p - s
            a_fun, b_fun = a_list[index], b_list[index]
            lam_f = lam_f + series_term(s, t) * a_fun(z)
            g_hat = g_hat + series_term(s, t) * b_fun(z)
            for i in range(s + 1):
                for m in range(s - i + 1):
                    coef = gen_binom(-p + s, s - i - m)
                    if coef == 0.0:
                        continue
                    if s % 2 == 0:
                        if not _zero_fun(a_fun):
                            inner = sum(gammas[(l, m)] * ops.apply("E", index, a_fun, l, z, smp.nu_hat, smp.phi)
                                        for l in range(m + 1))
                            lam_f = lam_f - coef * blocks["G"][i] * inner
                        if not _zero_fun(b_fun):
                            inner = sum(gammas[(l, m)] * ops.apply("F", index, b_fun, l, z, smp.nu_hat, smp.phi)
                                        for l in range(m + 1))
                            g_hat = g_hat - coef * blocks["K"][i] * inner
                    else:
                        if not _zero_fun(b_fun):
                            inner = sum(gammas[(l, m)] * ops.apply("F", index, b_fun, l, z, smp.nu_hat, smp.phi)
                                        for l in range(m + 1))
                            lam_f = lam_f - coef * smp.eta * blocks["L"][i] * inner
                        if not _zero_fun(a_fun):
                            inner = sum(gammas[(l, m)] * ops.apply("E", index, a_fun, l, z, smp.nu_hat, smp.phi)
                                        for l in range(m + 1))
                            g_hat = g_hat - coef * blocks["H"][i] * inner
        return lam_f, g_hat

    # 적합 경계는 합성하는 모든 표의 경계를 포함합니다.
    bases = ops.prepare(a_list[: p - 1], b_list[: p - 1])
    edges = joint_breaks(*a_list, *b_list, *bases, ops.nu_hat, base=ops.breaks)
    lam_f = ChebFun.from_function(lambda z: assemble(z)[0], edges)
    g_hat = ChebFun.from_function(lambda z: assemble(z)[1], edges)
    logger.debug("f/g terms for p=%d: |Lambda f| ~ %.3g, |g| ~ %.3g", p, lam_f.vscale, g_hat.vscale)
    return lam_f, g_hat


def ab_next(frame: "TransitionFrame", lam_f: ChebFun, g_hat: ChebFun, p: int) -> Tuple[ChebFun, ChebFun]:
    """
    전달 방정식을 풀어 Ã_{p−1}, b_{p−1} 을 계산합니다.

    b_{p−1}(z) = (1/Φ(z)) ∫₀¹ r^{k−½} ψ̂(rz)/Φ(rz) dr,   ψ = Λf/(θĤ₀) = z·ψ̂,
    Ã_{p−1}(z) = −∫₀¹ r^{k−1} φ(rz) dr,                 φ = ĝ/(θĤ₀),
    k = (p−1)/θ.

    피적분 함수는 구간별 표이므로 적분은 rz 가 표의 경계를 지나는 곳에서
    나누고, 결과 함수도 같은 경계 위에서 맞춥니다.

    Args:
        frame: 좌표계
        lam_f: Λ·f_{p−1}
        g_hat: Λ·g_{p−1}/ζ
        p: 단계 (≥ 2)

    Returns:
        (Ã_{p−1}, b_{p−1})

    Raises:
        SingularWeightError: ψ 가 z = 0 에서 사라지지 않는 경우
    """
    theta = frame.theta
    breaks = frame.window_breaks()
    domain = (breaks[0], breaks[-1])
    k = (p - 1) / theta
    phi = frame.phi_table

    def h0_hat(z: np.ndarray) -> np.ndarray:
        return -2.0 * np.sqrt(1.0 - z) / phi(z)

    if _zero_fun(lam_f):
        b_next = ChebFun.constant(0.0, domain)
    else:
        psi = ChebFun.from_function(lambda z: lam_f(z) / (theta * h0_hat(z)),
                                    joint_breaks(lam_f, phi, base=breaks))
        at_origin = psi(0.0)
        if abs(at_origin) > ORIGIN_TOL * max(1.0, psi.vscale):
            raise SingularWeightError(
                f"Lambda*f/(theta*H0) = {at_origin:.3g} at t = 0: weight is not integrable "
                "(inconsistent input series)"
            )
        psi_hat = psi.deflate(0.0)
        cuts = joint_breaks(psi_hat, phi)

        def b_value(z: np.ndarray) -> np.ndarray:
            inner = radial_integral(lambda s: psi_hat(s) / phi(s), z, k - 0.5, cuts)
            return inner / phi(z)

        b_next = ChebFun.from_function(b_value, cuts)

    if _zero_fun(g_hat):
        a_next = ChebFun.constant(0.0, domain)
    else:
        varphi = ChebFun.from_function(lambda z: g_hat(z) / (theta * h0_hat(z)),
                                       joint_breaks(g_hat, phi, base=breaks))
        cuts = varphi.breakpoints.tolist()
        a_next = ChebFun.from_function(lambda z: -radial_integral(varphi, z, k - 1.0, cuts), cuts)

    logger.debug("p=%d corrections: |A| ~ %.3g, |b| ~ %.3g", p, a_next.vscale, b_next.vscale)
    return a_next, b_next


def build_coefficient_set(frame: "TransitionFrame", p: int, with_blocks: bool = True) -> CoefficientSet:
    """
    Ã₀…Ã_p, b₀…b_p 를 차례로 계산합니다.

    Args:
        frame: 좌표계
        p: 전개 차수 (≤ 2)
        with_blocks: 닫힌 형태 블록도 만들지 여부

    Returns:
        CoefficientSet

    Raises:
        OrderUnavailableError: p > 2 이거나 θ ∉ (0, 2) 에서 p ≥ 1
    """
    if p < 0 or p > Defaults.P_MAX:
        raise OrderUnavailableError(f"order p = {p} is unavailable (0 <= p <= {Defaults.P_MAX})")
    if p >= 1 and not 0.0 < frame.theta < 2.0:
        raise OrderUnavailableError(
            f"order p = {p} needs 0 < theta < 2 (lower integration limit 0); theta = {frame.theta:g}"
        )
    breaks = frame.window_breaks()
    domain = (breaks[0], breaks[-1])
    tilde_a = [ChebFun.constant(1.0, domain)]
    tilde_b = [ChebFun.constant(0.0, domain)]
    for q in range(2, p + 2):
        lam_f, g_hat = fg_terms(frame, (tilde_a, tilde_b), q)
        a_next, b_next = ab_next(frame, lam_f, g_hat, q)
        tilde_a.append(a_next)
        tilde_b.append(b_next)
    blocks = ghkl_closed_form(frame) if with_blocks else {}
    logger.info("built coefficient set p=%d for %s", p, frame.system.name)
    return CoefficientSet(order_p=p, tilde_A=tilde_a, tilde_B=tilde_b, blocks=blocks)


def transport_residual(frame: "TransitionFrame", coeffs: CoefficientSet, s: int,
                       z: Sequence[float]) -> np.ndarray:
    """
    b_s 가 전달 방정식을 만족하는지 잔차를 계산합니다.

    [(1−p)L̂₀ + L̂₁] b − θL̂₀[ρ₁b + z b′ − (a_Λ − z ν̂′/ν̂) b] − Λf/η,  p = s + 1.

    Args:
        frame: 좌표계
        coeffs: 계수 묶음 (order_p ≥ s)
        s: 검사할 b 의 번호 (≥ 1)
        z: 점들 (0 근처 제외)

    Returns:
        잔차 배열
    """
    p = s + 1
    z = np.asarray(z, dtype=float)
    b_fun = coeffs.tilde_B[s]
    lam_f, _ = fg_terms(frame, (coeffs.tilde_A[:s], coeffs.tilde_B[:s]), p)
    smp = frame.sample(z, 1)
    blocks = ghkl_blocks(smp, frame.nu, order=1)
    l0, l1 = blocks["L"][0], blocks["L"][1]
    nu_hat = ChebFun.from_function(lambda x: frame.sample(x, 0).nu_hat, frame.window_breaks())
    rho1 = -smp.g / (frame.theta * smp.phi)
    b = b_fun(z)
    db = b_fun.deriv()(z)
    log_deriv = nu_hat.deriv()(z) / nu_hat(z)
    a_lambda = 0.5 / frame.theta
    bracket = rho1 * b + z * db - (a_lambda - z * log_deriv) * b
    return ((1 - p) * l0 + l1) * b - frame.theta * l0 * bracket - lam_f(z) / smp.eta
