"""
Laguerre 형 가중치 모듈

가중치 w(x) = x^α exp(−q x^m) 의 정규직교 다항식 p_n 을 점근 해와 비교하기 위한
계수, K_n 정규화, 정규형 변환 𝒫_n = (−1)^n w^{½} p_n / K_n 을 제공합니다.

m = 1 은 닫힌 형태의 정확한 계수를 쓰고, m ≥ 2 는 c₂ = d₂ = 0 으로 자른
점근 급수를 씁니다 (일관성 검사 등급).
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple
import math

import mpmath

from uniasym.core.approximant import Approximant, ScaledReference
from uniasym.core.system import CoefficientSource, RecurrenceSystem, fit_series_from_coefficients
from uniasym.managers.oracle import OracleConfig, OracleTrace, backward_miller, make_reference
from uniasym.utils.errors import DomainError
from uniasym.utils.helpers import Defaults
from uniasym.utils.logging_config import get_logger

logger = get_logger(__name__)

SERIES_ORDER = 4


@dataclass(frozen=True)
class LaguerreTypeWeight:
    """
    가중치 x^α exp(−q x^m) (0 < x < ∞)

    Attributes:
        m: 양의 정수 지수
        alpha: α > −1
        q: q > 0
    """

    m: int = 1
    alpha: float = 0.0
    q: float = 1.0

    def __post_init__(self) -> None:
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"m = {self.m}: m must be a positive integer")
        if self.alpha <= -1.0:
            raise DomainError(f"alpha = {self.alpha:g}: alpha must exceed -1")
        if self.q <= 0.0:
            raise DomainError(f"q = {self.q:g}: q must be positive")
        if self.m >= 2:
            logger.warning(
                "m = %d: recurrence coefficients use the truncated series (c2 = d2 = 0), "
                "comparisons are consistency-grade only", self.m,
            )

    @property
    def name(self) -> str:
        return f"laguerre(m={self.m},alpha={self.alpha:.17g},q={self.q:.17g})"

    @property
    def exact(self) -> bool:
        """계수가 닫힌 형태로 정확한지 여부"""
        return self.m == 1

    @property
    def r_m(self) -> float:
        """r_m = (½·m·q·∏_{j=1}^{m} (2j−1)/(2j))^{−1/m}"""
        product = 1.0
        for j in range(1, self.m + 1):
            product *= (2 * j - 1) / (2 * j)
        return (0.5 * self.m * self.q * product) ** (-1.0 / self.m)

    @property
    def theta(self) -> float:
        return 1.0 / self.m

    @property
    def tau0(self) -> float:
        return (self.alpha + 1.0) / 2.0

    @property
    def nu(self) -> float:
        return abs(self.alpha)

    @property
    def beta2p(self) -> float:
        """β′₂ = ((2m−1)²α² − m²)/(4m²)"""
        m = self.m
        return ((2 * m - 1) ** 2 * self.alpha ** 2 - m * m) / (4.0 * m * m)

    def omega(self, n: int) -> float:
        """ω_n = N^{1/m} r_m, x = ω_n z"""
        return (n + self.tau0) ** self.theta * self.r_m

    def connection_constant(self) -> float:
        """𝒫_n ≈ C·P_n 의 C = sqrt(2/r_m)"""
        return math.sqrt(2.0 / self.r_m)

    def zeta_closed_form(self, z: float) -> float:
        """
        ζ(z) = arccos(1−2z) + 2√(z(1−z))/(2m−1)·₂F₁(1, 1−m; 3/2−m; z),  0 ≤ z < 1

        Raises:
            DomainError: z 가 [0, 1) 밖인 경우
        """
        if not 0.0 <= z < 1.0:
            raise DomainError(f"z = {z:g}: closed form is available on 0 <= z < 1")
        m = self.m
        hyp = mpmath.hyp2f1(1, 1 - m, mpmath.mpf(1.5) - m, z)
        return float(mpmath.acos(1 - 2 * mpmath.mpf(z)) + 2 * mpmath.sqrt(z * (1 - z)) / (2 * m - 1) * hyp)

    def mu0(self, ctx: Any) -> Any:
        """∫w = Γ((α+1)/m) / (m q^{(α+1)/m})"""
        s = (ctx.mpf(self.alpha) + 1) / self.m
        return ctx.gamma(s) / (self.m * ctx.power(ctx.mpf(self.q), s))

    def series(self) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
        """닫힌 형태의 선행 계수 (α₀, α₁), (β₀, β₁, β₂)"""
        r = self.r_m
        return (-4.0 / r, (2.0 + 2.0 * self.alpha) / (self.m * r)), (2.0, 0.0, self.beta2p)

    def system(self, order: int = SERIES_ORDER, digits: int = Defaults.PRECISION_DIGITS,
               anchor: int = 512) -> RecurrenceSystem:
        """
        정규형 점화식 시스템을 만듭니다.

        선행 항은 닫힌 형태를, 나머지는 정확한 계수에서 추출한 값을 씁니다.

        Args:
            order: 급수의 최고 차수
            digits: 추출 정밀도
            anchor: K_n 기준 지수

        Returns:
            exact_coeffs 가 붙은 RecurrenceSystem
        """
        source = canonical_source(self, digits, anchor)
        fitted_alpha, fitted_beta = fit_series_from_coefficients(source, self.theta, order, digits=digits)
        closed_alpha, closed_beta = self.series()
        alpha = closed_alpha + fitted_alpha[len(closed_alpha):]
        beta = closed_beta + fitted_beta[len(closed_beta):]
        logger.debug(
            "%s: fitted alpha_1 = %.12g (closed %.12g), beta_2 = %.12g (closed %.12g)",
            self.name, fitted_alpha[1], closed_alpha[1], fitted_beta[2], closed_beta[2],
        )
        return RecurrenceSystem(theta=self.theta, alpha_series=alpha, beta_series=beta,
                                exact_coeffs=source, name=self.name)


def laguerre_coeffs(weight: LaguerreTypeWeight, n: int, ctx: Any = None) -> Tuple[Any, Any]:
    """
    x p_n = b_n p_{n+1} + a_n p_n + b_{n−1} p_{n−1} 의 (a_n, b_n)

    m = 1: a_n = (2n+α+1)/q, b_n = sqrt((n+1)(n+α+1))/q.
    m ≥ 2: b_n ~ (n+1)^{1/m} r_m {¼ + α/(8m(n+1))},
           a_n ~ n^{1/m} r_m {½ + (α+1)/(4mn)} (n = 0 은 n = 1 의 값).

    Args:
        weight: 가중치
        n: 지수 (≥ 0)
        ctx: mpmath 컨텍스트 (없으면 float)

    Returns:
        (a_n, b_n)
    """
    if n < 0:
        raise DomainError(f"n = {n} must be non-negative")
    if ctx is None:
        ctx = mpmath.mp
        as_float = True
    else:
        as_float = False
    alpha, q, m = ctx.mpf(weight.alpha), ctx.mpf(weight.q), weight.m
    if m == 1:
        a = (2 * n + alpha + 1) / q
        b = ctx.sqrt((n + 1) * (n + alpha + 1)) / q
    else:
        r = ctx.mpf(weight.r_m)
        k = ctx.mpf(n + 1)
        b = ctx.power(k, ctx.mpf(1) / m) * r * (ctx.mpf(1) / 4 + alpha / (8 * m * k))
        j = ctx.mpf(max(n, 1))
        a = ctx.power(j, ctx.mpf(1) / m) * r * (ctx.mpf(1) / 2 + (alpha + 1) / (4 * m * j))
    if as_float:
        return float(a), float(b)
    return a, b


class KNormalizer:
    """
    K_n = n^{−1/(2m)} ∏_{l≥0} ((n+2l)/(n+2l+2))^{1/(2m)} b_{n+2l+1}/b_{n+2l}

    꼬리 곱의 각 인수는 u = l + n/2 의 일차식 거듭제곱의 곱이고 지수의 합과
    지수·이동량의 합이 모두 0 이므로, 곱은 ∏ Γ(n/2 + c)^{−s} 로 닫힙니다.
    기준 지수 n_a, n_a+1 에서만 이 형태로 계산하고, 나머지는
    K_{n+1}/K_{n−1} = b_{n−1}/b_n 으로 전파합니다. K₀ 도 같은 비 관계로 정의합니다.
    """

    def __init__(self, weight: LaguerreTypeWeight, digits: int = Defaults.PRECISION_DIGITS, anchor: int = 512):
        """
        Args:
            weight: 가중치
            digits: 작업 정밀도
            anchor: 기준 지수 (≥ 2)
        """
        if anchor < 2:
            raise DomainError("K_n anchor must be at least 2")
        self.weight = weight
        self.digits = digits
        self.anchor = anchor
        self.ctx = OracleConfig(precision_digits=digits).context()
        self._b: Dict[int, Any] = {}
        self._k: Dict[int, Any] = {anchor: self._direct(anchor), anchor + 1: self._direct(anchor + 1)}
        self._top = anchor + 1
        for n in range(anchor, 0, -1):
            # K_{n−1} = K_{n+1} b_n / b_{n−1}
            self._k[n - 1] = self._k[n + 1] * self.b(n) / self.b(n - 1)

    def b(self, n: int) -> Any:
        if n not in self._b:
            self._b[n] = laguerre_coeffs(self.weight, n, self.ctx)[1]
        return self._b[n]

    def tail_factors(self) -> List[Tuple[Any, Any]]:
        """
        꼬리 곱 인수 (c, s): ∏_l (u + c)^s, u = l + n/2

        m = 1 은 b_k = sqrt((k+1)(k+α+1)), m ≥ 2 는 b_k ∝ (k+1)^{1/m}(k+1+c)/(k+1),
        c = α/(2m) 에서 나옵니다.
        """
        ctx = self.ctx
        m = self.weight.m
        alpha = ctx.mpf(self.weight.alpha)
        half = ctx.mpf(1) / 2
        inv = ctx.mpf(1) / (2 * m)
        factors = [(ctx.mpf(0), inv), (ctx.mpf(1), -inv)]
        if m == 1:
            factors += [(ctx.mpf(1), half), (1 + alpha / 2, half),
                        (half, -half), (half + alpha / 2, -half)]
        else:
            shift = alpha / (4 * m)
            factors += [(ctx.mpf(1), ctx.mpf(1) / m), (half, -ctx.mpf(1) / m),
                        (1 + shift, ctx.mpf(1)), (half, ctx.mpf(1)),
                        (ctx.mpf(1), -ctx.mpf(1)), (half + shift, -ctx.mpf(1))]
        return factors

    def _direct(self, n: int) -> Any:
        """꼬리 곱을 Γ 함수로 닫은 K_n"""
        ctx = self.ctx
        factors = self.tail_factors()
        half_n = ctx.mpf(n) / 2
        log_tail = -ctx.fsum(s * ctx.loggamma(half_n + c) for c, s in factors)
        return ctx.exp(log_tail - ctx.log(n) / (2 * self.weight.m))

    def __call__(self, n: int) -> Any:
        """
        K_n 을 돌려줍니다.

        Args:
            n: 지수 (≥ 0)
        """
        if n < 0:
            raise DomainError(f"n = {n} must be non-negative")
        while self._top < n:
            top = self._top
            # K_{top+1} = K_{top−1} b_{top−1} / b_top
            self._k[top + 1] = self._k[top - 1] * self.b(top - 1) / self.b(top)
            self._top = top + 1
        return self._k[n]


@lru_cache(maxsize=16)
def get_normalizer(weight: LaguerreTypeWeight, digits: int = Defaults.PRECISION_DIGITS,
                   anchor: int = 512) -> KNormalizer:
    """가중치와 정밀도별로 공유되는 KNormalizer"""
    return KNormalizer(weight, digits, anchor)


def k_normalizer(weight: LaguerreTypeWeight, n: int, digits: int = Defaults.PRECISION_DIGITS,
                 anchor: int = 512) -> Any:
    """
    K_n 을 확장 정밀도로 계산합니다.

    Args:
        weight: 가중치
        n: 지수 (≥ 1)
        digits: 작업 정밀도
        anchor: 기준 지수

    Returns:
        mpmath 실수
    """
    return get_normalizer(weight, digits, anchor)(n)


def canonical_source(weight: LaguerreTypeWeight, digits: int = Defaults.PRECISION_DIGITS,
                     anchor: int = 512) -> CoefficientSource:
    """
    𝒫_{n+1} − (A_n x + B_n)𝒫_n + 𝒫_{n−1} = 0 의 계수

    A_n = −K_n/(b_n K_{n+1}),  B_n = a_n K_n/(b_n K_{n+1}).
    """
    normalizer = get_normalizer(weight, digits, anchor)

    def source(n: int, ctx: Any = None) -> Tuple[Any, Any]:
        own = normalizer.ctx
        a_n, b_n = laguerre_coeffs(weight, n, own)
        ratio = normalizer(n) / (b_n * normalizer(n + 1))
        big_a, big_b = -ratio, a_n * ratio
        if ctx is None:
            return float(big_a), float(big_b)
        return ctx.mpf(big_a), ctx.mpf(big_b)

    return source


def raw_trace(weight: LaguerreTypeWeight, x: float, n_max: int,
              digits: int = Defaults.PRECISION_DIGITS) -> OracleTrace:
    """
    정규직교 p_0 … p_{n_max} 를 앞으로 점화로 계산합니다.

    p_{−1} = 0, p_0 = μ₀^{−½}, p_{n+1} = ((x − a_n)p_n − b_{n−1}p_{n−1})/b_n.

    Args:
        weight: 가중치
        x: 변수
        n_max: 마지막 지수
        digits: 작업 정밀도

    Returns:
        normalized = False 인 OracleTrace
    """
    config = OracleConfig(precision_digits=digits, n_max=max(n_max, 2))
    ctx = config.context()
    xv = ctx.mpf(x)
    values = [1 / ctx.sqrt(weight.mu0(ctx))]
    prev, b_prev = ctx.mpf(0), ctx.mpf(0)
    for n in range(n_max):
        a_n, b_n = laguerre_coeffs(weight, n, ctx)
        nxt = ((xv - a_n) * values[-1] - b_prev * prev) / b_n
        prev, b_prev = values[-1], b_n
        values.append(nxt)
    return OracleTrace(x=float(x), values=tuple(values), n0=0,
                       provenance=f"forward/{digits}", normalized=False, ctx=ctx)


def canonical_transform(weight: LaguerreTypeWeight, trace: OracleTrace,
                        normalizer: Optional[KNormalizer] = None) -> OracleTrace:
    """
    𝒫_n = (−1)^n |w(x)|^{½} p_n / K_n 로 변환합니다.

    x ≤ 0 에서는 |x|^{α/2} 와 exp(−q x^m/2) 의 크기만 씁니다.

    Args:
        weight: 가중치
        trace: p_n 추적 (normalized = False)
        normalizer: K_n (없으면 추적과 같은 정밀도의 공유 인스턴스)

    Returns:
        normalized = True 인 OracleTrace

    Raises:
        DomainError: α < 0 에서 x = 0
    """
    if trace.normalized:
        raise DomainError("trace is already in canonical form")
    if trace.x == 0.0 and weight.alpha < 0.0:
        raise DomainError("x = 0 is singular for the weight factor when alpha < 0")
    ctx = trace.ctx
    if normalizer is None:
        normalizer = get_normalizer(weight, int(trace.provenance.split("/")[1]))
    x = ctx.mpf(trace.x)
    half_weight = ctx.power(abs(x), ctx.mpf(weight.alpha) / 2) * ctx.exp(-ctx.mpf(weight.q) * x ** weight.m / 2)
    values = []
    for k, p in enumerate(trace.values):
        n = trace.n0 + k
        sign = -1 if n % 2 else 1
        values.append(sign * half_weight * p / ctx.mpf(normalizer(n)))
    return OracleTrace(x=trace.x, values=tuple(values), n0=trace.n0,
                       provenance=trace.provenance, normalized=True, ctx=ctx)


def laguerre_trace(weight: LaguerreTypeWeight, x: float, n_max: int,
                   digits: int = Defaults.PRECISION_DIGITS) -> OracleTrace:
    """x 에서의 정규형 추적 𝒫_0 … 𝒫_{n_max}"""
    return canonical_transform(weight, raw_trace(weight, x, n_max, digits))


def recessive_trace(weight: LaguerreTypeWeight, x: float, n_target: int,
                    digits: int = Defaults.PRECISION_DIGITS) -> OracleTrace:
    """정규형 점화식의 열성 해 (Miller 뒤로 점화, v_0 = 1)"""
    config = OracleConfig(precision_digits=digits, direction="backward", n_max=max(n_target, 2))
    return backward_miller(config, canonical_source(weight, digits), x, n_target)


def laguerre_reference(weight: LaguerreTypeWeight, approx: Approximant,
                       digits: int = Defaults.PRECISION_DIGITS) -> ScaledReference:
    """
    점근 해와 비교할 (n, t) -> 𝒫_n(N^θ t) 기준 값 함수

    Args:
        weight: 가중치
        approx: weight.system() 으로 만든 점근 해
        digits: 오라클 정밀도
    """
    return make_reference(lambda x, n_max: laguerre_trace(weight, x, n_max, digits), approx)
