"""
점화식 시스템 모듈

이 모듈은 P_{n+1} − (A_n x + B_n) P_n + P_{n−1} = 0 형태의 점화식을
계수의 점근 급수로 기술하고, 부호 경우 정규화와 N = n + τ₀ 로의 재전개를 제공합니다.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Callable, List, Optional, Sequence, Tuple
import math

import mpmath

from uniasym.utils.errors import (
    DomainError,
    ImaginaryOrderError,
    UnsupportedThetaError,
    ValidationError,
)
from uniasym.utils.helpers import gen_binom
from uniasym.utils.logging_config import get_logger

logger = get_logger(__name__)

# (n, 확장 정밀도 컨텍스트) -> (A_n, B_n)
CoefficientSource = Callable[[int, Any], Tuple[Any, Any]]


@dataclass(frozen=True)
class RecurrenceSystem:
    """
    점근 급수로 주어진 점화식 계수

    A_n ~ n^{−θ} Σ α_s n^{−s},  B_n ~ Σ β_s n^{−s}.

    Attributes:
        theta: 지수 θ (0과 2는 예외적 경우로 제외)
        alpha_series: (α₀, α₁, …), α₀ ≠ 0
        beta_series: (β₀, β₁, …)
        exact_coeffs: 정확한 A_n, B_n을 주는 선택적 공급원
        name: 로그와 캐시 키에 쓰이는 이름
    """

    theta: float
    alpha_series: Tuple[float, ...]
    beta_series: Tuple[float, ...]
    exact_coeffs: Optional[CoefficientSource] = field(default=None, compare=False, repr=False)
    name: str = "series"

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha_series", tuple(float(a) for a in self.alpha_series))
        object.__setattr__(self, "beta_series", tuple(float(b) for b in self.beta_series))
        if self.theta in (0.0, 2.0):
            raise UnsupportedThetaError(
                f"theta = {self.theta:g} is an exceptional case and is not supported"
            )
        if not self.alpha_series or self.alpha_series[0] == 0.0:
            raise ValidationError("alpha_0 must be nonzero")
        if not self.beta_series:
            raise ValidationError("beta_0 is required")

    @property
    def key(self) -> str:
        """캐시 키로 쓰는 정규 문자열"""
        alpha = ",".join(f"{a:.17g}" for a in self.alpha_series)
        beta = ",".join(f"{b:.17g}" for b in self.beta_series)
        return f"{self.name}|theta={self.theta:.17g}|alpha={alpha}|beta={beta}"

    def series_coefficients(self, n: int, ctx: Any = None) -> Tuple[Any, Any]:
        """
        잘린 급수로 A_n, B_n을 계산합니다.

        Args:
            n: 지수 (n ≥ 1)
            ctx: mpmath 컨텍스트 (없으면 float)

        Returns:
            (A_n, B_n)
        """
        if ctx is None:
            h = 1.0 / n
            a = sum(c * h ** s for s, c in enumerate(self.alpha_series)) * n ** (-self.theta)
            b = sum(c * h ** s for s, c in enumerate(self.beta_series))
            return a, b
        h = ctx.mpf(1) / n
        a = ctx.fsum(ctx.mpf(c) * h ** s for s, c in enumerate(self.alpha_series))
        b = ctx.fsum(ctx.mpf(c) * h ** s for s, c in enumerate(self.beta_series))
        return a * ctx.power(n, -ctx.mpf(self.theta)), b

    def coefficient_source(self) -> CoefficientSource:
        """정확한 계수가 있으면 그것을, 없으면 잘린 급수를 돌려줍니다."""
        if self.exact_coeffs is not None:
            return self.exact_coeffs
        return self.series_coefficients


@dataclass(frozen=True)
class CaseTransform:
    """
    사용자 경우를 정규 경우(α₀ < 0, β₀ = 2)로 옮기는 변환

    Attributes:
        parity_flip: 해에 (−1)^n 을 곱하는지 여부
        axis_flip: x ↦ −x (즉 t ↦ −t) 인지 여부
    """

    parity_flip: bool = False
    axis_flip: bool = False

    @property
    def is_identity(self) -> bool:
        return not (self.parity_flip or self.axis_flip)

    def canonical_t(self, t: float) -> float:
        """사용자 t를 정규 좌표로 옮깁니다."""
        return -t if self.axis_flip else t

    def apply(self, n: int, value: Any) -> Any:
        """정규 해의 값을 사용자 경우의 값으로 되돌립니다."""
        if self.parity_flip and n % 2:
            return -value
        return value


def canonicalize(system: RecurrenceSystem) -> Tuple[RecurrenceSystem, CaseTransform]:
    """
    네 가지 부호 경우를 정규 경우로 옮깁니다.

    Args:
        system: 사용자 시스템

    Returns:
        (정규 시스템, 변환)

    Raises:
        ValidationError: β₀ ∉ {±2} 인 경우
    """
    alpha0, beta0 = system.alpha_series[0], system.beta_series[0]
    if abs(beta0) != 2.0:
        raise ValidationError(
            f"beta_0 = {beta0:g}: transition point is not at the origin (beta_0 must be +2 or -2)"
        )
    parity = beta0 < 0.0
    axis = (alpha0 > 0.0) != parity
    if not parity and not axis:
        return system, CaseTransform()

    alpha_sign = -1.0 if parity != axis else 1.0
    beta_sign = -1.0 if parity else 1.0
    source = system.exact_coeffs
    if source is not None:
        def flipped(n: int, ctx: Any = None, _source: CoefficientSource = source) -> Tuple[Any, Any]:
            a, b = _source(n, ctx)
            return alpha_sign * a, beta_sign * b
        source = flipped

    canonical = replace(
        system,
        alpha_series=tuple(alpha_sign * a for a in system.alpha_series),
        beta_series=tuple(beta_sign * b for b in system.beta_series),
        exact_coeffs=source,
    )
    transform = CaseTransform(parity_flip=parity, axis_flip=axis)
    logger.debug("canonicalized %s with %s", system.name, transform)
    return canonical, transform


def shift_and_recast(system: RecurrenceSystem) -> Tuple[float, Tuple[float, ...], Tuple[float, ...]]:
    """
    N = n + τ₀ 로 이동하고 계수 급수를 N의 거듭제곱으로 다시 전개합니다.

    n = N − τ₀ 를 대입한 n^{−θ−s}, n^{−s} 를 일반화 이항 급수로 전개합니다.
    재전개된 급수의 길이는 입력 급수의 길이와 같습니다.

    Args:
        system: 정규 시스템

    Returns:
        (τ₀, α′, β′), α′₁ = 0

    Raises:
        ValidationError: β 급수가 세 항보다 짧거나 β₁ ≠ 0 인 경우
    """
    theta = system.theta
    alpha, beta = system.alpha_series, system.beta_series
    if len(beta) < 3:
        raise ValidationError("beta series needs beta_0, beta_1 and beta_2 (beta_2 fixes the Bessel order)")
    if beta[1] != 0.0:
        raise ValidationError(f"beta_1 = {beta[1]:g}: beta_1 must be 0")

    alpha1 = alpha[1] if len(alpha) > 1 else 0.0
    tau0 = -alpha1 / (alpha[0] * theta)

    def recast(series: Sequence[float], shift: float) -> List[float]:
        out = []
        for j in range(len(series)):
            total = 0.0
            for s in range(j + 1):
                k = j - s
                total += series[s] * gen_binom(-shift - s, k) * (-tau0) ** k
            out.append(total)
        return out

    alpha_prime = recast(alpha, theta)
    beta_prime = recast(beta, 0.0)
    if len(alpha_prime) > 1:
        alpha_prime[1] = 0.0
    logger.debug("tau0 = %.17g, alpha' = %s, beta' = %s", tau0, alpha_prime, beta_prime)
    return tau0, tuple(alpha_prime), tuple(beta_prime)


def transition_points(alpha0p: float, beta0p: float) -> Tuple[float, float]:
    """
    전이점 t₁ = 0, t₂ = −4/α′₀ 를 계산합니다.

    Args:
        alpha0p: α′₀ (< 0)
        beta0p: β′₀ (= 2)

    Returns:
        (t₁, t₂)
    """
    if alpha0p >= 0.0 or beta0p != 2.0:
        raise ValidationError("transition points need the canonical case alpha_0 < 0, beta_0 = 2")
    return (2.0 - beta0p) / alpha0p + 0.0, (-2.0 - beta0p) / alpha0p


def order_nu(theta: float, beta2p: float, branch: str = "principal") -> float:
    """
    Bessel 차수 ν = sqrt(1 + 4β′₂)/|θ − 2| 를 계산합니다.

    Args:
        theta: θ
        beta2p: β′₂
        branch: "principal" 또는 "negative" (−ν, −1 < −ν < 0 일 때만)

    Returns:
        ν

    Raises:
        ImaginaryOrderError: 1 + 4β′₂ < 0
        DomainError: 음의 가지가 ν ≤ −1 을 주는 경우
    """
    disc = 1.0 + 4.0 * beta2p
    if disc < 0.0:
        raise ImaginaryOrderError(f"1 + 4*beta_2' = {disc:g} < 0: the Bessel order would be imaginary")
    nu = math.sqrt(disc) / abs(theta - 2.0)
    if branch == "principal":
        return nu
    if branch == "negative":
        if nu >= 1.0:
            raise DomainError(f"negative branch needs nu < 1 (got {nu:g})")
        return -nu
    raise DomainError(f"unknown order branch {branch!r}")


def fit_series_from_coefficients(
    source: CoefficientSource,
    theta: float,
    order: int,
    n_step: int = 400,
    digits: int = 60,
) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """
    정확한 A_n, B_n 으로부터 점근 급수 계수를 추출합니다.

    n^θ A_n 과 B_n 을 h = 1/n 의 다항식으로 보고 n_j = n_step·j
    (j = 1…16)에서 확장 정밀도 Vandermonde 계를 풉니다.

    Args:
        source: 정확한 계수 공급원
        theta: θ
        order: 돌려줄 최고 차수 s
        n_step: 표본 간격
        digits: 작업 정밀도 (십진 자릿수)

    Returns:
        (α₀…α_order, β₀…β_order)
    """
    ctx = mpmath.MPContext()
    ctx.dps = digits
    count = 16
    ns = [n_step * (j + 1) for j in range(count)]
    vander = ctx.matrix(count, count)
    rhs_a = ctx.matrix(count, 1)
    rhs_b = ctx.matrix(count, 1)
    for i, n in enumerate(ns):
        h = ctx.mpf(1) / n
        for k in range(count):
            vander[i, k] = h ** k
        a, b = source(n, ctx)
        rhs_a[i] = ctx.mpf(a) * ctx.power(n, ctx.mpf(theta))
        rhs_b[i] = ctx.mpf(b)
    coef_a = ctx.lu_solve(vander, rhs_a)
    coef_b = ctx.lu_solve(vander, rhs_b)
    alpha = tuple(float(coef_a[k]) for k in range(order + 1))
    beta = tuple(float(coef_b[k]) for k in range(order + 1))
    logger.debug("fitted series alpha=%s beta=%s", alpha, beta)
    return alpha, beta
