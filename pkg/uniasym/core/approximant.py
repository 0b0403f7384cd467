"""
점근 해 평가 모듈

이 모듈은 두 일차 독립 해

    P_n = N^{½} ν̂ [J_ν(Nζ) Σ Ã_s/N^s + J_{ν+1}(Nζ) Σ B̃_s/N^s]
    Q_n = N^{½} ν̂ [W_ν(Nζ) Σ Ã_s/N^s + W_{ν+1}(Nζ) Σ B̃_s/N^s],  W_ν = Y_ν − iJ_ν

를 (n, t) 에서 평가하고, Casoratian, 오차 예산, 보정을 제공합니다.
t < 0 의 값은 가수(mantissa)와 log_scale 로 나누어 돌려줍니다.
"""

from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional, Sequence, Tuple
import math

from uniasym.components.bessel import TWO_OVER_PI, bessel_ik, bessel_jy
from uniasym.components.coefficients import CoefficientSet, build_coefficient_set
from uniasym.core.frame import TransitionFrame
from uniasym.core.system import CoefficientSource, RecurrenceSystem
from uniasym.utils.errors import CalibrationUnavailableError, DomainError, ValidationError
from uniasym.utils.helpers import Defaults, log_log_slope
from uniasym.utils.logging_config import get_logger

logger = get_logger(__name__)

# (n, 사용자 t) -> (가수, log_scale); 값 = 가수·e^{log_scale}
ScaledReference = Callable[[int, float], Tuple[float, float]]


@dataclass(frozen=True)
class Approximant:
    """
    평가 준비가 끝난 점근 해

    Attributes:
        frame: 좌표계
        coeffs: 보정 함수 묶음
        order_p: 전개 차수 (coeffs.order_p 와 같음)
        connection: 외부 기준과 비교할 때 곱하는 연결 상수
        calibration: 보정된 오차 상수 M̂_p (없으면 None)
        n_min: 이보다 작은 n 은 경고와 함께 평가
    """

    frame: TransitionFrame
    coeffs: CoefficientSet
    order_p: int
    connection: float = 1.0
    calibration: Optional[float] = None
    n_min: int = Defaults.N_MIN

    def __post_init__(self) -> None:
        if self.order_p != self.coeffs.order_p:
            raise ValidationError(
                f"order_p = {self.order_p} does not match the coefficient set (p = {self.coeffs.order_p})"
            )

    @property
    def case_transform(self):
        return self.frame.transform


@dataclass(frozen=True)
class EvalResult:
    """
    한 점 (n, t) 의 평가 결과

    t < 0 에서 P = p_value·e^{log_scale}, Q = q_value·e^{−log_scale} 이며
    위상 e^{±iνπ/2} 는 뺀 값입니다.

    Attributes:
        p_value: P_n (가수)
        q_value: Q_n (가수, 진동 영역에서 Im = −P)
        log_scale: N|ζ| (t ≥ 0 이면 0)
        regime: negative, origin-window, oscillatory
        budget: 보정된 P 오차 예산 (보정 전에는 nan)
        q_budget: 보정된 Q 오차 예산
        envelope: 상대 오차의 기준 크기
        shape: 예산의 모양 N^{−(p+1)}(|J_ν|+|J_{ν+1}|)N^{½}ν̂
        n: 지수
        t: 사용자 t
    """

    p_value: float
    q_value: complex
    log_scale: float
    regime: str
    budget: float
    q_budget: float
    envelope: float
    shape: float
    n: int
    t: float


def build_approximant(
    system: RecurrenceSystem,
    order: int = 0,
    sigma: Optional[float] = None,
    window_lo: float = Defaults.WINDOW_LO,
    connection: float = 1.0,
    nu_branch: str = "principal",
    frame: Optional[TransitionFrame] = None,
    coeffs: Optional[CoefficientSet] = None,
    n_min: int = Defaults.N_MIN,
) -> Approximant:
    """
    시스템으로부터 좌표계와 계수를 만들어 Approximant 를 조립합니다.

    Args:
        system: 사용자 시스템
        order: 전개 차수 p
        sigma: 제외 폭
        window_lo: 창 하한 (t₂ 단위)
        connection: 연결 상수
        nu_branch: 차수 가지
        frame: 이미 만든 좌표계 (있으면 재사용)
        coeffs: 이미 만든 계수 (있으면 재사용)
        n_min: 경고 임계 n

    Returns:
        Approximant
    """
    if frame is None:
        frame = TransitionFrame.build(system, sigma=sigma, window_lo=window_lo, nu_branch=nu_branch)
    if coeffs is None:
        coeffs = build_coefficient_set(frame, order)
    return Approximant(frame=frame, coeffs=coeffs, order_p=order, connection=connection, n_min=n_min)


def evaluate(approx: Approximant, n: int, t: float) -> EvalResult:
    """
    P_n(t) 와 Q_n(t) 를 한 번에 평가합니다.

    Args:
        approx: 점근 해
        n: 지수
        t: 사용자 좌표의 t

    Returns:
        EvalResult

    Raises:
        DomainError: 창 밖의 t, 또는 ν < 0 에서 t = 0 (J_ν 가 발산)
    """
    frame = approx.frame
    if n < approx.n_min:
        logger.warning("n = %d is below n_min = %d: asymptotic values are not meaningful", n, approx.n_min)
    tc = frame.transform.canonical_t(t)
    z = frame.check_t(tc)
    big_n = n + frame.tau0
    nu = frame.nu
    phi = frame.phi_table(z)
    nu_hat = math.sqrt(abs(phi) / (2.0 * math.sqrt(1.0 - z)))
    a_sum, b_sum = approx.coeffs.sums(z, big_n)
    pref = math.sqrt(big_n) * nu_hat
    decay = big_n ** (-(approx.order_p + 1))

    if z >= 0.0:
        zeta = frame.sign * math.sqrt(z) * phi
        arg = big_n * zeta
        if arg == 0.0:
            if nu < 0.0:
                raise DomainError(f"t = 0 with Bessel order nu = {nu:g} < 0: J_nu is unbounded at the origin")
            j0 = 1.0 if nu == 0.0 else 0.0
            p_value = pref * j0 * a_sum
            q_value = complex(-math.inf, -p_value)
            envelope = abs(p_value)
            shape = pref * decay * abs(j0)
            q_shape = math.inf
        else:
            pair = bessel_jy(nu, arg)
            p_value = pref * (pair.j * a_sum + pair.j_next * zeta * b_sum)
            y_part = pref * (pair.y * a_sum + pair.y_next * zeta * b_sum)
            q_value = complex(y_part, -p_value)
            envelope = pref * math.hypot(pair.j, pair.y)
            shape = pref * decay * (abs(pair.j) + abs(pair.j_next))
            q_shape = pref * decay * (math.hypot(pair.j, pair.y) + math.hypot(pair.j_next, pair.y_next))
        log_scale = 0.0
    else:
        kappa = frame.sign * math.sqrt(-z) * phi
        y = big_n * kappa
        pair = bessel_ik(nu, y, scaled=True)
        p_value = pref * (pair.i_val * a_sum - kappa * pair.i_next * b_sum)
        q_value = complex(-TWO_OVER_PI * pref * (pair.k_val * a_sum + kappa * pair.k_next * b_sum), 0.0)
        log_scale = y
        envelope = abs(p_value)
        shape = pref * decay * (pair.i_val + pair.i_next)
        q_shape = TWO_OVER_PI * pref * decay * (pair.k_val + pair.k_next)

    p_value = frame.transform.apply(n, p_value)
    q_value = frame.transform.apply(n, q_value)
    scale = approx.calibration if approx.calibration is not None else math.nan
    return EvalResult(
        p_value=p_value,
        q_value=q_value,
        log_scale=log_scale,
        regime=frame.regime(tc),
        budget=scale * shape,
        q_budget=scale * q_shape,
        envelope=envelope,
        shape=shape,
        n=n,
        t=t,
    )


def eval_P(approx: Approximant, n: int, t: float) -> EvalResult:
    """P_n(t) 평가 (evaluate 와 같은 결과)"""
    return evaluate(approx, n, t)


def eval_Q(approx: Approximant, n: int, t: float) -> EvalResult:
    """Q_n(t) 평가 (evaluate 와 같은 결과)"""
    return evaluate(approx, n, t)


def shifted_t(approx: Approximant, n: int, t: float, step: int) -> float:
    """
    같은 x = N^θ t 를 가리키는 n + step 의 t

    Args:
        approx: 점근 해
        n: 기준 지수
        t: 기준 t
        step: 지수 이동량

    Returns:
        t·(N/(N+step))^θ
    """
    big_n = n + approx.frame.tau0
    return t * (big_n / (big_n + step)) ** approx.frame.theta


def wronskian(approx: Approximant, n: int, t: float) -> float:
    """
    고정된 x 에서 P_{n+1}Q_n − P_nQ_{n+1} 을 계산합니다.

    정규 해 쌍에서 n → ∞ 극한은 −2/π 입니다 (크기 2/π).

    Args:
        approx: 점근 해
        n: 지수
        t: n 에서의 t

    Returns:
        Casoratian 의 실수부
    """
    here = evaluate(approx, n, t)
    there = evaluate(approx, n + 1, shifted_t(approx, n, t, 1))
    ahead = there.p_value * here.q_value * math.exp(there.log_scale - here.log_scale)
    behind = here.p_value * there.q_value * math.exp(here.log_scale - there.log_scale)
    return complex(ahead - behind).real


def error_budget(approx: Approximant, n: int, t: float) -> float:
    """
    보정된 오차 예산 M̂_p N^{−(p+1)}(|J_ν|+|J_{ν+1}|) N^{½} ν̂ 를 돌려줍니다.

    t < 0 에서는 e^{log_scale} 로 나눈 값입니다.

    Raises:
        CalibrationUnavailableError: 보정되지 않은 경우
    """
    if approx.calibration is None:
        raise CalibrationUnavailableError("error budget needs a calibrated approximant (run calibrate first)")
    return evaluate(approx, n, t).budget


def block_budget(approx: Approximant, n: int, t: float, block: int) -> float:
    """
    block_max_error 와 같은 지수 묶음에서의 최대 오차 예산

    Raises:
        CalibrationUnavailableError: 보정되지 않은 경우
    """
    if approx.calibration is None:
        raise CalibrationUnavailableError("error budget needs a calibrated approximant (run calibrate first)")
    return max(evaluate(approx, n + step, shifted_t(approx, n, t, step)).budget for step in range(block))


def scaled_difference(approx: Approximant, result: EvalResult, reference: Tuple[float, float]) -> float:
    """
    연결 상수를 곱한 P 와 기준 값의 차이 (결과의 log_scale 기준)

    Args:
        approx: 점근 해
        result: 평가 결과
        reference: (가수, log_scale)

    Returns:
        |C·p − ref·e^{ref_scale − log_scale}|, 음의 반직선(log_scale > 0)에서는 크기끼리의 차
    """
    mantissa, ref_scale = reference
    ref = mantissa * math.exp(ref_scale - result.log_scale)
    if result.log_scale > 0.0:
        return abs(abs(approx.connection * result.p_value) - abs(ref))
    return abs(approx.connection * result.p_value - ref)


def calibrate(
    approx: Approximant,
    reference: ScaledReference,
    points: Iterable[Tuple[int, float]],
    safety: float = Defaults.BUDGET_SAFETY,
    block: int = 4,
) -> Approximant:
    """
    기준 해와 비교해 오차 상수 M̂_p 를 추정합니다.

    각 보정점 (n, t) 에서 같은 x 를 가리키는 연속 block 개의 지수를 써서
    |C·P − 기준|/모양 의 최댓값을 구하고 safety 를 곱합니다.

    Args:
        approx: 점근 해
        reference: 기준 값 함수
        points: 보정점 (n, t)
        safety: 안전 계수
        block: 보정점당 지수 개수

    Returns:
        calibration 이 기록된 새 Approximant
    """
    worst = 0.0
    for n, t in points:
        for step in range(block):
            t_k = shifted_t(approx, n, t, step)
            result = evaluate(approx, n + step, t_k)
            if result.shape == 0.0:
                continue
            worst = max(worst, scaled_difference(approx, result, reference(n + step, t_k)) / result.shape)
    calibration = safety * worst
    logger.info("calibrated M_p = %.4g (p=%d, safety=%g)", calibration, approx.order_p, safety)
    return replace(approx, calibration=calibration)


def recurrence_residual(approx: Approximant, n: int, x: float,
                        source: Optional[CoefficientSource] = None) -> float:
    """
    고정 x 에서 P_{n+1} − (A_n x + B_n)P_n + P_{n−1} 의 상대 잔차

    Args:
        approx: 점근 해
        n: 가운데 지수
        x: 원래 변수 (사용자 좌표)
        source: 정규 경우의 A_n, B_n 공급원 (기본값: 시스템의 정확한 계수 또는 잘린 급수)

    Returns:
        |잔차| / max|P|
    """
    frame = approx.frame
    theta = frame.theta
    values = []
    for k in (n - 1, n, n + 1):
        big_n = k + frame.tau0
        result = evaluate(approx, k, x / big_n ** theta)
        values.append((result.p_value, result.log_scale))
    top = max(scale for _, scale in values)
    p_prev, p_mid, p_next = (v * math.exp(scale - top) for v, scale in values)

    if source is None:
        a_n, b_n = frame.system.coefficient_source()(n, None)
    else:
        a_n, b_n = source(n, None)
    # 정규 좌표의 계수이므로 x 도 정규 좌표로 옮깁니다.
    xc = frame.transform.canonical_t(x)
    sign = -1.0 if frame.transform.parity_flip else 1.0
    residual = p_next - sign * (float(a_n) * xc + float(b_n)) * p_mid + p_prev
    return abs(residual) / max(abs(p_prev), abs(p_mid), abs(p_next))


def block_max_error(
    approx: Approximant,
    reference: ScaledReference,
    n: int,
    t: float,
    block: int,
) -> Tuple[float, float]:
    """
    같은 x 의 연속 block 개 지수에 대한 최대 절대·상대 오차

    상대 오차의 분모는 포락선 N^{½}ν̂·sqrt(J_ν² + Y_ν²) (t < 0 에서는 |P|) 입니다.

    Returns:
        (최대 절대 오차, 최대 상대 오차), 절대 오차는 log_scale 로 나눈 값
    """
    worst_abs = 0.0
    worst_rel = 0.0
    for step in range(block):
        t_k = shifted_t(approx, n, t, step)
        result = evaluate(approx, n + step, t_k)
        diff = scaled_difference(approx, result, reference(n + step, t_k))
        worst_abs = max(worst_abs, diff)
        envelope = abs(approx.connection) * result.envelope
        if envelope > 0.0:
            worst_rel = max(worst_rel, diff / envelope)
    return worst_abs, worst_rel


def observed_order(ns: Sequence[int], errors: Sequence[float]) -> float:
    """오차 대 N 의 로그-로그 기울기의 부호를 바꾼 관측 차수"""
    return -log_log_slope(ns, errors)
