"""
점화식 오라클 모듈

이 모듈은 확장 정밀도(mpmath)로 점화식을 직접 풀어 점근 해의 기준 값을 만듭니다.
지배 해는 앞으로, 열성 해는 Miller 방식의 뒤로 점화로 계산하며,
연결 상수를 최소제곱으로 맞추는 함수도 제공합니다.
"""

from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple, Union
import csv
import math

import mpmath
import numpy as np

from uniasym.core.approximant import Approximant, ScaledReference, evaluate, shifted_t
from uniasym.core.system import CoefficientSource, RecurrenceSystem
from uniasym.utils.errors import (
    CoefficientUnavailableError,
    ConvergenceError,
    DomainError,
    IllConditionedFitError,
)
from uniasym.utils.helpers import Defaults
from uniasym.utils.logging_config import get_logger

logger = get_logger(__name__)

SourceLike = Union[RecurrenceSystem, CoefficientSource]

REFERENCE_TRACES = 256


@dataclass(frozen=True)
class OracleConfig:
    """
    오라클 실행 설정

    Attributes:
        precision_digits: 작업 정밀도 (십진 자릿수, ≥ 30)
        direction: "forward" 또는 "backward"
        n_max: 앞으로 점화의 마지막 지수 (≥ 2)
        initial: (P_{n0}, P_{n0+1}) 초기값
        buffer: 뒤로 점화의 시작 여유 (None 이면 max(50, n_target/2))
        n0: 첫 지수
        max_doublings: 여유를 두 배로 늘리는 최대 횟수
    """

    precision_digits: int = Defaults.PRECISION_DIGITS
    direction: str = "forward"
    n_max: int = 400
    initial: Tuple[float, float] = (0.0, 1.0)
    buffer: Optional[int] = None
    n0: int = 0
    max_doublings: int = 8

    def __post_init__(self) -> None:
        if self.precision_digits < 30:
            raise DomainError(f"precision_digits = {self.precision_digits}: at least 30 digits are required")
        if self.n_max < 2:
            raise DomainError(f"n_max = {self.n_max}: n_max must be at least 2")
        if self.direction not in ("forward", "backward"):
            raise DomainError(f"unknown direction {self.direction!r}")

    def context(self) -> mpmath.ctx_mp.MPContext:
        """이진 정밀도 ceil(3.33·자릿수) + 32 비트의 새 mpmath 컨텍스트"""
        ctx = mpmath.MPContext()
        ctx.prec = math.ceil(3.33 * self.precision_digits) + 32
        return ctx


@dataclass(frozen=True)
class OracleTrace:
    """
    고정된 x 에서의 확장 정밀도 해 값

    Attributes:
        x: 원래 변수
        values: n0, n0+1, … 의 값 (mpmath 실수)
        n0: 첫 지수
        provenance: 방향과 정밀도 (예: "forward/60")
        normalized: 정규형(𝒫_n)인지 원래 p_n 인지
        ctx: 값을 만든 mpmath 컨텍스트
    """

    x: float
    values: Tuple[Any, ...]
    n0: int
    provenance: str
    normalized: bool = False
    ctx: Any = field(default=None, compare=False, repr=False)

    @property
    def n_max(self) -> int:
        return self.n0 + len(self.values) - 1

    def value(self, n: int) -> Any:
        """지수 n 의 값"""
        if not self.n0 <= n <= self.n_max:
            raise DomainError(f"n = {n} is outside the trace [{self.n0}, {self.n_max}]")
        return self.values[n - self.n0]

    def scaled(self, n: int) -> Tuple[float, float]:
        """
        (가수, log_scale) 형태로 값을 돌려줍니다.

        double 범위 안의 값은 log_scale = 0 입니다.
        """
        v = self.value(n)
        if v == 0:
            return 0.0, 0.0
        log_mag = float(self.ctx.log(abs(v)))
        if abs(log_mag) < 600.0:
            return float(v), 0.0
        return (1.0 if v > 0 else -1.0), log_mag

    def residuals(self, source: SourceLike) -> List[float]:
        """
        연속한 세 값의 상대 잔차 |v_{n+1} − (A_n x + B_n)v_n + v_{n−1}| / max|v|

        Args:
            source: 값을 만든 점화식의 계수 공급원

        Returns:
            n = n0+1 … n_max−1 의 잔차
        """
        fn = resolve_source(source)
        ctx = self.ctx
        x = ctx.mpf(self.x)
        out = []
        for n in range(self.n0 + 1, self.n_max):
            prev, mid, nxt = self.value(n - 1), self.value(n), self.value(n + 1)
            a, b = fn(n, ctx)
            scale = max(abs(prev), abs(mid), abs(nxt))
            if scale == 0:
                out.append(0.0)
                continue
            out.append(float(abs(nxt - (a * x + b) * mid + prev) / scale))
        return out

    def casoratian(self, other: "OracleTrace") -> List[Any]:
        """
        공통 지수에서 v_{n+1}w_n − v_n w_{n+1} 을 계산합니다.

        Args:
            other: 같은 x 와 같은 점화식의 다른 해

        Returns:
            Casoratian 값 리스트 (mpmath 실수)
        """
        lo = max(self.n0, other.n0)
        hi = min(self.n_max, other.n_max)
        return [
            self.value(n + 1) * other.value(n) - self.value(n) * other.value(n + 1)
            for n in range(lo, hi)
        ]

    def to_csv(self, path: str) -> None:
        """
        n, mantissa, exponent10, provenance 열의 CSV 로 내보냅니다.

        Args:
            path: 출력 파일 경로
        """
        ctx = self.ctx
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["n", "mantissa", "exponent10", "provenance"])
            for k, v in enumerate(self.values):
                if v == 0:
                    mantissa, exponent = "0", 0
                else:
                    exponent = int(ctx.floor(ctx.log10(abs(v))))
                    mantissa = ctx.nstr(v / ctx.power(10, exponent), Defaults.CSV_DIGITS)
                writer.writerow([self.n0 + k, mantissa, exponent, self.provenance])
        logger.info("wrote trace (%d rows) to %s", len(self.values), path)


@dataclass(frozen=True)
class ConnectionFit:
    """
    연결 상수 적합 결과 (기준 ≈ C₁P + C₂ Re Q)

    Attributes:
        c1: P 의 계수
        c2: Q 의 계수
        condition: 정규화된 설계 행렬의 조건수
        residual: 상대 잔차 노름
    """

    c1: float
    c2: float
    condition: float
    residual: float


def resolve_source(source: SourceLike) -> CoefficientSource:
    """
    시스템 또는 함수로부터 정확한 계수 공급원을 얻습니다.

    Raises:
        CoefficientUnavailableError: 정확한 계수가 없는 시스템
    """
    if isinstance(source, RecurrenceSystem):
        if source.exact_coeffs is None:
            raise CoefficientUnavailableError(
                f"system {source.name!r} has no exact coefficients: the oracle needs A_n, B_n for every n"
            )
        return source.exact_coeffs
    if not callable(source):
        raise CoefficientUnavailableError("coefficient source must be callable")
    return source


def constant_source(a: float, b: float) -> CoefficientSource:
    """
    상수 계수 A_n ≡ a, B_n ≡ b 공급원 (전이점이 없는 확인용 시스템)
    """
    def source(n: int, ctx: Any = None) -> Tuple[Any, Any]:
        if ctx is None:
            return a, b
        return ctx.mpf(a), ctx.mpf(b)
    return source


def forward_recurrence(config: OracleConfig, coeff_source: SourceLike, x: float) -> OracleTrace:
    """
    P_{n+1} = (A_n x + B_n)P_n − P_{n−1} 을 앞으로 계산합니다.

    Args:
        config: 오라클 설정 (initial 은 n0, n0+1 의 값)
        coeff_source: 정확한 계수 공급원
        x: 원래 변수

    Returns:
        n0 … n_max 의 값

    Raises:
        CoefficientUnavailableError: 정확한 계수가 없는 경우
    """
    source = resolve_source(coeff_source)
    ctx = config.context()
    xv = ctx.mpf(x)
    values = [ctx.mpf(config.initial[0]), ctx.mpf(config.initial[1])]
    for n in range(config.n0 + 1, config.n_max):
        a, b = source(n, ctx)
        values.append((a * xv + b) * values[-1] - values[-2])
    logger.debug("forward trace x=%.6g n=%d..%d", x, config.n0, config.n_max)
    return OracleTrace(
        x=float(x),
        values=tuple(values),
        n0=config.n0,
        provenance=f"forward/{config.precision_digits}",
        ctx=ctx,
    )


def _backward(source: CoefficientSource, ctx: Any, x: Any, n_start: int, n0: int) -> List[Any]:
    upper, values = ctx.mpf(0), [ctx.mpf(1)]
    for n in range(n_start, n0, -1):
        a, b = source(n, ctx)
        lower = (a * x + b) * values[-1] - upper
        upper = values[-1]
        values.append(lower)
    values.reverse()
    return values


def backward_miller(config: OracleConfig, coeff_source: SourceLike, x: float, n_target: int) -> OracleTrace:
    """
    Miller 방식의 뒤로 점화로 열성 해를 계산합니다.

    n_start = n_target + buffer 에서 (0, 1) 로 시작해 n0 까지 내려오고,
    v_{n0} = 1 로 정규화합니다. 정규화된 v_{n_target} 이 연속한 두 여유에서
    10^{−(자릿수−10)} 안으로 일치할 때까지 여유를 두 배로 늘립니다.

    Args:
        config: 오라클 설정
        coeff_source: 정확한 계수 공급원
        x: 원래 변수
        n_target: 필요한 최고 지수

    Returns:
        n0 … n_target 의 값 (전체 상수배는 임의)

    Raises:
        ConvergenceError: max_doublings 번 안에 안정되지 않은 경우
    """
    source = resolve_source(coeff_source)
    ctx = config.context()
    xv = ctx.mpf(x)
    tol = ctx.power(10, -(config.precision_digits - 10))
    buffer = config.buffer if config.buffer is not None else max(50, n_target // 2)

    previous = None
    for attempt in range(config.max_doublings):
        values = _backward(source, ctx, xv, n_target + buffer, config.n0)
        anchor = values[0] if values[0] != 0 else max(values, key=abs)
        values = [v / anchor for v in values[: n_target - config.n0 + 1]]
        current = values[-1]
        if previous is not None and abs(current - previous) <= tol * abs(current):
            logger.debug("backward trace x=%.6g converged with buffer %d", x, buffer)
            return OracleTrace(
                x=float(x),
                values=tuple(values),
                n0=config.n0,
                provenance=f"backward/{config.precision_digits}",
                ctx=ctx,
            )
        if attempt >= 1:
            logger.warning("backward recurrence at x=%.6g: escalating buffer to %d", x, 2 * buffer)
        previous = current
        buffer *= 2
    raise ConvergenceError(
        f"backward recurrence at x={x:.6g} did not stabilize after {config.max_doublings} buffer doublings"
    )


def solve_connection(p_col: Sequence[float], q_col: Sequence[float], y_col: Sequence[float],
                     max_cond: float = 1e12) -> ConnectionFit:
    """
    y ≈ C₁p + C₂q 를 최소제곱으로 풉니다.

    열을 단위 노름으로 정규화한 뒤 조건수를 확인합니다.

    Raises:
        IllConditionedFitError: 조건수가 max_cond 를 넘는 경우
    """
    matrix = np.column_stack([np.asarray(p_col, dtype=float), np.asarray(q_col, dtype=float)])
    rhs = np.asarray(y_col, dtype=float)
    norms = np.linalg.norm(matrix, axis=0)
    if np.any(norms == 0.0):
        raise IllConditionedFitError("connection fit: one basis column vanishes over the window")
    scaled = matrix / norms
    condition = float(np.linalg.cond(scaled))
    if not np.isfinite(condition) or condition > max_cond:
        raise IllConditionedFitError(
            f"connection fit: condition number {condition:.3g} exceeds {max_cond:.3g} (window too small?)"
        )
    coef, *_ = np.linalg.lstsq(scaled, rhs, rcond=None)
    coef = coef / norms
    residual = float(np.linalg.norm(matrix @ coef - rhs) / max(np.linalg.norm(rhs), 1e-300))
    return ConnectionFit(c1=float(coef[0]), c2=float(coef[1]), condition=condition, residual=residual)


def fit_connection(
    approx: Approximant,
    reference: ScaledReference,
    n_window: Sequence[int],
    t: float,
    max_cond: float = 1e12,
) -> ConnectionFit:
    """
    고정된 x 에서 기준 해 ≈ C₁P_n + C₂Q_n 의 연결 상수를 맞춥니다.

    P, Q 에는 approx.connection 이 곱해지며, Q 는 실수부(Y 형 해)를 씁니다.
    x 는 n_window 의 첫 지수와 t 로 정해집니다.

    Args:
        approx: 점근 해
        reference: 기준 값 함수 (n, t) -> (가수, log_scale)
        n_window: 4개 이상의 지수
        t: 첫 지수에서의 t
        max_cond: 허용 조건수

    Returns:
        ConnectionFit
    """
    if len(n_window) < 4:
        raise DomainError("connection fit needs a window of at least 4 indices")
    first = n_window[0]
    p_col, q_col, y_col = [], [], []
    for n in n_window:
        t_n = shifted_t(approx, first, t, n - first)
        result = evaluate(approx, n, t_n)
        mantissa, ref_scale = reference(n, t_n)
        scale = result.log_scale
        # 행 전체를 e^{scale} 로 나눕니다.
        p_col.append(approx.connection * result.p_value)
        q_col.append(approx.connection * complex(result.q_value).real * math.exp(-2.0 * scale))
        y_col.append(mantissa * math.exp(ref_scale - scale))
    fit = solve_connection(p_col, q_col, y_col, max_cond)
    logger.info("connection fit at t=%.6g: C1=%.6g C2=%.3g (cond %.3g)", t, fit.c1, fit.c2, fit.condition)
    return fit


def make_reference(trace_for_x: Callable[[float, int], OracleTrace], approx: Approximant,
                   max_traces: int = REFERENCE_TRACES) -> ScaledReference:
    """
    x 별 기준 해 생성기로부터 (n, t) 기준 값 함수를 만듭니다.

    같은 x 를 가리키는 (n, t) 들은 하나의 해를 공유합니다. 보관하는 해는
    가장 최근에 쓴 max_traces 개입니다.

    Args:
        trace_for_x: (x, n_max) -> OracleTrace
        approx: t 를 x = N^θ t 로 바꿀 점근 해
        max_traces: 보관할 해의 최대 개수

    Returns:
        (n, t) -> (가수, log_scale)
    """
    traces: "OrderedDict[str, OracleTrace]" = OrderedDict()
    frame = approx.frame

    def reference(n: int, t: float) -> Tuple[float, float]:
        x = (n + frame.tau0) ** frame.theta * t
        key = f"{x:.12e}"
        trace = traces.get(key)
        if trace is None or trace.n_max < n:
            trace = trace_for_x(x, n + 64)
            traces[key] = trace
        traces.move_to_end(key)
        while len(traces) > max_traces:
            traces.popitem(last=False)
        return trace.scaled(n)

    return reference
