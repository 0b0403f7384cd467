"""
헬퍼 유틸리티 모듈

이 모듈은 수치 계산 전반에서 쓰이는 상수와 작은 함수들을 제공합니다.
"""

import cmath
import math
import time
from typing import List, Sequence, Union

import numpy as np


# 기본값 상수
class Defaults:
    """공통 기본값 상수"""
    SIGMA_FRACTION = 1e-3        # σ = SIGMA_FRACTION · t₂
    WINDOW_LO = -5.0             # 창 하한 (t₂ 단위)
    ORIGIN_WINDOW = 1e-2         # |t| < ORIGIN_WINDOW · t₂ 이면 origin-window
    N_MIN = 10
    P_MAX = 2
    CHEB_TOL = 1e-10
    CHEB_MAX_COEFFS = 2048
    QUAD_TOL = 1e-12
    PRECISION_DIGITS = 60
    BUDGET_SAFETY = 10.0
    CSV_DIGITS = 17


# 수치 함수
def continued_arccos(c: complex) -> complex:
    """
    arccos를 실수축 c > 1 너머로 해석 접속합니다.

    c ≤ 1 에서는 보통의 arccos, c > 1 에서는 i·arccosh(c)를 돌려줍니다.

    Args:
        c: 인자

    Returns:
        접속된 arccos 값
    """
    c = complex(c)
    if c.imag == 0.0 and c.real > 1.0:
        return 1j * math.acosh(c.real)
    if c.imag == 0.0 and c.real >= -1.0:
        return complex(math.acos(c.real))
    return cmath.acos(c)


def falling(a: float, k: int) -> float:
    """
    하강 계승 a(a−1)…(a−k+1)을 계산합니다.

    Args:
        a: 실수
        k: 항의 개수 (k ≥ 0)

    Returns:
        하강 계승 값
    """
    result = 1.0
    for i in range(k):
        result *= a - i
    return result


def rising(a: float, k: int) -> float:
    """상승 계승 (a)_k"""
    result = 1.0
    for i in range(k):
        result *= a + i
    return result


def gen_binom(a: float, k: int) -> float:
    """
    일반화 이항계수 a(a−1)…(a−k+1)/k! 를 계산합니다.

    a가 음의 정수여도 됩니다.

    Args:
        a: 위 인자 (실수)
        k: 아래 인자 (k ≥ 0)

    Returns:
        이항계수
    """
    return falling(a, k) / math.factorial(k)


def format_real(value: Union[float, complex], digits: int = Defaults.CSV_DIGITS) -> str:
    """
    실수를 유효숫자 17자리 십진 문자열로 변환합니다.

    Args:
        value: 변환할 값 (복소수는 실수부만 사용)
        digits: 유효숫자 자릿수

    Returns:
        문자열 표현
    """
    if isinstance(value, complex):
        value = value.real
    return f"{float(value):.{digits}g}"


def parse_real_list(text: str) -> List[float]:
    """
    쉼표로 구분된 실수 목록을 파싱합니다.

    Args:
        text: "1, 2.5, -3" 형태의 문자열

    Returns:
        실수 리스트

    Raises:
        ValueError: 항목이 실수가 아닌 경우
    """
    items = [item.strip() for item in text.split(",")]
    return [float(item) for item in items if item]


def log_log_slope(ns: Sequence[float], errors: Sequence[float]) -> float:
    """
    log(error) 대 log(N)의 최소제곱 기울기를 계산합니다.

    관측 수렴 차수는 이 값의 부호를 바꾼 것입니다.

    Args:
        ns: N 값들
        errors: 양수 오차들

    Returns:
        적합된 기울기
    """
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(errors, dtype=float))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


class Timer:
    """
    실행 시간 측정을 위한 간단한 스톱워치

    ``with`` 블록으로 사용할 수 있습니다.

    Attributes:
        started_at: 시작 시각 (perf_counter)
        elapsed: 마지막으로 측정된 경과 시간 (초)
        running: 측정 중인지 여부
    """

    def __init__(self, autostart: bool = False):
        """
        타이머를 초기화합니다.

        Args:
            autostart: 즉시 측정 시작
        """
        self.started_at = 0.0
        self.elapsed = 0.0
        self.running = False
        if autostart:
            self.start()

    def start(self) -> None:
        """측정을 시작하거나 재시작합니다."""
        self.started_at = time.perf_counter()
        self.running = True

    def stop(self) -> float:
        """
        측정을 멈춥니다.

        Returns:
            경과 시간 (초)
        """
        if self.running:
            self.elapsed = time.perf_counter() - self.started_at
            self.running = False
        return self.elapsed

    def __enter__(self) -> "Timer":
        self.start()
        return self

    def __exit__(self, *exc_info) -> None:
        self.stop()


# 모든 공개 함수와 클래스 내보내기
__all__ = [
    'Defaults',
    'continued_arccos',
    'falling',
    'rising',
    'gen_binom',
    'format_real',
    'parse_real_list',
    'log_log_slope',
    'Timer',
]
