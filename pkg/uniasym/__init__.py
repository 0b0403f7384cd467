"""
uniasym - 원점 전이점을 가진 3항 점화식의 Bessel 형 균등 점근 해

이 패키지는 P_{n+1} − (A_n x + B_n) P_n + P_{n−1} = 0 형태의 점화식에 대해
전이 좌표 ζ, 보정 계수, 두 일차 독립 해의 평가를 제공하고,
확장 정밀도 점화식 오라클로 그 결과를 검증합니다.
"""

__version__ = "0.1.0"
__author__ = "uniasym Contributors"

# 핵심 모듈 임포트
from uniasym.core.system import RecurrenceSystem, CaseTransform
from uniasym.core.frame import TransitionFrame
from uniasym.core.approximant import (
    Approximant,
    EvalResult,
    build_approximant,
    eval_P,
    eval_Q,
    evaluate,
    wronskian,
    error_budget,
    calibrate,
)

# 매니저 모듈 임포트
from uniasym.managers.oracle import OracleConfig, OracleTrace, forward_recurrence, backward_miller, fit_connection
from uniasym.managers.laguerre import LaguerreTypeWeight
from uniasym.managers.cache import FrameCache

# 컴포넌트 모듈 임포트
from uniasym.components.chebfun import ChebFun
from uniasym.components.coefficients import CoefficientSet, build_coefficient_set

# 유틸리티 모듈 임포트
from uniasym.utils.config import RunConfig
from uniasym.utils.errors import *

__all__ = [
    # 핵심
    'RecurrenceSystem',
    'CaseTransform',
    'TransitionFrame',
    'Approximant',
    'EvalResult',
    'build_approximant',
    'eval_P',
    'eval_Q',
    'evaluate',
    'wronskian',
    'error_budget',
    'calibrate',
    # 매니저
    'OracleConfig',
    'OracleTrace',
    'forward_recurrence',
    'backward_miller',
    'fit_connection',
    'LaguerreTypeWeight',
    'FrameCache',
    # 컴포넌트
    'ChebFun',
    'CoefficientSet',
    'build_coefficient_set',
    # 유틸리티
    'RunConfig',
]
