"""
예외 정의 모듈

이 모듈은 패키지 전반에서 사용하는 예외 계층을 제공합니다.
각 예외는 CLI 종료 코드를 함께 가집니다.
"""


class UniasymError(Exception):
    """
    패키지 예외의 기반 클래스

    Attributes:
        exit_code: CLI가 이 예외로 종료할 때 사용하는 코드
    """

    exit_code: int = 1


# 검증 오류 (종료 코드 2)
class ValidationError(UniasymError, ValueError):
    """입력이 도메인 불변식을 위반한 경우"""

    exit_code = 2


class DomainError(ValidationError):
    """인자가 지원 영역을 벗어난 경우"""


class ConfigError(ValidationError):
    """설정 파일 구문 또는 값 오류"""


class ImaginaryOrderError(ValidationError):
    """1 + 4β′₂ < 0 이어서 Bessel 차수가 허수가 되는 경우"""


class UnsupportedThetaError(ValidationError):
    """θ ∈ {0, 2} 인 예외적 경우"""


class OrderUnavailableError(ValidationError):
    """요청한 전개 차수를 구성할 수 없는 경우"""


class CoefficientUnavailableError(ValidationError):
    """정확한 점화식 계수가 필요한데 제공되지 않은 경우"""


# 수치 오류 (종료 코드 3)
class NumericalError(UniasymError, ArithmeticError):
    """수치 계산 실패"""

    exit_code = 3


class QuadratureError(NumericalError):
    """적분이 요구 정확도에 도달하지 못한 경우"""


class ConvergenceError(NumericalError):
    """반복 또는 급수가 수렴하지 않은 경우"""


class SingularWeightError(NumericalError):
    """전달 방정식의 적분 하한에서 피적분 함수가 적분 불가능한 경우"""


class IllConditionedFitError(NumericalError):
    """연결 계수 최소제곱 적합이 거의 특이한 경우"""


class BesselOverflowError(NumericalError, OverflowError):
    """스케일되지 않은 변형 Bessel 값이 부동소수점 범위를 넘는 경우"""


class CalibrationUnavailableError(NumericalError):
    """오차 예산을 계산하려 했으나 보정 상수가 없는 경우"""


# 수용 기준 위반 (종료 코드 4)
class AcceptanceError(UniasymError):
    """비교 결과가 오차 예산을 크게 넘은 경우"""

    exit_code = 4
