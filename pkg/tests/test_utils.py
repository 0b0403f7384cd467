"""예외 계층, 헬퍼 함수, 로깅 테스트"""

import io
import logging
import math

import pytest
pytest.importorskip("hypothesis")
import hypothesis as h
import hypothesis.strategies as st

from uniasym.utils.errors import (
    AcceptanceError,
    BesselOverflowError,
    ConvergenceError,
    DomainError,
    IllConditionedFitError,
    ImaginaryOrderError,
    NumericalError,
    UniasymError,
    ValidationError,
)
from uniasym.utils.helpers import (
    Timer,
    continued_arccos,
    falling,
    format_real,
    gen_binom,
    log_log_slope,
    parse_real_list,
    rising,
)
from uniasym.utils.logging_config import get_logger, setup_logging


@pytest.mark.parametrize("cls, code", [
    (UniasymError, 1),
    (ValidationError, 2),
    (DomainError, 2),
    (ImaginaryOrderError, 2),
    (NumericalError, 3),
    (ConvergenceError, 3),
    (IllConditionedFitError, 3),
    (BesselOverflowError, 3),
    (AcceptanceError, 4),
])
def test_exit_codes(cls, code):
    assert cls("boom").exit_code == code


def test_builtin_bases():
    assert issubclass(ValidationError, ValueError)
    assert issubclass(NumericalError, ArithmeticError)
    assert issubclass(BesselOverflowError, OverflowError)
    with pytest.raises(ValueError):
        raise DomainError("x must be positive")


def test_continued_arccos_branches():
    assert continued_arccos(0.5) == pytest.approx(math.pi / 3)
    assert continued_arccos(-1.0) == pytest.approx(math.pi)
    above = continued_arccos(2.0)
    assert above.real == 0.0
    assert above.imag == pytest.approx(math.acosh(2.0))


@h.given(st.floats(min_value=-30.0, max_value=30.0), st.integers(min_value=0, max_value=8))
def test_gen_binom_matches_falling_factorial(a, k):
    assert gen_binom(a, k) * math.factorial(k) == pytest.approx(falling(a, k), rel=1e-12, abs=1e-12)


def test_factorials_and_binomials():
    assert falling(5.0, 3) == 60.0
    assert rising(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5)
    assert gen_binom(-1.0, 3) == -1.0
    assert gen_binom(0.5, 2) == pytest.approx(-0.125)
    assert gen_binom(7.0, 0) == 1.0


def test_format_and_parse():
    assert format_real(0.1) == "0.10000000000000001"
    assert format_real(2.0 + 3.0j) == "2"
    assert parse_real_list(" 1, 2.5, -3 ,") == [1.0, 2.5, -3.0]
    with pytest.raises(ValueError):
        parse_real_list("1, two")


@h.given(st.floats(min_value=0.5, max_value=4.0), st.floats(min_value=1e-3, max_value=1e3))
def test_log_log_slope_recovers_power(power, scale):
    ns = [50, 100, 200, 400]
    errors = [scale * n ** -power for n in ns]
    assert log_log_slope(ns, errors) == pytest.approx(-power, abs=1e-9)


def test_timer():
    timer = Timer()
    assert not timer.running
    with timer:
        assert timer.running
    assert not timer.running
    assert timer.elapsed >= 0.0
    assert timer.stop() == timer.elapsed


def test_logger_namespace_and_setup():
    assert get_logger("frame").name == "uniasym.frame"
    assert get_logger("uniasym.cli").name == "uniasym.cli"
    setup_logging(verbose=True, stream=io.StringIO())
    assert logging.getLogger("uniasym").level == logging.DEBUG
    setup_logging(verbose=False)
    assert logging.getLogger("uniasym").level == logging.INFO
