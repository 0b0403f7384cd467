"""
명령줄 인터페이스 모듈

frame, compare, convergence, wronskian, bessel-selftest 하위 명령을 제공합니다.
종료 코드: 0 통과, 2 검증 오류, 3 수치 실패, 4 수용 기준 위반.
"""

from typing import IO, List, Optional, Sequence, Tuple
import argparse
import csv
import math
import sys

from uniasym.components.bessel import TWO_OVER_PI, bessel_selftest
from uniasym.core.approximant import (
    Approximant,
    block_budget,
    block_max_error,
    build_approximant,
    calibrate,
    evaluate,
    observed_order,
    wronskian,
)
from uniasym.core.frame import TransitionFrame
from uniasym.core.system import RecurrenceSystem
from uniasym.managers.cache import FrameCache
from uniasym.managers.laguerre import LaguerreTypeWeight, laguerre_reference
from uniasym.utils.config import RunConfig
from uniasym.utils.errors import (
    AcceptanceError,
    CoefficientUnavailableError,
    UniasymError,
    ValidationError,
)
from uniasym.utils.helpers import Timer, format_real
from uniasym.utils.logging_config import get_logger, setup_logging

logger = get_logger(__name__)

NO_TRANSITION = "no transition point at the origin: t2 at infinity"


def build_system(config: RunConfig) -> Tuple[RecurrenceSystem, Optional[LaguerreTypeWeight]]:
    """
    설정으로부터 점화식 시스템을 만듭니다.

    Returns:
        (시스템, Laguerre 가중치 또는 None)

    Raises:
        ValidationError: 상수 계수 시스템 (전이 구조가 없음)
    """
    kind = config.get("system.kind")
    if kind == "constant":
        raise ValidationError(NO_TRANSITION)
    if kind == "laguerre":
        weight = LaguerreTypeWeight(
            m=config.get("laguerre.m"),
            alpha=config.get("laguerre.alpha"),
            q=config.get("laguerre.q"),
        )
        system = weight.system(digits=config.get("oracle.precision_digits"),
                               anchor=config.get("oracle.anchor"))
        return system, weight
    system = RecurrenceSystem(
        theta=config.get("system.theta"),
        alpha_series=tuple(config.get("system.alpha")),
        beta_series=tuple(config.get("system.beta")),
    )
    return system, None


def _nu_branch(weight: Optional[LaguerreTypeWeight]) -> str:
    return "negative" if weight is not None and weight.alpha < 0.0 else "principal"


def build_frame(config: RunConfig, cache_path: Optional[str] = None) -> Tuple[TransitionFrame, RecurrenceSystem,
                                                                           Optional[LaguerreTypeWeight]]:
    """
    설정의 좌표계를 캐시 문서 또는 새 계산으로 얻습니다.
    """
    system, weight = build_system(config)
    cache = FrameCache()
    if cache_path:
        try:
            frame, _ = cache.load_document(cache_path, system)
            return frame, system, weight
        except FileNotFoundError:
            logger.info("cache %s not found: building the frame", cache_path)
    frame = cache.get_frame(
        system,
        sigma=config.get("run.sigma"),
        window_lo=config.get("run.window_lo"),
        nu_branch=_nu_branch(weight),
    )
    return frame, system, weight


def grid_t(config: RunConfig, frame: TransitionFrame) -> List[float]:
    """격자 점을 사용자 t 로 변환합니다 (z 이면 t = z·t₂)."""
    values = config.grid_values()
    if config.get("grid.variable") == "t":
        return values
    return [frame.transform.canonical_t(v * frame.t2) for v in values]


def _to_t(config: RunConfig, frame: TransitionFrame, value: float) -> float:
    if config.get("grid.variable") == "t":
        return value
    return frame.transform.canonical_t(value * frame.t2)


def _prepare(config: RunConfig, cache_path: Optional[str]) -> Tuple[Approximant, LaguerreTypeWeight]:
    frame, system, weight = build_frame(config, cache_path)
    if weight is None or system.exact_coeffs is None:
        raise CoefficientUnavailableError("compare/convergence need an oracle-capable system (laguerre)")
    order = config.get("run.order")
    coeffs = FrameCache().get_coefficients(frame, order)
    approx = build_approximant(
        system, order, frame=frame, coeffs=coeffs,
        connection=weight.connection_constant(), n_min=config.get("run.n_min"),
    )
    return approx, weight


def _writer(stream: IO[str]):
    return csv.writer(stream, lineterminator="\n")


def cmd_frame(config: RunConfig, out: IO[str], cache_path: Optional[str] = None) -> int:
    """
    좌표계를 만들어 저장하고 τ₀, ν, t₁, t₂, σ 를 출력합니다.
    """
    frame, _, _ = build_frame(config)
    if cache_path:
        coeffs = FrameCache().get_coefficients(frame, config.get("run.order"))
        FrameCache().save_document(cache_path, frame, coeffs)
    writer = _writer(out)
    writer.writerow(["tau0", "nu", "t1", "t2", "sigma", "theta"])
    writer.writerow([format_real(v) for v in (frame.tau0, frame.nu, frame.t1, frame.t2, frame.sigma, frame.theta)])
    return 0


def cmd_compare(config: RunConfig, out: IO[str], cache_path: Optional[str] = None) -> int:
    """
    (n, t) 별로 점근 해와 오라클 𝒫_n 을 비교한 CSV 를 씁니다.

    Raises:
        AcceptanceError: 묶음의 최대 절대 오차가 같은 묶음의 최대 예산의 10배를 넘는 행이 있는 경우
    """
    approx, weight = _prepare(config, cache_path)
    frame = approx.frame
    digits = config.get("oracle.precision_digits")
    reference = laguerre_reference(weight, approx, digits)
    points = [(n, _to_t(config, frame, v)) for n, v in config.get("budget.points")]
    approx = calibrate(approx, reference, points, safety=config.get("budget.safety"))
    block = config.get("run.block")

    writer = _writer(out)
    writer.writerow(["n", "t", "z", "asymptotic", "oracle", "log_scale", "abs_err", "rel_err", "budget"])
    violations = 0
    for n in config.get("run.n_list"):
        for t in grid_t(config, frame):
            result = evaluate(approx, n, t)
            mantissa, ref_scale = reference(n, t)
            oracle = mantissa * math.exp(ref_scale - result.log_scale)
            abs_err, rel_err = block_max_error(approx, reference, n, t, block)
            budget = block_budget(approx, n, t, block)
            if abs_err > 10.0 * budget:
                violations += 1
            writer.writerow([
                n, format_real(t), format_real(frame.transform.canonical_t(t) / frame.t2),
                format_real(approx.connection * result.p_value), format_real(oracle),
                format_real(result.log_scale), format_real(abs_err), format_real(rel_err),
                format_real(budget),
            ])
    if violations:
        raise AcceptanceError(f"{violations} rows exceed ten times the error budget")
    return 0


def cmd_convergence(config: RunConfig, out: IO[str], cache_path: Optional[str] = None) -> int:
    """
    t 별 관측 차수 q̂ 를 log-log 적합으로 구하고 q̂ ≥ p+1−0.3 이면 PASS 입니다.

    Raises:
        AcceptanceError: FAIL 인 t 가 있는 경우
    """
    approx, weight = _prepare(config, cache_path)
    frame = approx.frame
    reference = laguerre_reference(weight, approx, config.get("oracle.precision_digits"))
    n_list = config.get("run.n_list")
    if len(n_list) < 2:
        raise ValidationError("run.n_list: at least two n values are needed for a slope")
    block = config.get("run.block")
    target = approx.order_p + 1 - 0.3

    writer = _writer(out)
    writer.writerow(["t", "z", "observed_order", "expected", "verdict"] + [f"rel_err_n{n}" for n in n_list])
    failures = 0
    for t in grid_t(config, frame):
        errors = [block_max_error(approx, reference, n, t, block)[1] for n in n_list]
        big_n = [n + frame.tau0 for n in n_list]
        slope = observed_order(big_n, errors)
        verdict = "PASS" if slope >= target else "FAIL"
        failures += verdict == "FAIL"
        writer.writerow([format_real(t), format_real(frame.transform.canonical_t(t) / frame.t2),
                         format_real(slope), approx.order_p + 1, verdict] + [format_real(e) for e in errors])
    if failures:
        raise AcceptanceError(f"observed order below {target:g} at {failures} grid points")
    return 0


def cmd_wronskian(config: RunConfig, out: IO[str], cache_path: Optional[str] = None) -> int:
    """Casoratian P_{n+1}Q_n − P_nQ_{n+1} 과 2/π 의 비교 표"""
    frame, system, weight = build_frame(config, cache_path)
    order = config.get("run.order")
    approx = build_approximant(system, order, frame=frame, coeffs=FrameCache().get_coefficients(frame, order),
                               n_min=config.get("run.n_min"))
    writer = _writer(out)
    writer.writerow(["n", "t", "wronskian", "two_over_pi", "rel_dev"])
    for n in config.get("run.n_list"):
        for t in grid_t(config, frame):
            value = wronskian(approx, n, t)
            deviation = abs(abs(value) - TWO_OVER_PI) / TWO_OVER_PI
            writer.writerow([n, format_real(t), format_real(value), format_real(TWO_OVER_PI), format_real(deviation)])
    return 0


def cmd_bessel_selftest(out: IO[str]) -> int:
    """Bessel 커널 불변식 표"""
    rows = bessel_selftest()
    writer = _writer(out)
    writer.writerow(["name", "value", "tolerance", "passed"])
    for row in rows:
        writer.writerow([row.name, format_real(row.value), format_real(row.tolerance), row.passed])
    failed = [row.name for row in rows if not row.passed]
    if failed:
        raise AcceptanceError(f"Bessel self-test failed: {', '.join(failed)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    """인자 파서를 만듭니다."""
    parser = argparse.ArgumentParser(
        prog="uniasym",
        description="Bessel-type uniform asymptotics for three-term recurrences with a transition point at the origin.",
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("frame", "build and cache the transition frame, print tau0, nu, t1, t2, sigma"),
        ("compare", "compare the asymptotic solution with the extended-precision oracle"),
        ("convergence", "observed convergence order per grid point"),
        ("wronskian", "Casoratian of the asymptotic pair against 2/pi"),
        ("bessel-selftest", "Bessel kernel invariant table"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", help="config file (section.key = value)")
        cmd.add_argument("--out", help="output CSV path (default stdout)")
        cmd.add_argument("--cache", help="frame document path")
        cmd.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="debug logging")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    명령줄 진입점

    Args:
        argv: 인자 목록 (기본값 sys.argv[1:])

    Returns:
        종료 코드
    """
    args = build_parser().parse_args(argv)
    setup_logging(verbose=args.verbose)
    try:
        config = RunConfig(args.config)
        out_path = args.out or config.get("output.csv")
        cache_path = args.cache or config.get("output.cache")
        stream = open(out_path, "w", newline="", encoding="utf-8") if out_path else sys.stdout
        timer = Timer(autostart=True)
        try:
            if args.command == "frame":
                return cmd_frame(config, stream, cache_path)
            if args.command == "compare":
                return cmd_compare(config, stream, cache_path)
            if args.command == "convergence":
                return cmd_convergence(config, stream, cache_path)
            if args.command == "wronskian":
                return cmd_wronskian(config, stream, cache_path)
            return cmd_bessel_selftest(stream)
        finally:
            logger.info("%s finished in %.2f s", args.command, timer.stop())
            if stream is not sys.stdout:
                stream.close()
    except UniasymError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
