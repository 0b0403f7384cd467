"""
설정 관리 모듈

이 모듈은 ``section.key = value`` 형식의 평면 텍스트 설정 로딩과 저장을 제공합니다.
"""

from typing import Any, Callable, Dict, List, Optional, Tuple
import copy
import os

import numpy as np

from uniasym.utils.errors import ConfigError
from uniasym.utils.helpers import Defaults, format_real, parse_real_list


def _parse_int(text: str) -> int:
    return int(text)


def _parse_float(text: str) -> float:
    return float(text)


def _parse_optional_float(text: str) -> Optional[float]:
    return None if text.lower() in ("", "none") else float(text)


def _parse_optional_str(text: str) -> Optional[str]:
    return None if text.lower() in ("", "none") else text


def _parse_int_list(text: str) -> List[int]:
    return [int(item.strip()) for item in text.split(",") if item.strip()]


def _parse_optional_reals(text: str) -> Optional[List[float]]:
    return None if text.lower() in ("", "none") else parse_real_list(text)


def _parse_points(text: str) -> List[Tuple[int, float]]:
    points = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        n_text, _, v_text = item.partition(":")
        points.append((int(n_text), float(v_text)))
    return points


def _choice(*options: str) -> Callable[[str], str]:
    def parse(text: str) -> str:
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return text
    return parse


def _format(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, float):
        return format_real(value)
    if isinstance(value, (list, tuple)):
        parts = []
        for item in value:
            if isinstance(item, tuple):
                parts.append(f"{item[0]}:{format_real(item[1])}")
            else:
                parts.append(_format(item))
        return ", ".join(parts)
    return str(value)


# 키별 파서
_PARSERS: Dict[str, Dict[str, Callable[[str], Any]]] = {
    "system": {
        "kind": _choice("laguerre", "series", "constant"),
        "theta": _parse_float,
        "alpha": parse_real_list,
        "beta": parse_real_list,
    },
    "laguerre": {
        "m": _parse_int,
        "alpha": _parse_float,
        "q": _parse_float,
    },
    "constant": {
        "a": _parse_float,
        "b": _parse_float,
    },
    "run": {
        "order": _parse_int,
        "sigma": _parse_optional_float,
        "window_lo": _parse_float,
        "n_list": _parse_int_list,
        "block": _parse_int,
        "n_min": _parse_int,
    },
    "grid": {
        "variable": _choice("z", "t"),
        "lo": _parse_optional_float,
        "hi": _parse_optional_float,
        "count": _parse_int,
        "points": _parse_optional_reals,
    },
    "oracle": {
        "precision_digits": _parse_int,
        "anchor": _parse_int,
    },
    "budget": {
        "points": _parse_points,
        "safety": _parse_float,
    },
    "output": {
        "csv": _parse_optional_str,
        "cache": _parse_optional_str,
    },
}


class RunConfig:
    """
    배치 실행을 위한 설정 매니저

    기본값 지원과 함께 평면 텍스트 파일로부터/로 설정을 로딩하고 저장합니다.
    알 수 없는 키는 즉시 오류입니다.

    Attributes:
        config_path: 설정 파일 경로 (없으면 기본값만 사용)
        data: 섹션별 설정 값의 딕셔너리
        defaults: 기본값의 딕셔너리
    """

    def __init__(self, config_path: Optional[str] = None):
        """
        설정 매니저를 초기화합니다.

        Args:
            config_path: 설정 파일 경로
        """
        self.config_path = config_path
        self.data: Dict[str, Dict[str, Any]] = {}
        self.defaults: Dict[str, Dict[str, Any]] = self._get_defaults()

        # 설정 로드
        self.load()

    def _get_defaults(self) -> Dict[str, Dict[str, Any]]:
        """
        기본 설정 값을 반환합니다.

        Returns:
            기본 설정 딕셔너리
        """
        return {
            # 점화식 시스템
            "system": {"kind": "laguerre", "theta": 1.0, "alpha": [-1.0, 0.0], "beta": [2.0, 0.0, 0.0]},
            "laguerre": {"m": 1, "alpha": 0.0, "q": 1.0},
            "constant": {"a": 0.0, "b": 2.0},

            # 실행 설정
            "run": {
                "order": 0,
                "sigma": None,
                "window_lo": Defaults.WINDOW_LO,
                "n_list": [50, 100, 200, 400],
                "block": 6,
                "n_min": Defaults.N_MIN,
            },
            "grid": {"variable": "z", "lo": None, "hi": None, "count": 1, "points": None},

            # 오라클과 예산
            "oracle": {"precision_digits": Defaults.PRECISION_DIGITS, "anchor": 512},
            "budget": {"points": [(100, 0.5), (100, -0.5)], "safety": Defaults.BUDGET_SAFETY},

            # 출력
            "output": {"csv": None, "cache": None},
        }

    def load(self) -> None:
        """
        파일에서 설정을 로드합니다.

        경로가 없으면 기본값을 사용합니다.

        Raises:
            ConfigError: 파일이 없거나 구문/값이 잘못된 경우
        """
        self.data = copy.deepcopy(self.defaults)
        if self.config_path is None:
            return
        if not os.path.exists(self.config_path):
            raise ConfigError(f"Config not found: {self.config_path}")

        with open(self.config_path, "r", encoding="utf-8") as f:
            text = f.read()
        self.loads(text)

    def loads(self, text: str) -> None:
        """
        설정 텍스트를 파싱해 현재 값 위에 덮어씁니다.

        Args:
            text: ``section.key = value`` 줄들

        Raises:
            ConfigError: 구문 오류, 알 수 없는 키, 잘못된 값
        """
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"line {lineno}: expected 'section.key = value'")
            self.set(key.strip(), value.strip(), parse=True)
        self.validate()

    def save(self, path: Optional[str] = None) -> None:
        """
        설정을 파일에 저장합니다.

        Args:
            path: 저장 경로 (기본값은 config_path)
        """
        target = path or self.config_path
        if target is None:
            raise ConfigError("no path to save the config to")
        lines = []
        for section, values in self.data.items():
            for key, value in values.items():
                lines.append(f"{section}.{key} = {_format(value)}")
        with open(target, "w", encoding="utf-8") as f:
            f.write("\n".join(lines) + "\n")

    def _split(self, key: str) -> Tuple[str, str]:
        section, _, name = key.partition(".")
        if not name or "." in name:
            raise ConfigError(f"{key}: keys have the form section.key")
        if section not in _PARSERS or name not in _PARSERS[section]:
            raise ConfigError(f"{key}: unknown config key")
        return section, name

    def get(self, key: str, default: Any = None) -> Any:
        """
        설정 값을 가져옵니다.

        Args:
            key: ``section.key`` 형식의 키
            default: 키가 존재하지 않을 경우 기본값

        Returns:
            설정 값 또는 기본값
        """
        section, _, name = key.partition(".")
        return self.data.get(section, {}).get(name, default)

    def set(self, key: str, value: Any, parse: bool = False) -> None:
        """
        설정 값을 설정합니다.

        Args:
            key: ``section.key`` 형식의 키
            value: 설정할 값
            parse: True이면 value를 텍스트로 보고 해당 키의 파서로 변환

        Raises:
            ConfigError: 알 수 없는 키이거나 값을 파싱할 수 없는 경우
        """
        section, name = self._split(key)
        if parse:
            try:
                value = _PARSERS[section][name](value)
            except ValueError as e:
                raise ConfigError(f"{key}: invalid value {value!r} ({e})") from e
        self.data[section][name] = value

    def get_nested(self, *keys: str, default: Any = None) -> Any:
        """
        섹션과 키로 설정 값을 가져옵니다.

        예제: config.get_nested("laguerre", "alpha")

        Args:
            keys: 탐색할 키 시퀀스
            default: 경로가 존재하지 않을 경우 기본값

        Returns:
            설정 값 또는 기본값
        """
        value: Any = self.data
        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default
        return value

    def set_nested(self, section: str, key: str, value: Any) -> None:
        """
        섹션과 키로 설정 값을 설정합니다.

        예제: config.set_nested("run", "order", 1)

        Args:
            section: 섹션 이름
            key: 섹션 내 키
            value: 설정할 값
        """
        self.set(".".join((section, key)), value)

    def reset_to_defaults(self) -> None:
        """모든 설정을 기본값으로 재설정합니다."""
        self.data = copy.deepcopy(self.defaults)

    def has_key(self, key: str) -> bool:
        """
        설정에 키가 있는지 확인합니다.

        Args:
            key: ``section.key`` 형식의 키

        Returns:
            키가 존재하면 True
        """
        section, _, name = key.partition(".")
        return name in self.data.get(section, {})

    def get_all(self) -> Dict[str, Dict[str, Any]]:
        """
        모든 설정 데이터를 가져옵니다.

        Returns:
            모든 설정의 딕셔너리 (복사본)
        """
        return copy.deepcopy(self.data)

    def update(self, new_data: Dict[str, Any]) -> None:
        """
        ``section.key`` 키를 가진 딕셔너리로 설정을 업데이트합니다.

        Args:
            new_data: 업데이트할 값의 딕셔너리
        """
        for key, value in new_data.items():
            self.set(key, value)
        self.validate()

    def grid_values(self) -> List[float]:
        """
        격자 점들을 설정된 변수(z 또는 t)로 반환합니다.

        Returns:
            격자 점 리스트
        """
        points = self.get("grid.points")
        if points is not None:
            return list(points)
        lo, hi = self.get("grid.lo"), self.get("grid.hi")
        if lo is None:
            return [0.5]
        if hi is None or self.get("grid.count") == 1:
            return [lo]
        return [float(v) for v in np.linspace(lo, hi, self.get("grid.count"))]

    def validate(self) -> None:
        """
        도메인 제약을 다시 확인합니다.

        Raises:
            ConfigError: 위반한 불변식의 이름을 담은 메시지와 함께
        """
        kind = self.get("system.kind")
        if kind == "series":
            theta = self.get("system.theta")
            alpha = self.get("system.alpha")
            beta = self.get("system.beta")
            if theta in (0.0, 2.0):
                raise ConfigError("system.theta: theta must not be 0 or 2 (exceptional case)")
            if not alpha or alpha[0] == 0.0:
                raise ConfigError("system.alpha: alpha_0 must be nonzero")
            if len(alpha) < 2:
                raise ConfigError("system.alpha: alpha_1 is required to fix the shift tau_0")
            if len(beta) < 3:
                raise ConfigError("system.beta: beta_0, beta_1, beta_2 are required")
            if abs(beta[0]) != 2.0:
                raise ConfigError("system.beta: beta_0 must be +2 or -2 (transition point at the origin)")
            if beta[1] != 0.0:
                raise ConfigError("system.beta: beta_1 must be 0")
            if 1.0 + 4.0 * beta[2] < 0.0:
                raise ConfigError("system.beta: 1 + 4*beta_2' must be >= 0 (real Bessel order)")
        elif kind == "laguerre":
            m = self.get("laguerre.m")
            if m < 1:
                raise ConfigError("laguerre.m: m must be a positive integer")
            if self.get("laguerre.alpha") <= -1.0:
                raise ConfigError("laguerre.alpha: alpha must exceed -1")
            if self.get("laguerre.q") <= 0.0:
                raise ConfigError("laguerre.q: q must be positive")

        if self.get("run.order") not in range(Defaults.P_MAX + 1):
            raise ConfigError(f"run.order: order must be in 0..{Defaults.P_MAX}")
        sigma = self.get("run.sigma")
        if sigma is not None and sigma <= 0.0:
            raise ConfigError("run.sigma: sigma must be positive")
        if self.get("run.window_lo") >= 0.0:
            raise ConfigError("run.window_lo: window lower bound must be negative")
        n_list = self.get("run.n_list")
        if not n_list or min(n_list) < 1:
            raise ConfigError("run.n_list: at least one n >= 1 is required")
        if self.get("run.block") < 1:
            raise ConfigError("run.block: block must be >= 1")
        if self.get("grid.count") < 1:
            raise ConfigError("grid.count: count must be >= 1")
        if self.get("oracle.precision_digits") < 30:
            raise ConfigError("oracle.precision_digits: precision must be >= 30 digits")
        if self.get("budget.safety") <= 0.0:
            raise ConfigError("budget.safety: safety factor must be positive")
