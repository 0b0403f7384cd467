"""
좌표계 캐시 관리 모듈

이 모듈은 TransitionFrame과 CoefficientSet을 메모리에 캐싱하고
버전이 붙은 JSON 문서로 저장/로딩하는 싱글톤 FrameCache를 제공합니다.
"""

from typing import Dict, Optional, Tuple
import json
import os

from uniasym.components.coefficients import CoefficientSet, build_coefficient_set
from uniasym.core.frame import TransitionFrame
from uniasym.core.system import RecurrenceSystem, canonicalize
from uniasym.utils.errors import ValidationError
from uniasym.utils.helpers import Defaults
from uniasym.utils.logging_config import get_logger

logger = get_logger(__name__)

DOCUMENT_FORMAT = "uniasym-frame"
DOCUMENT_VERSION = 1


class FrameCache:
    """
    좌표계와 계수를 캐싱하기 위한 싱글톤 매니저

    이 매니저는 다음을 처리합니다:
    - 시스템 키별 TransitionFrame 캐싱
    - (시스템 키, p) 별 CoefficientSet 캐싱
    - JSON 문서 저장과 로딩

    같은 시스템의 ζ 표와 계수 함수를 한 번만 만들도록 합니다.
    """

    _instance: Optional['FrameCache'] = None

    def __new__(cls):
        """싱글톤 패턴을 구현합니다."""
        if cls._instance is None:
            cls._instance = super(FrameCache, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        """캐시 매니저를 초기화합니다 (한 번만)."""
        if self._initialized:
            return

        self._initialized = True
        self.frames: Dict[str, TransitionFrame] = {}
        self.coefficients: Dict[Tuple[str, int], CoefficientSet] = {}
        self.base_path: str = ""

    def set_base_path(self, path: str) -> None:
        """
        문서 저장/로딩을 위한 기본 경로를 설정합니다.

        Args:
            path: 기본 디렉토리 경로
        """
        self.base_path = path

    @staticmethod
    def _key(system: RecurrenceSystem, sigma: Optional[float], window_lo: float, nu_branch: str) -> str:
        sigma_text = "default" if sigma is None else f"{sigma:.17g}"
        return f"{system.key}|sigma={sigma_text}|lo={window_lo:.17g}|branch={nu_branch}"

    def get_frame(
        self,
        system: RecurrenceSystem,
        sigma: Optional[float] = None,
        window_lo: float = Defaults.WINDOW_LO,
        nu_branch: str = "principal",
    ) -> TransitionFrame:
        """
        시스템의 좌표계를 가져오거나 만듭니다.

        Args:
            system: 사용자 시스템
            sigma: 제외 폭
            window_lo: 창 하한 (t₂ 단위)
            nu_branch: 차수 가지

        Returns:
            캐시된 TransitionFrame
        """
        key = self._key(system, sigma, window_lo, nu_branch)
        if key not in self.frames:
            self.frames[key] = TransitionFrame.build(system, sigma=sigma, window_lo=window_lo, nu_branch=nu_branch)
        return self.frames[key]

    def get_coefficients(self, frame: TransitionFrame, order: int) -> CoefficientSet:
        """
        좌표계의 계수 묶음을 가져오거나 만듭니다.

        Args:
            frame: 좌표계
            order: 전개 차수 p

        Returns:
            캐시된 CoefficientSet
        """
        key = (self._frame_key(frame), order)
        if key not in self.coefficients:
            self.coefficients[key] = build_coefficient_set(frame, order)
        return self.coefficients[key]

    @staticmethod
    def _frame_key(frame: TransitionFrame) -> str:
        return f"{frame.system.key}|sigma={frame.sigma:.17g}|lo={frame.window_lo:.17g}|nu={frame.nu:.17g}"

    def _full_path(self, path: str) -> str:
        return os.path.join(self.base_path, path)

    def save_document(self, path: str, frame: TransitionFrame,
                      coeffs: Optional[CoefficientSet] = None) -> str:
        """
        좌표계(와 계수)를 JSON 문서로 저장합니다.

        Args:
            path: 파일 경로 (base_path 기준 상대 경로)
            frame: 좌표계
            coeffs: 선택적 계수 묶음

        Returns:
            저장한 전체 경로
        """
        document = {
            "format": DOCUMENT_FORMAT,
            "version": DOCUMENT_VERSION,
            "frame": frame.to_dict(),
            "coefficients": coeffs.to_dict() if coeffs is not None else None,
        }
        full_path = self._full_path(path)
        with open(full_path, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=2)
        logger.info("saved frame document to %s", full_path)
        return full_path

    def load_document(
        self,
        path: str,
        system: Optional[RecurrenceSystem] = None,
    ) -> Tuple[TransitionFrame, Optional[CoefficientSet]]:
        """
        JSON 문서에서 좌표계와 계수를 로드하고 캐시에 등록합니다.

        Args:
            path: 파일 경로 (base_path 기준 상대 경로)
            system: 정확한 계수 공급원을 다시 붙일 사용자 시스템 (선택)

        Returns:
            (좌표계, 계수 묶음 또는 None)

        Raises:
            FileNotFoundError: 문서 파일이 존재하지 않는 경우
            ValidationError: 형식이나 버전이 맞지 않는 경우
        """
        full_path = self._full_path(path)
        if not os.path.exists(full_path):
            raise FileNotFoundError(f"Frame document not found: {full_path}")

        with open(full_path, "r", encoding="utf-8") as f:
            document = json.load(f)
        if document.get("format") != DOCUMENT_FORMAT:
            raise ValidationError(f"{full_path}: not a {DOCUMENT_FORMAT} document")
        if document.get("version") != DOCUMENT_VERSION:
            raise ValidationError(
                f"{full_path}: document version {document.get('version')} != {DOCUMENT_VERSION}"
            )

        canonical = canonicalize(system)[0] if system is not None else None
        frame = TransitionFrame.from_dict(document["frame"], canonical)
        coeffs = None
        if document.get("coefficients") is not None:
            coeffs = CoefficientSet.from_dict(document["coefficients"])
            self.coefficients[(self._frame_key(frame), coeffs.order_p)] = coeffs
        logger.info("loaded frame document %s", full_path)
        return frame, coeffs

    def clear(self) -> None:
        """캐시된 모든 좌표계와 계수를 지웁니다."""
        self.frames.clear()
        self.coefficients.clear()
