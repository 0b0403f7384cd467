"""
로깅 설정 모듈

모듈별 로거를 제공하고 CLI에서 한 번만 핸들러를 구성합니다.
"""

import logging
from typing import Optional

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_configured = False


def get_logger(name: str) -> logging.Logger:
    """
    패키지 네임스페이스 아래의 로거를 반환합니다.

    Args:
        name: 보통 모듈의 ``__name__``

    Returns:
        로거 인스턴스
    """
    if not name.startswith("uniasym"):
        name = f"uniasym.{name}"
    return logging.getLogger(name)


def setup_logging(verbose: bool = False, stream: Optional[object] = None) -> None:
    """
    루트 패키지 로거에 핸들러를 연결합니다.

    Args:
        verbose: True이면 DEBUG, 아니면 INFO 레벨
        stream: 출력 스트림 (기본값은 stderr)
    """
    global _configured
    logger = logging.getLogger("uniasym")
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    if _configured:
        return
    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    _configured = True
