"""유틸리티 컴포넌트와 헬퍼 함수"""

from uniasym.utils.config import RunConfig
from uniasym.utils.errors import UniasymError, ValidationError, NumericalError
from uniasym.utils.logging_config import get_logger, setup_logging
from uniasym.utils.helpers import *

__all__ = ['RunConfig', 'UniasymError', 'ValidationError', 'NumericalError', 'get_logger', 'setup_logging']
