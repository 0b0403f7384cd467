"""오라클, Laguerre 형 가중치, 좌표계 캐시를 위한 매니저 컴포넌트"""

from uniasym.managers.oracle import OracleConfig, OracleTrace, forward_recurrence, backward_miller, fit_connection
from uniasym.managers.laguerre import LaguerreTypeWeight, KNormalizer, laguerre_coeffs, k_normalizer
from uniasym.managers.cache import FrameCache

__all__ = [
    'OracleConfig', 'OracleTrace', 'forward_recurrence', 'backward_miller', 'fit_connection',
    'LaguerreTypeWeight', 'KNormalizer', 'laguerre_coeffs', 'k_normalizer',
    'FrameCache',
]
