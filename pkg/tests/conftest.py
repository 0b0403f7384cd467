"""공유 픽스처: Laguerre m=1 가중치와 그 점근 해"""

import pytest

from uniasym.core.approximant import build_approximant
from uniasym.core.frame import TransitionFrame
from uniasym.core.system import RecurrenceSystem
from uniasym.managers.cache import FrameCache
from uniasym.managers.laguerre import LaguerreTypeWeight, laguerre_reference


@pytest.fixture(scope="session")
def series_system():
    """Laguerre m=1, α=0 의 선행 항만 가진 시스템 (정확한 계수 없음)"""
    return RecurrenceSystem(1.0, (-1.0, 0.5), (2.0, 0.0, -0.25), name="leading")


@pytest.fixture(scope="session")
def series_frame(series_system):
    return TransitionFrame.build(series_system)


@pytest.fixture(scope="session")
def weight():
    return LaguerreTypeWeight()


@pytest.fixture(scope="session")
def laguerre_system(weight):
    return weight.system()


@pytest.fixture(scope="session")
def laguerre_frame(laguerre_system):
    return TransitionFrame.build(laguerre_system)


@pytest.fixture(scope="session")
def approx0(weight, laguerre_system, laguerre_frame):
    return build_approximant(laguerre_system, 0, frame=laguerre_frame,
                             connection=weight.connection_constant())


@pytest.fixture(scope="session")
def approx1(weight, laguerre_system, laguerre_frame):
    return build_approximant(laguerre_system, 1, frame=laguerre_frame,
                             connection=weight.connection_constant())


@pytest.fixture(scope="session")
def reference(weight, approx0):
    return laguerre_reference(weight, approx0)


@pytest.fixture
def frame_cache():
    cache = FrameCache()
    cache.clear()
    cache.set_base_path("")
    yield cache
    cache.clear()
    cache.set_base_path("")
