"""핵심 점화식 시스템, 전이 좌표, 점근 해 평가"""

from uniasym.core.system import RecurrenceSystem, CaseTransform, canonicalize, shift_and_recast
from uniasym.core.frame import TransitionFrame
from uniasym.core.approximant import Approximant, EvalResult, build_approximant, evaluate

__all__ = [
    'RecurrenceSystem', 'CaseTransform', 'canonicalize', 'shift_and_recast',
    'TransitionFrame',
    'Approximant', 'EvalResult', 'build_approximant', 'evaluate',
]
