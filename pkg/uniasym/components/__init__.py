"""Bessel 커널, Chebyshev 함수, 보정 계수 엔진 컴포넌트"""

from uniasym.components.bessel import bessel_jy, bessel_ik, eval_on_imaginary, bessel_selftest
from uniasym.components.chebfun import ChebFun
from uniasym.components.ghkl import gamma_lm, ghkl_blocks, ghkl_closed_form
from uniasym.components.coefficients import CoefficientSet, build_coefficient_set, fg_terms, ab_next

__all__ = [
    'bessel_jy', 'bessel_ik', 'eval_on_imaginary', 'bessel_selftest',
    'ChebFun',
    'gamma_lm', 'ghkl_blocks', 'ghkl_closed_form',
    'CoefficientSet', 'build_coefficient_set', 'fg_terms', 'ab_next',
]
