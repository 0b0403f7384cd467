"""
구간별 Chebyshev 함수 모듈

이 모듈은 창(window) 위의 계수 함수들을 담는 구간별 Chebyshev 근사를 제공합니다.
각 부분 구간은 numpy의 Chebyshev 급수로 표현되며, 수렴하지 않으면 자동으로 이분합니다.
"""

from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union
import math

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import legendre
from scipy.special import roots_jacobi

from uniasym.utils.errors import ConvergenceError, DomainError
from uniasym.utils.helpers import Defaults
from uniasym.utils.logging_config import get_logger

logger = get_logger(__name__)

ArrayLike = Union[float, Sequence[float], np.ndarray]

# 적응 구성 단계
DEGREES = (16, 32, 64, 128)
MIN_WIDTH = 1e-8
MAX_PIECES = 2048
ABS_FLOOR = 1e-14
RADIAL_NODES = 80
RADIAL_RATIO = 4.0


def _converged(coeffs: np.ndarray, tol: float) -> bool:
    scale = max(float(np.max(np.abs(coeffs))), ABS_FLOOR)
    tail = float(np.max(np.abs(coeffs[-3:])))
    return tail <= tol * scale


def _chop(coeffs: np.ndarray, tol: float) -> np.ndarray:
    """꼬리의 무시 가능한 계수를 잘라냅니다."""
    scale = max(float(np.max(np.abs(coeffs))), ABS_FLOOR)
    keep = len(coeffs)
    while keep > 1 and abs(coeffs[keep - 1]) <= 0.1 * tol * scale:
        keep -= 1
    return coeffs[:keep].copy()


class ChebFun:
    """
    구간별 Chebyshev 근사 함수

    인접한 부분 구간들 위의 Chebyshev 계수 벡터로 실함수를 표현합니다.
    미분은 같은 타입을 돌려줍니다.

    Attributes:
        breakpoints: 오름차순 구간 경계 (길이 = 구간 수 + 1)
        coeffs: 구간별 Chebyshev 계수 배열 리스트
        tol: 목표 정확도
    """

    def __init__(self, breakpoints: Sequence[float], coeffs: Sequence[np.ndarray],
                 tol: float = Defaults.CHEB_TOL):
        """
        계수로부터 함수를 만듭니다.

        Args:
            breakpoints: 구간 경계
            coeffs: 구간별 계수

        Raises:
            DomainError: 경계와 계수 개수가 맞지 않는 경우
        """
        self.breakpoints = np.asarray(breakpoints, dtype=float)
        self.coeffs = [np.atleast_1d(np.asarray(c, dtype=float)) for c in coeffs]
        self.tol = tol
        if len(self.breakpoints) != len(self.coeffs) + 1:
            raise DomainError("ChebFun: need one coefficient vector per subinterval")
        if np.any(np.diff(self.breakpoints) <= 0.0):
            raise DomainError("ChebFun: breakpoints must be strictly increasing")

    # 구성
    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        breakpoints: Sequence[float],
        tol: float = Defaults.CHEB_TOL,
        max_coeffs: int = Defaults.CHEB_MAX_COEFFS,
    ) -> "ChebFun":
        """
        벡터화된 함수를 적응적으로 근사합니다.

        각 초기 구간에서 차수를 16부터 128까지 올리고, 그래도 꼬리 계수가
        tol에 못 미치면 구간을 이분합니다. 최소 폭에 도달한 구간은
        max_coeffs까지 차수를 올립니다.

        Args:
            fn: 배열을 받아 같은 모양의 배열을 돌려주는 함수
            breakpoints: 초기 구간 경계
            tol: 목표 상대 정확도
            max_coeffs: 구간당 최대 계수 개수

        Returns:
            근사 함수

        Raises:
            ConvergenceError: 최소 폭 구간에서도 수렴하지 않거나 구간이 너무 많아진 경우
        """
        pending: List[Tuple[float, float]] = [
            (float(a), float(b)) for a, b in zip(breakpoints[:-1], breakpoints[1:])
        ]
        done: List[Tuple[float, float, np.ndarray]] = []
        while pending:
            lo, hi = pending.pop(0)
            coeffs = cls._fit_piece(fn, lo, hi, tol, max_coeffs)
            if coeffs is None:
                mid = 0.5 * (lo + hi)
                pending[:0] = [(lo, mid), (mid, hi)]
                if len(done) + len(pending) > MAX_PIECES:
                    raise ConvergenceError(f"ChebFun: more than {MAX_PIECES} subintervals needed")
                continue
            done.append((lo, hi, coeffs))
        done.sort(key=lambda piece: piece[0])
        edges = [done[0][0]] + [piece[1] for piece in done]
        return cls(edges, [piece[2] for piece in done], tol)

    @staticmethod
    def _fit_piece(fn: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                   tol: float, max_coeffs: int) -> Optional[np.ndarray]:
        def sample(x: np.ndarray) -> np.ndarray:
            values = np.asarray(fn(x), dtype=float)
            if not np.all(np.isfinite(values)):
                raise ConvergenceError(f"ChebFun: non-finite samples on [{lo:.6g}, {hi:.6g}]")
            return np.broadcast_to(values, x.shape)

        for degree in DEGREES:
            coeffs = C.Chebyshev.interpolate(sample, degree, domain=[lo, hi]).coef
            if _converged(coeffs, tol):
                return _chop(coeffs, tol)
        if hi - lo > MIN_WIDTH:
            return None

        degree = 2 * DEGREES[-1]
        while degree < max_coeffs:
            coeffs = C.Chebyshev.interpolate(sample, degree, domain=[lo, hi]).coef
            if _converged(coeffs, tol):
                return _chop(coeffs, tol)
            degree *= 2
        raise ConvergenceError(f"ChebFun: no convergence on [{lo:.6g}, {hi:.6g}]")

    @classmethod
    def constant(cls, value: float, domain: Tuple[float, float]) -> "ChebFun":
        """상수 함수를 만듭니다."""
        return cls([domain[0], domain[1]], [np.array([float(value)])])

    # 평가
    @property
    def domain(self) -> Tuple[float, float]:
        return float(self.breakpoints[0]), float(self.breakpoints[-1])

    @property
    def vscale(self) -> float:
        """계수 크기로 어림한 함수의 최대 크기"""
        return max(float(np.sum(np.abs(c))) for c in self.coeffs)

    def __call__(self, x: ArrayLike) -> Union[float, np.ndarray]:
        """
        점 또는 배열에서 함수를 평가합니다.

        Args:
            x: 평가 점

        Returns:
            스칼라 입력이면 float, 아니면 같은 모양의 배열

        Raises:
            DomainError: 정의역 밖의 점
        """
        arr = np.asarray(x, dtype=float)
        flat = arr.reshape(-1)
        lo, hi = self.domain
        slack = 1e-12 * max(1.0, hi - lo)
        if flat.size and (flat.min() < lo - slack or flat.max() > hi + slack):
            raise DomainError(f"ChebFun: point outside [{lo:.17g}, {hi:.17g}]")

        index = np.clip(np.searchsorted(self.breakpoints, flat, side="right") - 1,
                        0, len(self.coeffs) - 1)
        out = np.empty_like(flat)
        for k in np.unique(index):
            mask = index == k
            a, b = self.breakpoints[k], self.breakpoints[k + 1]
            s = np.clip((2.0 * flat[mask] - (a + b)) / (b - a), -1.0, 1.0)
            out[mask] = C.chebval(s, self.coeffs[k])
        if arr.ndim == 0:
            return float(out[0])
        return out.reshape(arr.shape)

    # 연산
    def deriv(self, order: int = 1) -> "ChebFun":
        """
        도함수를 계산합니다.

        Args:
            order: 미분 횟수

        Returns:
            도함수
        """
        pieces = []
        for k, c in enumerate(self.coeffs):
            width = self.breakpoints[k + 1] - self.breakpoints[k]
            if len(c) <= order:
                pieces.append(np.zeros(1))
            else:
                pieces.append(C.chebder(c, order) * (2.0 / width) ** order)
        return ChebFun(self.breakpoints, pieces, self.tol)

    def deflate(self, root: float) -> "ChebFun":
        """
        f(x) = (x − root)·g(x) 인 g를 계산합니다.

        근 가까이에서는 g(x) = ∫₀¹ f′(root + r(x − root)) dr 을 구간 경계에서
        나누어 평가하고 (radial_integral), 멀리서는 차분 몫을 씁니다.
        f(root)의 잔여값은 호출자가 확인합니다.

        Args:
            root: 정의역 안의 근

        Returns:
            몫 함수
        """
        lo, hi = self.domain
        if not lo <= root <= hi:
            raise DomainError(f"ChebFun.deflate: root {root} outside the domain")
        derivative = self.deriv()
        f_root = self(root)
        near = 0.05 * (hi - lo)

        def quotient(x: np.ndarray) -> np.ndarray:
            dx = x - root
            out = np.empty_like(x)
            far = np.abs(dx) > near
            out[far] = (self(x[far]) - f_root) / dx[far]
            if np.any(~far):
                out[~far] = radial_integral(derivative, x[~far], 0.0, self.breakpoints, origin=root)
            return out

        # 두 공식의 경계도 구간 경계로 둡니다.
        switch = {v for v in (root - near, root + near) if lo < v < hi}
        edges = sorted(set(self.breakpoints.tolist()) | {float(root)} | switch)
        return ChebFun.from_function(quotient, edges, self.tol)

    # 직렬화
    def to_dict(self) -> Dict[str, Any]:
        """
        JSON 문서용 딕셔너리로 변환합니다.

        실수는 유효숫자 17자리 문자열로 기록합니다.

        Returns:
            직렬화 가능한 딕셔너리
        """
        return {
            "tol": repr(float(self.tol)),
            "breakpoints": [f"{v:.17g}" for v in self.breakpoints],
            "coeffs": [[f"{v:.17g}" for v in c] for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ChebFun":
        """to_dict의 역변환"""
        return cls(
            [float(v) for v in data["breakpoints"]],
            [np.array([float(v) for v in c]) for c in data["coeffs"]],
            float(data["tol"]),
        )

    def __repr__(self) -> str:
        sizes = ",".join(str(len(c)) for c in self.coeffs)
        return f"ChebFun(domain={self.domain}, pieces={len(self.coeffs)}, sizes=[{sizes}])"


def _radial_pieces(cuts: np.ndarray, origin: float, z: float) -> List[Tuple[float, float]]:
    """
    origin + r(z − origin) 가 경계를 지나는 r 에서 [0, 1] 을 나눕니다.

    0 에 닿지 않는 조각은 끝점 비가 RADIAL_RATIO 이하가 되도록 기하적으로 자릅니다.
    """
    inside = (cuts - origin) / (z - origin)
    inside = np.unique(inside[(inside > 0.0) & (inside < 1.0)])
    edges = [0.0] + inside.tolist() + [1.0]
    pieces = [(edges[0], edges[1])]
    for a, b in zip(edges[1:-1], edges[2:]):
        count = max(1, int(math.ceil(math.log(b / a) / math.log(RADIAL_RATIO))))
        steps = a * (b / a) ** (np.arange(count + 1) / count)
        steps[-1] = b
        pieces.extend(zip(steps[:-1].tolist(), steps[1:].tolist()))
    return pieces


def radial_integral(
    fn: Callable[[np.ndarray], np.ndarray],
    z: ArrayLike,
    exponent: float,
    cuts: Sequence[float],
    origin: float = 0.0,
) -> np.ndarray:
    """
    I(z) = ∫₀¹ r^{exponent} fn(origin + r(z − origin)) dr 를 계산합니다.

    fn 이 구간별 함수이면 피적분 경로가 cuts 를 지나는 r 마다 적분을 나눕니다.
    첫 조각은 r^{exponent} 를 가중치로 하는 Gauss–Jacobi, 나머지는 가중치를
    곱한 Gauss–Legendre 로 계산하므로 조각마다 fn 이 매끄럽고, I 는 z 에 대해
    매끄럽습니다.

    Args:
        fn: 벡터화된 피적분 함수
        z: 점들
        exponent: r 의 지수 (> −1)
        cuts: fn 의 구간 경계
        origin: 경로의 시작점

    Returns:
        I(z) 배열
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    cuts = np.asarray(cuts, dtype=float)
    jac_x, jac_w = roots_jacobi(RADIAL_NODES, 0.0, exponent)
    jac_r, jac_w = 0.5 * (1.0 + jac_x), jac_w * 2.0 ** (-exponent - 1.0)
    leg_x, leg_w = legendre.leggauss(RADIAL_NODES)
    leg_r, leg_w = 0.5 * (leg_x + 1.0), 0.5 * leg_w

    points: List[np.ndarray] = []
    weights: List[np.ndarray] = []
    owner: List[np.ndarray] = []
    for i, zi in enumerate(z):
        if zi == origin:
            points.append(np.array([origin]))
            weights.append(np.array([1.0 / (exponent + 1.0)]))
            owner.append(np.array([i]))
            continue
        pieces = _radial_pieces(cuts, origin, zi)
        first = pieces[0][1]
        r_parts = [first * jac_r]
        w_parts = [first ** (exponent + 1.0) * jac_w]
        for a, b in pieces[1:]:
            r = a + (b - a) * leg_r
            r_parts.append(r)
            w_parts.append((b - a) * leg_w * r ** exponent)
        r_all = np.concatenate(r_parts)
        points.append(origin + r_all * (zi - origin))
        weights.append(np.concatenate(w_parts))
        owner.append(np.full(r_all.shape, i))

    values = np.asarray(fn(np.concatenate(points)), dtype=float)
    return np.bincount(np.concatenate(owner), weights=np.concatenate(weights) * values, minlength=z.size)
