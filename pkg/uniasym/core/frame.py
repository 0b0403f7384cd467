"""
전이 좌표 모듈

이 모듈은 정규화된 점화식 시스템으로부터 TransitionFrame을 만들고,
ζ와 그 도함수, u₀, u₁, H₀, Λ, 정규화 인자를 계산합니다.

ζ는 척도 변수 z = t/t₂ 에서

    Φ(z) = 2·arcsin(√z)/√z − G(z),   G(z) = ₂F₁(½, b; b+1; z)/b,   b = ½ − 1/θ,
    ζ = ±√z·Φ (z ≥ 0),   ζ = ±i·√(−z)·Φ (z < 0)

로 계산합니다. 부호는 θ < 2 에서 +, θ > 2 에서 − 입니다.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union
import math

import numpy as np
from scipy.integrate import quad

from uniasym.components.chebfun import ChebFun
from uniasym.components.ghkl import gamma_lm
from uniasym.core.system import (
    CaseTransform,
    RecurrenceSystem,
    canonicalize,
    order_nu,
    shift_and_recast,
    transition_points,
)
from uniasym.utils.errors import DomainError, QuadratureError, UnsupportedThetaError
from uniasym.utils.helpers import Defaults, continued_arccos, falling, gen_binom, rising
from uniasym.utils.logging_config import get_logger

logger = get_logger(__name__)

ArrayLike = Union[float, Sequence[float], np.ndarray]

SERIES_RADIUS = 0.5
SERIES_TERMS = 80
TABLE_TOL = 1e-13
TABLE_BREAKS = (-1.0, 0.0, 0.5, 0.9, 0.99)


def _arcsin_coeffs(count: int) -> np.ndarray:
    """(½)_k/k! 계수"""
    c = np.empty(count)
    c[0] = 1.0
    for k in range(1, count):
        c[k] = c[k - 1] * (k - 0.5) / k
    return c


_C = _arcsin_coeffs(SERIES_TERMS)


@dataclass(frozen=True)
class FrameSample:
    """
    z 격자 위의 ζ 관련 값 묶음

    계수 엔진이 한 번에 쓰는 배열들입니다.

    Attributes:
        z: 척도 변수
        phi: Φ(z)
        g: G(z)
        eta: ζ² = zΦ²
        cosine: cos(ζu₀) = 1 − 2z
        sigma0: sin(ζu₀)/ζ = 2√(1−z)/Φ
        nu_hat: 정규화 인자 (|Φ|/(2√(1−z)))^{½}
        u: u₀, u₁, … (t₊ 전개 계수)
    """

    z: np.ndarray
    phi: np.ndarray
    g: np.ndarray
    eta: np.ndarray
    cosine: np.ndarray
    sigma0: np.ndarray
    nu_hat: np.ndarray
    u: List[np.ndarray]


@dataclass(frozen=True)
class TransitionFrame:
    """
    원점 전이점 주변의 좌표계

    정규 경우(α′₀ < 0, β′₀ = 2)로 옮긴 시스템과 그 재전개 계수,
    전이점, Bessel 차수, 평가 창을 담습니다. 생성 후 불변입니다.

    Attributes:
        system: 정규화된 시스템
        transform: 사용자 경우로 되돌리는 변환
        tau0: N = n + τ₀ 의 이동량
        alpha_prime: 재전개된 α′ 급수
        beta_prime: 재전개된 β′ 급수
        t1: 첫 전이점 (= 0)
        t2: 둘째 전이점 (= −4/α′₀)
        nu: Bessel 차수
        sigma: t₂ 로부터의 제외 폭
        window_lo: 창의 t 하한
    """

    system: RecurrenceSystem
    transform: CaseTransform
    tau0: float
    alpha_prime: tuple
    beta_prime: tuple
    t1: float
    t2: float
    nu: float
    sigma: float
    window_lo: float
    tables: Dict[str, ChebFun] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        system: RecurrenceSystem,
        sigma: Optional[float] = None,
        window_lo: float = Defaults.WINDOW_LO,
        nu_branch: str = "principal",
    ) -> "TransitionFrame":
        """
        시스템으로부터 좌표계를 만듭니다.

        Args:
            system: 사용자 시스템
            sigma: 제외 폭 (기본값 1e-3·t₂)
            window_lo: 창 하한 (t₂ 단위, 음수)
            nu_branch: 차수 가지 ("principal" 또는 "negative")

        Returns:
            새 좌표계

        Raises:
            ValidationError: 시스템이 불변식을 위반한 경우
            UnsupportedThetaError: θ가 공명값인 경우
        """
        canonical, transform = canonicalize(system)
        tau0, alpha_prime, beta_prime = shift_and_recast(canonical)
        t1, t2 = transition_points(alpha_prime[0], beta_prime[0])
        nu = order_nu(canonical.theta, beta_prime[2], nu_branch)

        b = 0.5 - 1.0 / canonical.theta
        if b < 0.0 and float(b).is_integer():
            raise UnsupportedThetaError(
                f"theta = {canonical.theta:g}: b = 1/2 - 1/theta is a negative integer (resonant case)"
            )
        if not 0.0 < canonical.theta < 2.0:
            logger.warning("theta = %g lies outside (0, 2): frame is experimental", canonical.theta)
        if window_lo >= 0.0:
            raise DomainError("window lower bound must be negative (in units of t2)")

        sigma = Defaults.SIGMA_FRACTION * t2 if sigma is None else float(sigma)
        if not 0.0 < sigma < t2:
            raise DomainError(f"sigma = {sigma:g} must lie in (0, t2)")

        frame = cls(
            system=canonical,
            transform=transform,
            tau0=tau0,
            alpha_prime=alpha_prime,
            beta_prime=beta_prime,
            t1=t1,
            t2=t2,
            nu=nu,
            sigma=sigma,
            window_lo=window_lo * t2,
        )
        logger.info(
            "frame %s: tau0=%.6g nu=%.6g t2=%.6g sigma=%.3g",
            system.name, tau0, nu, t2, sigma,
        )
        return frame

    # 기본 상수
    @property
    def theta(self) -> float:
        return self.system.theta

    @property
    def b(self) -> float:
        return 0.5 - 1.0 / self.theta

    @property
    def sign(self) -> float:
        """ζ 적분 표현의 부호"""
        return 1.0 if self.theta < 2.0 else -1.0

    @property
    def z_lo(self) -> float:
        return self.window_lo / self.t2

    @property
    def z_hi(self) -> float:
        return (self.t2 - self.sigma) / self.t2

    @property
    def phi0(self) -> float:
        """Φ(0) = 2 − 1/b"""
        return 2.0 - 1.0 / self.b

    def check_t(self, t: float) -> float:
        """
        t가 창 안에 있는지 확인하고 z = t/t₂ 를 돌려줍니다.

        Raises:
            DomainError: t > t₂ − σ 또는 창 하한 미만
        """
        slack = 1e-12 * self.t2
        if t > self.t2 - self.sigma + slack:
            raise DomainError(f"t = {t:.17g} exceeds t2 - sigma = {self.t2 - self.sigma:.17g}")
        if t < self.window_lo - slack:
            raise DomainError(f"t = {t:.17g} is below the window lower bound {self.window_lo:.17g}")
        return t / self.t2

    def regime(self, t: float) -> str:
        """평가 영역 태그: negative, origin-window, oscillatory"""
        if abs(t) < Defaults.ORIGIN_WINDOW * self.t2:
            return "origin-window"
        return "negative" if t < 0.0 else "oscillatory"

    # G와 Φ (정확한 계산)
    def _g_scalar(self, z: float) -> float:
        b = self.b
        if abs(z) <= SERIES_RADIUS:
            k = np.arange(SERIES_TERMS)
            return float(np.sum(_C * z ** k / (k + b)))
        if z >= 1.0:
            raise DomainError(f"z = {z:.17g} must be below the turning point z = 1")
        if z > 0.0:
            base = SERIES_RADIUS ** b * self._g_scalar(SERIES_RADIUS)
            value, err = quad(
                lambda s: 2.0 * (1.0 - s * s) ** (b - 1.0),
                math.sqrt(1.0 - z), math.sqrt(SERIES_RADIUS),
                epsabs=1e-14, epsrel=1e-13, limit=200,
            )
            scale = z ** (-b)
        else:
            v = -z
            base = SERIES_RADIUS ** b * self._g_scalar(-SERIES_RADIUS)
            value, err = quad(
                lambda w: w ** (b - 1.0) / math.sqrt(1.0 + w),
                SERIES_RADIUS, v,
                epsabs=1e-14, epsrel=1e-13, limit=200,
            )
            scale = v ** (-b)
        if err > Defaults.QUAD_TOL:
            raise QuadratureError(f"G({z:.6g}): quadrature error estimate {err:.3g} exceeds 1e-12")
        return scale * (base + value)

    def g_direct(self, z: ArrayLike) -> np.ndarray:
        """G(z) 를 급수 또는 적분으로 직접 계산합니다."""
        z = np.atleast_1d(np.asarray(z, dtype=float))
        return np.array([self._g_scalar(float(v)) for v in z])

    def phi_direct(self, z: ArrayLike) -> np.ndarray:
        """
        Φ(z) 를 직접 계산합니다.

        |z| ≤ ½ 에서는 Σ c_k z^k [2/(2k+1) − 1/(k+b)] 로 상쇄 없이 계산합니다.
        """
        z = np.atleast_1d(np.asarray(z, dtype=float))
        out = np.empty_like(z)
        k = np.arange(SERIES_TERMS)
        weights = _C * (2.0 / (2.0 * k + 1.0) - 1.0 / (k + self.b))
        for i, v in enumerate(z):
            if abs(v) <= SERIES_RADIUS:
                out[i] = float(np.sum(weights * v ** k))
            elif v > 0.0:
                r = math.sqrt(v)
                out[i] = 2.0 * math.asin(r) / r - self._g_scalar(v)
            else:
                r = math.sqrt(-v)
                out[i] = 2.0 * math.asinh(r) / r - self._g_scalar(v)
        return out

    # 표
    def window_breaks(self) -> List[float]:
        """z 창의 초기 구간 경계 (0 포함)"""
        inner = [v for v in TABLE_BREAKS if self.z_lo < v < self.z_hi]
        return [self.z_lo] + inner + [self.z_hi]

    def _table(self, name: str) -> ChebFun:
        if name not in self.tables:
            fn = self.phi_direct if name == "phi" else self.g_direct
            self.tables[name] = ChebFun.from_function(fn, self.window_breaks(), tol=TABLE_TOL)
            logger.debug("built %s table: %r", name, self.tables[name])
        return self.tables[name]

    @property
    def phi_table(self) -> ChebFun:
        return self._table("phi")

    @property
    def g_table(self) -> ChebFun:
        return self._table("g")

    # t 변수 연산
    def zeta(self, t: float) -> complex:
        """
        ζ(t) 를 계산합니다.

        t ≥ 0 에서 실수, t < 0 에서 iζ < 0 인 순허수입니다.

        Raises:
            DomainError: 창 밖의 t
        """
        z = self.check_t(t)
        phi = float(self.phi_direct(z)[0])
        if z >= 0.0:
            return complex(self.sign * math.sqrt(z) * phi, 0.0)
        return complex(0.0, self.sign * math.sqrt(-z) * phi)

    def eta(self, t: float) -> float:
        """η = ζ² = zΦ² (t < 0 에서 음수)"""
        z = self.check_t(t)
        return z * float(self.phi_direct(z)[0]) ** 2

    def zeta_prime(self, t: float) -> complex:
        """
        dζ/dt = ∓G/(θ√z)/t₂ 를 계산합니다.

        ζ ~ c√t 이므로 t = 0 에서는 무한대입니다.
        """
        z = self.check_t(t)
        if z == 0.0:
            return complex(math.inf, 0.0)
        g = float(self.g_direct(z)[0])
        if z > 0.0:
            return complex(-self.sign * g / (self.theta * math.sqrt(z)) / self.t2, 0.0)
        return complex(0.0, self.sign * g / (self.theta * math.sqrt(-z)) / self.t2)

    def zeta_second(self, t: float) -> complex:
        """d²ζ/dt² = ∓z^{−3/2}[(1−z)^{−½} − (1 − 1/θ)G]/(θt₂²)"""
        z = self.check_t(t)
        if z == 0.0:
            return complex(-math.inf, 0.0)
        g = float(self.g_direct(z)[0])
        bracket = (1.0 - z) ** -0.5 - (1.0 - 1.0 / self.theta) * g
        scale = -self.sign / (self.theta * self.t2 ** 2)
        if z > 0.0:
            return complex(scale * z ** -1.5 * bracket, 0.0)
        return complex(0.0, scale * (-z) ** -1.5 * bracket)

    def u_coeffs(self, t: float) -> tuple:
        """
        (u₀, u₁) 를 계산합니다.

        u₀ = 1 + G/Φ,  u₁ = −θ/(2Φ√(1−z)),  u₀(0) = 1 − θ/2.
        """
        z = self.check_t(t)
        phi = float(self.phi_direct(z)[0])
        g = float(self.g_direct(z)[0])
        return 1.0 + g / phi, -self.theta / (2.0 * phi * math.sqrt(1.0 - z))

    def h0(self, t: float) -> complex:
        """
        H₀ = −sin(ζu₀) 를 계산합니다.

        (0, t₂) 에서 음의 실수, t < 0 에서 순허수입니다.
        """
        z = self.check_t(t)
        if z >= 0.0:
            return complex(-self.sign * 2.0 * math.sqrt(z * (1.0 - z)), 0.0)
        return complex(0.0, -self.sign * 2.0 * math.sqrt(-z * (1.0 - z)))

    def h0_reduced(self, t: float) -> float:
        """H₀/ζ = −2√(1−z)/Φ (모든 t 에서 실수)"""
        z = self.check_t(t)
        return -2.0 * math.sqrt(1.0 - z) / float(self.phi_direct(z)[0])

    def lambda_weight(self, t: float) -> float:
        """
        Λ = |t|^{1/(2θ)}(−H₀/ζ)^{½} 를 계산합니다.

        t < 0 에서는 t^{1/(2θ)} 의 위상을 버립니다.
        """
        z = self.check_t(t)
        phi = float(self.phi_direct(z)[0])
        return abs(t) ** (0.5 / self.theta) * math.sqrt(2.0 * math.sqrt(1.0 - z) / abs(phi))

    def normalizer(self, t: float) -> float:
        """(4ζ²/(4 − (α′₀t+β′₀)²))^{¼} = (|Φ|/(2√(1−z)))^{½}"""
        z = self.check_t(t)
        phi = float(self.phi_direct(z)[0])
        return math.sqrt(abs(phi) / (2.0 * math.sqrt(1.0 - z)))

    def zeta_residual(self, t: float) -> float:
        """ζ − θtζ′ − (±)arccos((α′₀t+β′₀)/2) 의 크기 (t ≠ 0)"""
        z = self.check_t(t)
        if z == 0.0:
            return abs(self.zeta(t))
        c = (self.alpha_prime[0] * t + self.beta_prime[0]) / 2.0
        lhs = self.zeta(t) - self.theta * t * self.zeta_prime(t)
        return abs(lhs - self.sign * continued_arccos(c))

    def rho_coeffs(self, t: float, order: int) -> List[float]:
        """t^l ζ^{(l)}/ζ, l = 0…order"""
        z = self.check_t(t)
        return [float(r[0]) for r in self._rho(np.array([z]), order)]

    def u_series(self, t: float, order: int) -> List[float]:
        """t₊ 전개의 u₀…u_order"""
        z = self.check_t(t)
        return [float(u[0]) for u in self.sample(np.array([z]), order).u]

    # z 격자 연산 (표 사용)
    def _rho(self, z: np.ndarray, order: int, phi: Optional[np.ndarray] = None,
             g: Optional[np.ndarray] = None) -> List[np.ndarray]:
        theta = self.theta
        if phi is None:
            phi = self.phi_table(z)
        if g is None:
            g = self.g_table(z)
        rho = [np.ones_like(z), -g / (theta * phi)]
        one_minus = 1.0 - z
        for l in range(1, order):
            tau = np.zeros_like(z)
            for i in range(l):
                j = l - 1 - i
                tau = tau + (gen_binom(l - 1, i) * falling(-0.5, i) * rising(0.5, j)
                             * z ** j * one_minus ** (-0.5 - j))
            tau = tau / phi
            rho.append(((1.0 - theta * l) * rho[l] - tau) / theta)
        return rho[: order + 1]

    def sample(self, z: ArrayLike, order: int = 1) -> FrameSample:
        """
        z 배열에서 계수 엔진이 쓰는 값들을 표로부터 계산합니다.

        Args:
            z: 척도 변수 배열
            order: 필요한 u_s 의 최고 차수

        Returns:
            FrameSample
        """
        z = np.atleast_1d(np.asarray(z, dtype=float))
        phi = self.phi_table(z)
        g = self.g_table(z)
        rho = self._rho(z, order + 1, phi, g)
        r = [np.ones_like(z)]
        for m in range(1, order + 2):
            total = np.zeros_like(z)
            for l in range(1, m + 1):
                total = total + rho[l] * gamma_lm(self.theta, l, m) / math.factorial(l)
            r.append(total)
        u = [r[s + 1] + r[s] for s in range(order + 1)]
        root = np.sqrt(1.0 - z)
        return FrameSample(
            z=z,
            phi=phi,
            g=g,
            eta=z * phi ** 2,
            cosine=1.0 - 2.0 * z,
            sigma0=2.0 * root / phi,
            nu_hat=np.sqrt(np.abs(phi) / (2.0 * root)),
            u=u,
        )

    # 직렬화
    def to_dict(self) -> dict:
        """캐시 문서용 딕셔너리 (실수는 17자리 문자열)"""
        fmt = lambda v: f"{v:.17g}"
        return {
            "name": self.system.name,
            "theta": fmt(self.theta),
            "alpha": [fmt(v) for v in self.system.alpha_series],
            "beta": [fmt(v) for v in self.system.beta_series],
            "parity_flip": self.transform.parity_flip,
            "axis_flip": self.transform.axis_flip,
            "tau0": fmt(self.tau0),
            "alpha_prime": [fmt(v) for v in self.alpha_prime],
            "beta_prime": [fmt(v) for v in self.beta_prime],
            "t1": fmt(self.t1),
            "t2": fmt(self.t2),
            "nu": fmt(self.nu),
            "sigma": fmt(self.sigma),
            "window_lo": fmt(self.window_lo),
            "tables": {"phi": self.phi_table.to_dict(), "g": self.g_table.to_dict()},
        }

    @classmethod
    def from_dict(cls, data: dict, system: Optional[RecurrenceSystem] = None) -> "TransitionFrame":
        """
        to_dict의 역변환

        Args:
            data: 문서 딕셔너리
            system: 정확한 계수 공급원을 붙일 정규 시스템 (선택)
        """
        if system is None:
            system = RecurrenceSystem(
                theta=float(data["theta"]),
                alpha_series=tuple(float(v) for v in data["alpha"]),
                beta_series=tuple(float(v) for v in data["beta"]),
                name=data["name"],
            )
        return cls(
            system=system,
            transform=CaseTransform(bool(data["parity_flip"]), bool(data["axis_flip"])),
            tau0=float(data["tau0"]),
            alpha_prime=tuple(float(v) for v in data["alpha_prime"]),
            beta_prime=tuple(float(v) for v in data["beta_prime"]),
            t1=float(data["t1"]),
            t2=float(data["t2"]),
            nu=float(data["nu"]),
            sigma=float(data["sigma"]),
            window_lo=float(data["window_lo"]),
            tables={name: ChebFun.from_dict(table) for name, table in data["tables"].items()},
        )
