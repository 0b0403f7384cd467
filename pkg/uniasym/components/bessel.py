"""
Bessel 함수 커널 모듈

실수 차수 ν > −1 에 대해 양의 실수축과 양의 허수축 위에서
J_ν, Y_ν, I_ν, K_ν 및 W_ν = Y_ν − iJ_ν 를 계산합니다.

작은 인자에서는 멱급수, 중간 인자에서는 연분수와 Wronskian으로 정규화한
역방향 점화식, 큰 인자에서는 가장 작은 항에서 자른 점근 급수를 사용합니다.
"""

from dataclasses import dataclass
from typing import List, NamedTuple, Tuple
import cmath
import math

from scipy.special import rgamma

from uniasym.utils.errors import BesselOverflowError, ConvergenceError, DomainError
from uniasym.utils.logging_config import get_logger

logger = get_logger(__name__)

BesselOrder = float

# 알고리즘 상수
EPS = 1e-16
FPMIN = 1e-30
XMIN = 2.0
MAXIT = 100000
SERIES_MAX = 2.0
LOG_MAX = math.log(1.7976931348623157e308)
TWO_OVER_PI = 2.0 / math.pi


class BesselPair(NamedTuple):
    """차수 ν, ν+1 의 J, Y 값"""
    j: float
    y: float
    j_next: float
    y_next: float


class ModifiedPair(NamedTuple):
    """차수 ν, ν+1 의 I, K 값 (scaled 이면 e^{−x}I, e^{x}K)"""
    i_val: float
    k_val: float
    i_next: float
    k_next: float


@dataclass(frozen=True)
class ImaginaryPair:
    """
    허수축 인자 iy 에서의 (J_ν, W_ν) 값

    실제 값은 ``j · exp(j_log_scale)``, ``w · exp(w_log_scale)`` 입니다.

    Attributes:
        j: J_ν(iy) 의 가수
        w: W_ν(iy) 의 가수
        j_log_scale: J 에 곱해지는 지수 (scaled 이면 y)
        w_log_scale: W 에 곱해지는 지수 (scaled 이면 −y)
    """
    j: complex
    w: complex
    j_log_scale: float = 0.0
    w_log_scale: float = 0.0


class SelfTestRow(NamedTuple):
    """자체 점검 표의 한 줄"""
    name: str
    value: float
    tolerance: float
    passed: bool


def _check_order(nu: float) -> None:
    if not nu > -1.0:
        raise DomainError(f"Bessel order must exceed -1, got {nu}")


def _hankel_threshold(nu: float) -> float:
    return max(25.0, nu * nu)


def _modified_threshold(nu: float) -> float:
    return max(30.0, nu * nu)


def _temme_gammas(xmu: float) -> Tuple[float, float, float, float]:
    """Temme 급수에 필요한 Γ 조합 (gam1, gam2, 1/Γ(1+μ), 1/Γ(1−μ))"""
    gampl = float(rgamma(1.0 + xmu))
    gammi = float(rgamma(1.0 - xmu))
    gam2 = 0.5 * (gammi + gampl)
    if abs(xmu) >= 1e-2:
        gam1 = (gammi - gampl) / (2.0 * xmu)
    else:
        mu2 = xmu * xmu
        gam1 = -(0.5772156649015329
                 + mu2 * (-0.0420026350340952
                          + mu2 * (-0.0421977345555443 + mu2 * 0.0072189432466630)))
    return gam1, gam2, gampl, gammi


# 멱급수
def _series(nu: float, x: float, sign: float) -> float:
    """(x/2)^ν Σ (sign·x²/4)^k / (k! Γ(ν+k+1))"""
    term = (0.5 * x) ** nu * float(rgamma(nu + 1.0))
    if term == 0.0:
        return 0.0
    total = term
    q = sign * 0.25 * x * x
    for k in range(1, 500):
        term *= q / (k * (nu + k))
        total += term
        if abs(term) < EPS * abs(total):
            return total
    raise ConvergenceError(f"Bessel power series did not converge (nu={nu}, x={x})")


# 큰 인자 점근 급수
def _asymptotic_terms(nu: float, x: float) -> List[float]:
    """a_k(ν)/x^k 항들을 가장 작은 항까지 돌려줍니다."""
    mu = 4.0 * nu * nu
    terms = [1.0]
    term = 1.0
    for k in range(1, 200):
        nxt = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(nxt) >= abs(term) or nxt == 0.0:
            if nxt == 0.0:
                terms.append(0.0)
            break
        terms.append(nxt)
        term = nxt
        if abs(term) < EPS * 1e-4:
            break
    return terms


def _hankel_jy(nu: float, x: float) -> Tuple[float, float]:
    terms = _asymptotic_terms(nu, x)
    p = sum(t * (-1) ** (k // 2) for k, t in enumerate(terms) if k % 2 == 0)
    q = sum(t * (-1) ** (k // 2) for k, t in enumerate(terms) if k % 2 == 1)
    chi = x - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(TWO_OVER_PI / x)
    c, s = math.cos(chi), math.sin(chi)
    return amp * (p * c - q * s), amp * (p * s + q * c)


def _asymptotic_ik_scaled(nu: float, x: float) -> Tuple[float, float]:
    terms = _asymptotic_terms(nu, x)
    i_sum = sum(t * (-1) ** k for k, t in enumerate(terms))
    k_sum = sum(terms)
    return i_sum / math.sqrt(2.0 * math.pi * x), math.sqrt(math.pi / (2.0 * x)) * k_sum


# 연분수 + 역방향 점화식
def _bessjy(xnu: float, x: float) -> Tuple[float, float, float, float]:
    """
    J_ν, Y_ν 와 그 도함수를 계산합니다 (ν ≥ 0, x > 0).

    Returns:
        (J_ν, Y_ν, J′_ν, Y′_ν)
    """
    nl = int(xnu + 0.5) if x < XMIN else max(0, int(xnu - x + 1.5))
    xmu = xnu - nl
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / math.pi

    isign = 1.0
    h = max(xnu * xi, FPMIN)
    b = xi2 * xnu
    d = 0.0
    c = h
    for _ in range(MAXIT):
        b += xi2
        d = b - d
        if abs(d) < FPMIN:
            d = FPMIN
        c = b - 1.0 / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = c * d
        h *= delta
        if d < 0.0:
            isign = -isign
        if abs(delta - 1.0) < EPS:
            break
    else:
        raise ConvergenceError(f"J/Y continued fraction failed (nu={xnu}, x={x})")

    rjl = isign * FPMIN
    rjpl = h * rjl
    rjl1, rjp1 = rjl, rjpl
    fact = xnu * xi
    for _ in range(nl, 0, -1):
        rjtemp = fact * rjl + rjpl
        fact -= xi
        rjpl = fact * rjtemp - rjl
        rjl = rjtemp
    if rjl == 0.0:
        rjl = EPS
    f = rjpl / rjl

    if x < XMIN:
        x2 = 0.5 * x
        pimu = math.pi * xmu
        fact = 1.0 if abs(pimu) < EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = 1.0 if abs(e) < EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _temme_gammas(xmu)
        ff = TWO_OVER_PI * fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        e = math.exp(e)
        p = e / (gampl * math.pi)
        q = 1.0 / (e * math.pi * gammi)
        pimu2 = 0.5 * pimu
        fact3 = 1.0 if abs(pimu2) < EPS else math.sin(pimu2) / pimu2
        r = math.pi * pimu2 * fact3 * fact3
        c = 1.0
        d = -x2 * x2
        total = ff + r * q
        total1 = p
        for i in range(1, MAXIT):
            ff = (i * ff + p + q) / (i * i - xmu2)
            c *= d / i
            p /= i - xmu
            q /= i + xmu
            delta = c * (ff + r * q)
            total += delta
            total1 += c * p - i * delta
            if abs(delta) < (1.0 + abs(total)) * EPS:
                break
        else:
            raise ConvergenceError(f"Y series failed (nu={xnu}, x={x})")
        rymu = -total
        ry1 = -total1 * xi2
        rymup = xmu * xi * rymu - ry1
        rjmu = w / (rymup - f * rymu)
    else:
        a = 0.25 - xmu2
        p = -0.5 * xi
        q = 1.0
        br = 2.0 * x
        bi = 2.0
        fact = a * xi / (p * p + q * q)
        cr = br + q * fact
        ci = bi + p * fact
        den = br * br + bi * bi
        dr = br / den
        di = -bi / den
        dlr = cr * dr - ci * di
        dli = cr * di + ci * dr
        p, q = p * dlr - q * dli, p * dli + q * dlr
        for i in range(2, MAXIT):
            a += 2 * (i - 1)
            bi += 2.0
            dr = a * dr + br
            di = a * di + bi
            if abs(dr) + abs(di) < FPMIN:
                dr = FPMIN
            fact = a / (cr * cr + ci * ci)
            cr = br + cr * fact
            ci = bi - ci * fact
            if abs(cr) + abs(ci) < FPMIN:
                cr = FPMIN
            den = dr * dr + di * di
            dr /= den
            di = -di / den
            dlr = cr * dr - ci * di
            dli = cr * di + ci * dr
            p, q = p * dlr - q * dli, p * dli + q * dlr
            if abs(dlr - 1.0) + abs(dli) < EPS:
                break
        else:
            raise ConvergenceError(f"Steed continued fraction failed (nu={xnu}, x={x})")
        gam = (p - f) / q
        rjmu = math.copysign(math.sqrt(w / ((p - f) * gam + q)), rjl)
        rymu = rjmu * gam
        rymup = rymu * (p + q / gam)
        ry1 = xmu * xi * rymu - rymup

    fact = rjmu / rjl
    rj = rjl1 * fact
    rjp = rjp1 * fact
    for i in range(1, nl + 1):
        rytemp = (xmu + i) * xi2 * ry1 - rymu
        rymu, ry1 = ry1, rytemp
    return rj, rymu, rjp, xnu * xi * rymu - ry1


def _bessik(xnu: float, x: float, scaled: bool) -> Tuple[float, float, float, float]:
    """
    I_ν, K_ν 와 그 도함수를 계산합니다 (ν ≥ 0, x > 0).

    Returns:
        (I_ν, K_ν, I′_ν, K′_ν), scaled 이면 I 쪽은 e^{−x}, K 쪽은 e^{x} 가 곱해짐
    """
    nl = int(xnu + 0.5)
    xmu = xnu - nl
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi

    h = max(xnu * xi, FPMIN)
    b = xi2 * xnu
    d = 0.0
    c = h
    for _ in range(MAXIT):
        b += xi2
        d = 1.0 / (b + d)
        c = b + 1.0 / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < EPS:
            break
    else:
        raise ConvergenceError(f"I/K continued fraction failed (nu={xnu}, x={x})")

    ril = FPMIN
    ripl = h * ril
    ril1, rip1 = ril, ripl
    fact = xnu * xi
    for _ in range(nl, 0, -1):
        ritemp = fact * ril + ripl
        fact -= xi
        ripl = fact * ritemp + ril
        ril = ritemp
    f = ripl / ril

    if x < XMIN:
        x2 = 0.5 * x
        pimu = math.pi * xmu
        fact = 1.0 if abs(pimu) < EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = 1.0 if abs(e) < EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _temme_gammas(xmu)
        ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        total = ff
        e = math.exp(e)
        p = 0.5 * e / gampl
        q = 0.5 / (e * gammi)
        c = 1.0
        d = x2 * x2
        total1 = p
        for i in range(1, MAXIT):
            ff = (i * ff + p + q) / (i * i - xmu2)
            c *= d / i
            p /= i - xmu
            q /= i + xmu
            delta = c * ff
            total += delta
            total1 += c * (p - i * ff)
            if abs(delta) < abs(total) * EPS:
                break
        else:
            raise ConvergenceError(f"K series failed (nu={xnu}, x={x})")
        rkmu = total
        rk1 = total1 * xi2
        if scaled:
            rkmu *= math.exp(x)
            rk1 *= math.exp(x)
    else:
        b = 2.0 * (1.0 + x)
        d = 1.0 / b
        h = delh = d
        q1, q2 = 0.0, 1.0
        a1 = 0.25 - xmu2
        q = c = a1
        a = -a1
        s = 1.0 + q * delh
        for i in range(2, MAXIT):
            a -= 2 * (i - 1)
            c = -a * c / i
            qnew = (q1 - b * q2) / a
            q1, q2 = q2, qnew
            q += c * qnew
            b += 2.0
            d = 1.0 / (b + a * d)
            delh = (b * d - 1.0) * delh
            h += delh
            dels = q * delh
            s += dels
            if abs(dels / s) < EPS:
                break
        else:
            raise ConvergenceError(f"K continued fraction failed (nu={xnu}, x={x})")
        h = a1 * h
        rkmu = math.sqrt(math.pi / (2.0 * x)) / s
        if not scaled:
            rkmu *= math.exp(-x)
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi

    rkmup = xmu * xi * rkmu - rk1
    rimu = xi / (f * rkmu - rkmup)
    ri = rimu * ril1 / ril
    rip = rimu * rip1 / ril
    for i in range(1, nl + 1):
        rktemp = (xmu + i) * xi2 * rk1 + rkmu
        rkmu, rk1 = rk1, rktemp
    return ri, rkmu, rip, xnu * xi * rkmu - rk1


# 양의 차수 쌍
def _jy_nonnegative(nu: float, x: float) -> BesselPair:
    if x > _hankel_threshold(nu):
        j, y = _hankel_jy(nu, x)
        j1, y1 = _hankel_jy(nu + 1.0, x)
        return BesselPair(j, y, j1, y1)
    rj, ry, rjp, ryp = _bessjy(nu, x)
    if x <= SERIES_MAX:
        j, j1 = _series(nu, x, -1.0), _series(nu + 1.0, x, -1.0)
    else:
        j, j1 = rj, nu / x * rj - rjp
    return BesselPair(j, ry, j1, nu / x * ry - ryp)


def _ik_nonnegative(nu: float, x: float, scaled: bool) -> ModifiedPair:
    if x > _modified_threshold(nu):
        i_s, k_s = _asymptotic_ik_scaled(nu, x)
        i1_s, k1_s = _asymptotic_ik_scaled(nu + 1.0, x)
        if scaled:
            return ModifiedPair(i_s, k_s, i1_s, k1_s)
        if x > LOG_MAX:
            raise BesselOverflowError(f"e^x overflows at x={x}; use the scaled variants")
        ex = math.exp(x)
        return ModifiedPair(i_s * ex, k_s / ex, i1_s * ex, k1_s / ex)
    ri, rk, rip, rkp = _bessik(nu, x, scaled)
    if x <= SERIES_MAX:
        scale = math.exp(-x) if scaled else 1.0
        i_val = _series(nu, x, 1.0) * scale
        i_next = _series(nu + 1.0, x, 1.0) * scale
    else:
        i_val, i_next = ri, rip - nu / x * ri
    return ModifiedPair(i_val, rk, i_next, nu / x * rk - rkp)


# 공개 API
def bessel_jy(nu: BesselOrder, x: float) -> BesselPair:
    """
    J_ν, Y_ν, J_{ν+1}, Y_{ν+1} 를 한 번에 계산합니다.

    Args:
        nu: 차수 (ν > −1)
        x: 양의 인자

    Returns:
        BesselPair

    Raises:
        DomainError: x ≤ 0 또는 ν ≤ −1
    """
    _check_order(nu)
    if not x > 0.0:
        raise DomainError(f"Y_nu requires x > 0, got {x}")
    if nu >= 0.0:
        return _jy_nonnegative(nu, x)
    mu = -nu
    base = _jy_nonnegative(mu, x)
    c, s = math.cos(mu * math.pi), math.sin(mu * math.pi)
    upper = _jy_nonnegative(1.0 - mu, x)
    return BesselPair(c * base.j - s * base.y, s * base.j + c * base.y, upper.j, upper.y)


def bessel_ik(nu: BesselOrder, x: float, scaled: bool = False) -> ModifiedPair:
    """
    I_ν, K_ν, I_{ν+1}, K_{ν+1} 를 한 번에 계산합니다.

    Args:
        nu: 차수 (ν > −1)
        x: 양의 인자
        scaled: True 이면 e^{−x}I 와 e^{x}K 를 반환

    Returns:
        ModifiedPair

    Raises:
        DomainError: x ≤ 0 또는 ν ≤ −1
        BesselOverflowError: scaled=False 이고 e^x 가 범위를 넘는 경우
    """
    _check_order(nu)
    if not x > 0.0:
        raise DomainError(f"K_nu requires x > 0, got {x}")
    if not scaled and x > LOG_MAX:
        raise BesselOverflowError(f"e^x overflows at x={x}; use the scaled variants")
    if nu >= 0.0:
        return _ik_nonnegative(nu, x, scaled)
    mu = -nu
    base = _ik_nonnegative(mu, x, scaled)
    upper = _ik_nonnegative(1.0 - mu, x, scaled)
    reflect = TWO_OVER_PI * math.sin(mu * math.pi) * base.k_val
    if scaled:
        reflect *= math.exp(-2.0 * x)
    return ModifiedPair(base.i_val + reflect, base.k_val, upper.i_val, upper.k_val)


def bessel_j(nu: BesselOrder, x: float) -> float:
    """
    제1종 Bessel 함수 J_ν(x).

    Args:
        nu: 차수 (ν > −1)
        x: 인자 (x ≥ 0)

    Returns:
        J_ν(x)

    Raises:
        DomainError: x < 0 또는 ν ≤ −1
    """
    _check_order(nu)
    if x < 0.0:
        raise DomainError(f"J_nu requires x >= 0, got {x}")
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        return 0.0 if nu > 0.0 else math.inf
    return bessel_jy(nu, x).j


def bessel_y(nu: BesselOrder, x: float) -> float:
    """제2종 Bessel 함수 Y_ν(x), x > 0."""
    return bessel_jy(nu, x).y


def bessel_i(nu: BesselOrder, x: float) -> float:
    """
    제1종 변형 Bessel 함수 I_ν(x).

    Raises:
        DomainError: x < 0 또는 ν ≤ −1
        BesselOverflowError: e^x 가 범위를 넘는 경우
    """
    _check_order(nu)
    if x < 0.0:
        raise DomainError(f"I_nu requires x >= 0, got {x}")
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        return 0.0 if nu > 0.0 else math.inf
    return bessel_ik(nu, x).i_val


def bessel_k(nu: BesselOrder, x: float) -> float:
    """제2종 변형 Bessel 함수 K_ν(x), x > 0."""
    return bessel_ik(nu, x).k_val


def bessel_i_scaled(nu: BesselOrder, x: float) -> float:
    """e^{−x}I_ν(x)"""
    _check_order(nu)
    if x < 0.0:
        raise DomainError(f"I_nu requires x >= 0, got {x}")
    if x == 0.0:
        return bessel_i(nu, 0.0)
    return bessel_ik(nu, x, scaled=True).i_val


def bessel_k_scaled(nu: BesselOrder, x: float) -> float:
    """e^{x}K_ν(x)"""
    return bessel_ik(nu, x, scaled=True).k_val


def eval_on_imaginary(nu: BesselOrder, y: float, scaled: bool = True) -> ImaginaryPair:
    """
    양의 허수축 위의 인자 iy 에서 J_ν 와 W_ν 를 계산합니다.

    J_ν(iy) = e^{iνπ/2} I_ν(y),  W_ν(iy) = −(2/π) e^{−iνπ/2} K_ν(y).
    scaled 이면 e^{±y} 인자를 가수에서 빼고 log_scale 로 따로 돌려줍니다.

    Args:
        nu: 차수 (ν > −1)
        y: 허수부 (y ≥ 0)
        scaled: 지수 인자를 분리할지 여부

    Returns:
        ImaginaryPair

    Raises:
        DomainError: y < 0 (지원하지 않는 반직선)
    """
    _check_order(nu)
    if y < 0.0:
        raise DomainError(f"argument i*y must lie on the positive imaginary axis, got y={y}")
    phase = cmath.exp(0.5j * nu * math.pi)
    if y == 0.0:
        return ImaginaryPair(phase * bessel_i(nu, 0.0), complex(-math.inf, 0.0))
    pair = bessel_ik(nu, y, scaled=scaled)
    j = phase * pair.i_val
    w = -TWO_OVER_PI * pair.k_val / phase
    if scaled:
        return ImaginaryPair(j, w, y, -y)
    return ImaginaryPair(j, w)


def bessel_selftest() -> List[SelfTestRow]:
    """
    커널 불변식 표를 계산합니다.

    Wronskian, 세 항 점화식, 반정수 닫힌 형식, scaled/unscaled 일치를 점검합니다.

    Returns:
        SelfTestRow 리스트
    """
    rows: List[SelfTestRow] = []

    def add(name: str, error: float, tolerance: float) -> None:
        rows.append(SelfTestRow(name, error, tolerance, bool(error <= tolerance)))

    for nu in (0.0, 1.25, 2.5, 3.75, 5.0):
        for x in (0.1, 1.0, 5.0, 20.0, 40.0):
            jy = bessel_jy(nu, x)
            target = TWO_OVER_PI / x
            add(f"JY wronskian nu={nu} x={x}",
                abs(jy.j_next * jy.y - jy.j * jy.y_next - target) / target, 1e-10)
            ik = bessel_ik(nu, x)
            add(f"IK wronskian nu={nu} x={x}",
                abs(ik.i_val * ik.k_next + ik.i_next * ik.k_val - 1.0 / x) * x, 1e-10)

    for nu in (0.3, 1.0, 2.7):
        for x in (0.5, 5.0, 30.0):
            lower = bessel_jy(nu - 1.0, x) if nu - 1.0 > -1.0 else None
            mid = bessel_jy(nu, x)
            if lower is not None:
                scale = max(abs(lower.j), abs(mid.j_next), abs(mid.j))
                add(f"J recurrence nu={nu} x={x}",
                    abs(lower.j + mid.j_next - 2.0 * nu / x * mid.j) / scale, 1e-10)

    x = math.pi
    add("J_1/2(pi)", abs(bessel_j(0.5, x)), 1e-12)
    add("Y_1/2(pi/2)", abs(bessel_y(0.5, 0.5 * math.pi)), 1e-12)
    ref = math.sqrt(2.0 / math.pi) * math.sinh(1.0)
    add("I_1/2(1)", abs(bessel_i(0.5, 1.0) - ref) / ref, 1e-12)
    add("scaled I at x=5", abs(bessel_i_scaled(0.0, 5.0) * math.exp(5.0) - bessel_i(0.0, 5.0))
        / bessel_i(0.0, 5.0), 1e-12)
    big = bessel_ik(0.0, 100.0, scaled=True)
    add("scaled IK wronskian x=100",
        abs(big.i_val * big.k_next + big.i_next * big.k_val - 0.01) * 100.0, 1e-10)
    logger.debug("bessel self-test: %d rows, %d failed",
                 len(rows), sum(not row.passed for row in rows))
    return rows


__all__ = [
    'BesselOrder',
    'BesselPair',
    'ModifiedPair',
    'ImaginaryPair',
    'SelfTestRow',
    'bessel_jy',
    'bessel_ik',
    'bessel_j',
    'bessel_y',
    'bessel_i',
    'bessel_k',
    'bessel_i_scaled',
    'bessel_k_scaled',
    'eval_on_imaginary',
    'bessel_selftest',
]
