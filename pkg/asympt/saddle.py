import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

logger = logging.getLogger(__name__)

Alpha = Union[Fraction, float]


class FormulaError(RuntimeError):
    """鞍点公式在该点不适用（Q ≤ 0 或根号下为负）"""


def tilde_e(alpha: Alpha) -> float:
    """ẽ_α = (1/α)^α (1/(1−α))^{1−α}"""
    a = float(alpha)
    if not (0 < a < 1):
        raise ValueError(f"要求 0 < α < 1，实际 α={alpha}")
    return math.exp(-a * math.log(a) - (1 - a) * math.log1p(-a))


@dataclass(frozen=True)
class Direction:
    r: int
    s: int

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ValueError(f"方向 (r, s) 必须是正整数，实际 ({self.r}, {self.s})")

    def scaled(self, k: int) -> "Direction":
        return Direction(k * self.r, k * self.s)


@dataclass(frozen=True)
class CriticalPoint:
    """D = 1 − x − y 上满足 s·x·D_x = r·y·D_y 的点"""

    x: float
    y: float

    def residuals(self, direction: Direction):
        d = 1 - self.x - self.y
        # D_x = D_y = −1
        balance = direction.s * self.x * -1 - direction.r * self.y * -1
        return d, balance


@dataclass(frozen=True)
class AsymptoticEstimate:
    direction: Direction
    point: CriticalPoint
    q: float
    log_f: float
    exact: int
    rel_error: float

    @property
    def f_rs(self) -> float:
        return math.exp(self.log_f) if self.log_f < 709 else math.inf

    @property
    def nth_root(self) -> float:
        """f_{rs}^{1/(r+s)}"""
        return math.exp(self.log_f / (self.direction.r + self.direction.s))


def critical_point(direction: Direction) -> CriticalPoint:
    total = direction.r + direction.s
    return CriticalPoint(direction.r / total, direction.s / total)


def binomial_exact(r: int, s: int) -> int:
    """C(r+s, r)，即 1/(1−x−y) 的 x^r y^s 系数"""
    if r < 0 or s < 0:
        raise ValueError(f"要求 r, s ≥ 0，实际 ({r}, {s})")
    return math.comb(r + s, r)


def log_int(value: int) -> float:
    """大整数的自然对数，避免先转 float 溢出"""
    bits = value.bit_length()
    if bits <= 1000:
        return math.log(value)
    shift = bits - 53
    return math.log(value >> shift) + shift * math.log(2)


def pemantle_estimate(direction: Direction) -> AsymptoticEstimate:
    """G = 1/(1−x−y) 的鞍点渐近

    二阶偏导全为零，Q = −xD_x(yD_y)² − yD_y(xD_x)² = xy(x+y)；
    f_rs = x^{−r} y^{−s} √(−yD_y/(sQ)) / √(2π)，在对数空间里计算。
    """
    point = critical_point(direction)
    x, y = point.x, point.y
    dx = dy = -1.0
    q = -x * dx * (y * dy) ** 2 - y * dy * (x * dx) ** 2
    if q <= 0:
        raise FormulaError(f"Q = {q} ≤ 0")
    arg = -y * dy / (direction.s * q)
    if arg <= 0:
        raise FormulaError(f"根号下的值 {arg} ≤ 0")

    log_f = -direction.r * math.log(x) - direction.s * math.log(y) + 0.5 * math.log(arg) - 0.5 * math.log(2 * math.pi)
    exact = binomial_exact(direction.r, direction.s)
    rel_error = abs(math.expm1(log_f - log_int(exact)))
    logger.debug("鞍点估计 | r: %d | s: %d | 相对误差: %.3e", direction.r, direction.s, rel_error)
    return AsymptoticEstimate(direction, point, q, log_f, exact, rel_error)


def nth_root_gap(alpha: Fraction, n: int) -> float:
    """|f_{⌊αn⌋, n−⌊αn⌋}^{1/n} − ẽ_α|"""
    alpha = Fraction(alpha)
    r = math.floor(alpha * n)
    return abs(pemantle_estimate(Direction(r, n - r)).nth_root - tilde_e(alpha))
