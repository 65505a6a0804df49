"""无理 α：用连分数渐近分数夹住 e_{α,r}"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from sympy import Expr, Rational, sympify
from sympy.ntheory.continued_fraction import (
    continued_fraction_convergents,
    continued_fraction_iterator,
)

from words import BalanceSpec, continuity_rate, count_balanced_dp

from .spectrum import growth_exponent

logger = logging.getLogger(__name__)

# 分母再大时 Perron 根会超出浮点范围
MAX_DENOMINATOR = 500


def parse_real(text: str) -> Expr:
    """把 "1/sqrt(2)"、"pi/4" 之类的表达式解析为 (0, 1) 内的精确实数"""
    value = sympify(text, rational=True)
    if not value.is_real or not (0 < value < 1):
        raise ValueError(f"要求 0 < α < 1 的实数，实际 {text!r}")
    if value.is_rational:
        raise ValueError(f"{text!r} 是有理数，请直接用 p/q 形式")
    return value


def convergents(alpha: Expr, max_den: int = MAX_DENOMINATOR) -> List[Fraction]:
    """落在 (0, 1) 内、分母不超过 max_den 的渐近分数"""
    out = []
    for c in continued_fraction_convergents(continued_fraction_iterator(alpha)):
        c = Rational(c)
        if c.q > max_den:
            break
        if 0 < c < 1:
            out.append(Fraction(int(c.p), int(c.q)))
    return out


def bracket(alpha: Expr, max_den: int = MAX_DENOMINATOR) -> Tuple[Fraction, Fraction]:
    """最后两个渐近分数，分别在 α 两侧"""
    if not (1 < max_den <= MAX_DENOMINATOR):
        raise ValueError(f"max_den 必须在 (1, {MAX_DENOMINATOR}] 内，实际 {max_den}")
    alpha = sympify(alpha)
    if alpha.is_rational:
        raise ValueError(f"α={alpha} 是有理数，无需逼近")
    cs = convergents(alpha, max_den)
    if len(cs) < 2:
        raise ValueError(f"分母不超过 {max_den} 的渐近分数不足两个")
    lo, hi = sorted(cs[-2:])
    return lo, hi


@dataclass(frozen=True)
class IrrationalGrowth:
    """e_{α,r} 的区间估计：两端有理数的增长指数，以及 K_n 的指数速率"""

    alpha: float
    r: int
    lower: Fraction
    upper: Fraction
    e_lower: float
    e_upper: float
    log_rate: float

    @property
    def factor(self) -> float:
        return math.exp(self.log_rate)

    @property
    def lower_bound(self) -> float:
        return max(self.e_lower, self.e_upper) / self.factor

    @property
    def upper_bound(self) -> float:
        return min(self.e_lower, self.e_upper) * self.factor

    @property
    def consistent(self) -> bool:
        return self.lower_bound <= self.upper_bound

    @property
    def shared_prefix(self) -> int:
        """k 小于两端分母时 ⌊kα⌋ 与两端有理数的取整一致"""
        return min(self.lower.denominator, self.upper.denominator) - 1


def irrational_growth(
    alpha: Expr,
    r: int,
    max_den: int = MAX_DENOMINATOR,
    tol: float = 1e-12,
    max_iter: int = 10**6,
) -> IrrationalGrowth:
    alpha = sympify(alpha)
    lo, hi = bracket(alpha, max_den)
    e_lo = growth_exponent(lo.numerator, lo.denominator, r, tol=tol, max_iter=max_iter).e_alpha_r
    e_hi = growth_exponent(hi.numerator, hi.denominator, r, tol=tol, max_iter=max_iter).e_alpha_r
    est = IrrationalGrowth(
        alpha=float(alpha),
        r=r,
        lower=lo,
        upper=hi,
        e_lower=e_lo,
        e_upper=e_hi,
        log_rate=continuity_rate(lo, hi),
    )
    logger.info(
        "无理 α 估计 | α: %.12f | 区间: [%s, %s] | r: %d | e ∈ [%.12f, %.12f]",
        est.alpha, lo, hi, r, est.lower_bound, est.upper_bound,
    )
    if not est.consistent:
        logger.warning("两端增长指数之比超过 K_n 速率 | α: %.12f | r: %d", est.alpha, r)
    return est


def prefix_counts_agree(lower: Fraction, upper: Fraction, r: int, length: int) -> bool:
    """长度为 length 时两端有理数的平衡字计数向量相同"""
    a = count_balanced_dp(length, BalanceSpec.from_alpha(lower, r)).b
    b = count_balanced_dp(length, BalanceSpec.from_alpha(upper, r)).b
    return a == b
