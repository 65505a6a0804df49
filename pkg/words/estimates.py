import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import entr

from .balance import (
    BalanceSpec,
    ContractError,
    Word,
    count_balanced_dp,
    extend_greedy,
    is_balanced,
)

logger = logging.getLogger(__name__)


def _check_order(alpha: Fraction, alpha_prime: Fraction):
    if not (0 < alpha < alpha_prime < 1):
        raise ValueError(f"要求 0 < α < α′ < 1，实际 α={alpha}, α′={alpha_prime}")


def jmax(n: int, alpha: Fraction, alpha_prime: Fraction) -> int:
    """插入 0 个数的上界 ⌊(1−α′)^{-1}(α′n − ⌊αn⌋)⌋，精确有理运算"""
    alpha, alpha_prime = Fraction(alpha), Fraction(alpha_prime)
    _check_order(alpha, alpha_prime)
    bound = (alpha_prime * n - math.floor(alpha * n)) / (1 - alpha_prime)
    return max(0, math.floor(bound))


class ReprojectionError(RuntimeError):
    """逐步插 0 的构造失效：偏差不等式
    |w[:s]|_0 − ⌊αs⌋ ≥ |w′|_0 − ⌊α′|w′|⌋ 在某一步不再成立

    归纳论证默认 ⌊α(s+1)⌋ − ⌊αs⌋ ≤ ⌊α′(m+1)⌋ − ⌊α′m⌋，
    α < α′ 时这一点并不总成立。
    """

    def __init__(self, word: "Word", step: int, message: str):
        super().__init__(f"ψ 在第 {step} 步失效 | w: {word} | {message}")
        self.word = word
        self.step = step


def reproject(
    w: Word,
    alpha: Fraction,
    alpha_prime: Fraction,
    r: int,
    complete: bool = True,
) -> Word:
    """ψ：在 w 的字母之间插入 0，使其成为 (α′, r)-平衡字

    逐个取出 w 的字母 c，在它之前插入最少的 k 个 0，使 w′0^k c 仍平衡。
    complete=True 时再用字典序最小的平衡后缀补全到长度 n + jmax。
    每一步都检查偏差不等式与已插入 0 的个数，越界时抛出 ReprojectionError。
    """
    alpha, alpha_prime = Fraction(alpha), Fraction(alpha_prime)
    _check_order(alpha, alpha_prime)
    spec = BalanceSpec.from_alpha(alpha, r)
    spec_prime = BalanceSpec.from_alpha(alpha_prime, r)
    if not is_balanced(w, spec):
        raise ContractError(f"{w} 不是 (α={alpha}, r={r})-平衡字")

    n = len(w)
    bound = jmax(n, alpha, alpha_prime)
    out = []
    zeros_out = 0
    zeros_in = 0
    for s, c in enumerate(w.letters, 1):
        zeros_in += c == 0
        while True:
            pos = len(out) + 1
            d = zeros_out + (c == 0) - spec_prime.floor_at(pos)
            if -r < d <= r:
                out.append(c)
                zeros_out += c == 0
                break
            # 只有 c = 1 时会越过下界，此时补一个 0
            d0 = zeros_out + 1 - spec_prime.floor_at(pos)
            if not (-r < d0 <= r):
                raise ReprojectionError(w, s, f"插入 0 后偏差 {d0} 越出窗口 (−{r}, {r}]")
            if len(out) - (s - 1) == bound:
                raise ReprojectionError(w, s, f"插入的 0 将超过 jmax={bound}")
            out.append(0)
            zeros_out += 1
        left = zeros_in - spec.floor_at(s)
        right = zeros_out - spec_prime.floor_at(len(out))
        if left < right:
            raise ReprojectionError(w, s, f"偏差不等式不成立：{left} < {right}")

    w_prime = Word(tuple(out))
    inserted = len(w_prime) - n
    logger.debug("ψ 完成 | n: %d | 插入 0: %d | jmax: %d", n, inserted, bound)
    if not complete:
        return w_prime
    return extend_greedy(w_prime, spec_prime, n + bound)


def _k_single(n: int, alpha: Fraction, alpha_prime: Fraction, r: int) -> int:
    j = jmax(n, alpha, alpha_prime)
    n_prime = n + j
    top = math.floor(alpha_prime * n_prime) + r
    return 2**j * sum(math.comb(top, i) for i in range(j + 1))


def continuity_bound(n: int, alpha: Fraction, alpha_prime: Fraction, r: int) -> int:
    """K_n(α, α′)

    取 (α, α′) 与取反后的 (1−α′, 1−α) 两个常数中的较大者，
    使上下两个方向的不等式都成立。
    """
    alpha, alpha_prime = Fraction(alpha), Fraction(alpha_prime)
    _check_order(alpha, alpha_prime)
    return max(
        _k_single(n, alpha, alpha_prime, r),
        _k_single(n, 1 - alpha_prime, 1 - alpha, r),
    )


def _log_rate_single(alpha: Fraction, alpha_prime: Fraction) -> float:
    c = float((alpha_prime - alpha) / (1 - alpha_prime))
    top = float(alpha_prime) * (1 + c)
    x = min(c / top, 0.5)
    return c * math.log(2) + top * float(entr(x) + entr(1 - x))


def continuity_rate(alpha: Fraction, alpha_prime: Fraction) -> float:
    """log lim K_n^{1/n}

    jmax/n → c = (α′−α)/(1−α′)，二项式的顶按 α′(1+c)n 增长，
    两个方向取较大者，与 continuity_bound 一致。
    """
    alpha, alpha_prime = Fraction(alpha), Fraction(alpha_prime)
    _check_order(alpha, alpha_prime)
    return max(
        _log_rate_single(alpha, alpha_prime),
        _log_rate_single(1 - alpha_prime, 1 - alpha),
    )


@dataclass(frozen=True)
class ContinuityReport:
    n: int
    k_n: int
    count_alpha: int
    count_alpha_prime: int
    lower_ok: bool
    upper_ok: bool

    @property
    def holds(self) -> bool:
        return self.lower_ok and self.upper_ok


def check_continuity(n: int, alpha: Fraction, alpha_prime: Fraction, r: int) -> ContinuityReport:
    """用 DP 计数检验 K_n^{-1}|B_{n,α′,r}| ≤ |B_{n,α,r}| ≤ K_n|B_{n,α′,r}|"""
    alpha, alpha_prime = Fraction(alpha), Fraction(alpha_prime)
    k_n = continuity_bound(n, alpha, alpha_prime, r)
    a = count_balanced_dp(n, BalanceSpec.from_alpha(alpha, r)).total
    b = count_balanced_dp(n, BalanceSpec.from_alpha(alpha_prime, r)).total
    return ContinuityReport(
        n=n,
        k_n=k_n,
        count_alpha=a,
        count_alpha_prime=b,
        lower_ok=b <= k_n * a,
        upper_ok=a <= k_n * b,
    )


def is_zero_insertion(original: Word, result: Word) -> bool:
    """result 是否只在 original 中插入了 0（original 为 result 的子序列）"""
    it = iter(result.letters)
    for c in original.letters:
        for x in it:
            if x == c:
                break
            if x != 0:
                return False
        else:
            return False
    return all(x == 0 for x in it)
